#include "tamexp/tame.hpp"

#include <cctype>
#include <sstream>

#include "tamexp/error.hpp"

namespace tamexp {

GenLetter GenLetter::transvection(unsigned i, unsigned j, std::uint64_t e, Elem r) {
    GenLetter g;
    g.kind = Kind::Transvection;
    g.i = i;
    g.j = j;
    g.e = e;
    g.r = r;
    return g;
}

GenLetter GenLetter::bi_transvection(unsigned i, unsigned j, unsigned k, std::uint64_t c,
                                     std::uint64_t d, Elem r) {
    GenLetter g;
    g.kind = Kind::BiTransvection;
    g.i = i;
    g.j = j;
    g.k = k;
    g.c = c;
    g.d = d;
    g.r = r;
    return g;
}

GenLetter GenLetter::poly_transvection(unsigned i, unsigned j, const UPoly& P, const GradingSpec& gr) {
    GenLetter g;
    g.kind = Kind::PolyTransvection;
    g.i = i;
    g.j = j;
    g.P = P;
    upoly::trim(g.P);
    g.t = gr.t(i, j);
    g.N = gr.N;
    return g;
}

GenLetter GenLetter::coord_cycle() { return GenLetter{}; }

Word::Word(std::initializer_list<GenLetter> gs) {
    for (const auto& g : gs) letters.push_back({g, 1});
}

Word& Word::append(const Word& w) {
    letters.insert(letters.end(), w.letters.begin(), w.letters.end());
    return *this;
}

Word& Word::push(const GenLetter& g, int sign) {
    letters.push_back({g, sign});
    return *this;
}

Word inverse(const Word& w) {
    Word r;
    r.letters.reserve(w.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) r.letters.push_back({it->g, -it->sign});
    return r;
}

Word concat(const Word& a, const Word& b) {
    Word r = a;
    r.append(b);
    return r;
}

Word commutator(const Word& a, const Word& b) {
    Word r = inverse(a);
    r.append(inverse(b)).append(a).append(b);
    return r;
}

GroupParams make_params(std::uint64_t p, const std::vector<std::uint64_t>& e) {
    if (!is_prime(p)) throw Error(Errc::NonPrime, std::to_string(p) + " is not prime");
    if (e.size() < 3) throw Error(Errc::DimensionMismatch, "at least three variables are required");
    GroupParams g;
    g.p = p;
    g.e = e;
    g.grading = make_grading(e);
    return g;
}

void check_letter(const GenLetter& g, unsigned n) {
    using K = GenLetter::Kind;
    if (g.kind == K::CoordCycle) return;
    if (g.i >= n || g.j >= n || g.i == g.j)
        throw Error(Errc::BadIndex, "letter " + format_letter(g) + " has invalid indices for n=" + std::to_string(n));
    if (g.kind == K::BiTransvection && (g.k >= n || g.k == g.i || g.k == g.j))
        throw Error(Errc::BadIndex, "letter " + format_letter(g) + " has invalid indices for n=" + std::to_string(n));
}

void check_word(const Word& w, unsigned n) {
    for (const auto& l : w.letters) check_letter(l.g, n);
}

void apply_letter(const Field& F, const GenLetter& g, int sign, Elem* a, unsigned n) {
    using K = GenLetter::Kind;
    Elem v = 0;
    switch (g.kind) {
        case K::Transvection:
            v = F.mul(g.r, F.pow(a[g.j], g.e));
            break;
        case K::BiTransvection:
            v = F.mul(g.r, F.mul(F.pow(a[g.j], g.c), F.pow(a[g.k], g.d)));
            break;
        case K::PolyTransvection: {
            Elem y = a[g.j];
            v = F.mul(F.pow(y, g.t), F.eval(g.P, F.pow(y, g.N)));
            break;
        }
        case K::CoordCycle: {
            if (sign > 0) {
                Elem first = a[0];
                for (unsigned m = 0; m + 1 < n; ++m) a[m] = a[m + 1];
                a[n - 1] = first;
            } else {
                Elem last = a[n - 1];
                for (unsigned m = n - 1; m > 0; --m) a[m] = a[m - 1];
                a[0] = last;
            }
            return;
        }
    }
    a[g.i] = sign > 0 ? F.add(a[g.i], v) : F.sub(a[g.i], v);
}

Point apply_letter(const Field& F, const GenLetter& g, int sign, const Point& a) {
    check_letter(g, static_cast<unsigned>(a.size()));
    Point b = a;
    apply_letter(F, g, sign, b.data(), static_cast<unsigned>(b.size()));
    return b;
}

void apply_word(const Field& F, const Word& w, Elem* a, unsigned n) {
    for (const auto& l : w.letters) apply_letter(F, l.g, l.sign, a, n);
}

Point apply_word(const Field& F, const Word& w, const Point& a) {
    check_word(w, static_cast<unsigned>(a.size()));
    Point b = a;
    apply_word(F, w, b.data(), static_cast<unsigned>(b.size()));
    return b;
}

namespace {

void apply_symbolic(const Field& F, const GenLetter& g, int sign, std::vector<MultiPoly>& im,
                    std::size_t cap) {
    using K = GenLetter::Kind;
    unsigned n = static_cast<unsigned>(im.size());
    MultiPoly v;
    switch (g.kind) {
        case K::Transvection:
            v = scale(F, pow(F, im[g.j], g.e, cap), g.r);
            break;
        case K::BiTransvection:
            v = scale(F, mul(F, pow(F, im[g.j], g.c, cap), pow(F, im[g.k], g.d, cap), cap), g.r);
            break;
        case K::PolyTransvection: {
            MultiPoly yN = pow(F, im[g.j], g.N, cap);
            MultiPoly acc = MultiPoly::constant(n, 0);
            for (std::size_t m = g.P.size(); m-- > 0;) {
                acc = mul(F, acc, yN, cap);
                acc = add(F, acc, MultiPoly::constant(n, g.P[m] % F.p()));
            }
            v = mul(F, pow(F, im[g.j], g.t, cap), acc, cap);
            break;
        }
        case K::CoordCycle: {
            if (sign > 0) {
                MultiPoly first = im[0];
                for (unsigned m = 0; m + 1 < n; ++m) im[m] = std::move(im[m + 1]);
                im[n - 1] = std::move(first);
            } else {
                MultiPoly last = im[n - 1];
                for (unsigned m = n - 1; m > 0; --m) im[m] = std::move(im[m - 1]);
                im[0] = std::move(last);
            }
            return;
        }
    }
    im[g.i] = sign > 0 ? add(F, im[g.i], v) : sub(F, im[g.i], v);
    if (im[g.i].terms.size() > cap) throw Error(Errc::DegreeOverflow, "term count exceeds cap");
}

}  // namespace

PolyEndo word_to_endo(const Field& F, const Word& w, unsigned n, std::size_t cap) {
    check_word(w, n);
    PolyEndo f = PolyEndo::identity(n);
    for (const auto& l : w.letters) apply_symbolic(F, l.g, l.sign, f.images, cap);
    return f;
}

PolyEndo letter_to_endo(const Field& F, const GenLetter& g, unsigned n) {
    Word w;
    w.push(g);
    return word_to_endo(F, w, n);
}

GenLetter standard_generator(const GroupParams& params, unsigned i, Elem r) {
    unsigned n = params.n();
    return GenLetter::transvection(i, (i + 1) % n, params.e[i], r);
}

std::vector<GenLetter> standard_generators(const GroupParams& params, bool all_coefficients) {
    std::vector<GenLetter> out;
    for (unsigned i = 0; i < params.n(); ++i) {
        if (!all_coefficients) {
            out.push_back(standard_generator(params, i, 1));
            continue;
        }
        for (Elem r = 1; r < params.p; ++r) out.push_back(standard_generator(params, i, r));
    }
    return out;
}

std::vector<Word> expander_generators_3d() {
    return {Word{GenLetter::coord_cycle()}, Word{GenLetter::transvection(0, 1, 1, 1)},
            Word{GenLetter::transvection(0, 1, 2, 1)}};
}

std::vector<Word> expander_generators_7d() {
    return {Word{GenLetter::coord_cycle()},
            Word{GenLetter::transvection(0, 1, 1, 1), GenLetter::transvection(3, 5, 2, 1)}};
}

std::string format_letter(const GenLetter& g, int sign) {
    using K = GenLetter::Kind;
    std::ostringstream os;
    switch (g.kind) {
        case K::Transvection:
            os << "T(" << g.i + 1 << ',' << g.j + 1 << ',' << g.e << ',' << g.r << ')';
            break;
        case K::BiTransvection:
            os << "B(" << g.i + 1 << ',' << g.j + 1 << ',' << g.k + 1 << ',' << g.c << ',' << g.d << ','
               << g.r << ')';
            break;
        case K::PolyTransvection:
            os << "P(" << g.i + 1 << ',' << g.j + 1 << ",[";
            for (std::size_t m = 0; m < g.P.size(); ++m) os << (m ? "," : "") << g.P[m];
            os << "])";
            break;
        case K::CoordCycle:
            os << 'S';
            break;
    }
    if (sign < 0) os << "^-1";
    return os.str();
}

std::string format_word(const Word& w) {
    std::string s;
    for (const auto& l : w.letters) {
        if (!s.empty()) s += ' ';
        s += format_letter(l.g, l.sign);
    }
    return s;
}

namespace {

std::vector<long long> parse_ints(const std::string& body) {
    std::vector<long long> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        try {
            out.push_back(std::stoll(cur));
        } catch (...) {
            throw Error(Errc::ParseError, "bad integer '" + cur + "'");
        }
        cur.clear();
    };
    for (char ch : body) {
        if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
            flush();
        } else {
            cur += ch;
        }
    }
    flush();
    return out;
}

}  // namespace

Word parse_word(const std::string& text, std::uint64_t p, const GradingSpec* grading) {
    Word w;
    std::size_t pos = 0;
    auto reduce = [p](long long v) {
        long long m = static_cast<long long>(p);
        return static_cast<Elem>(((v % m) + m) % m);
    };
    auto index = [](long long v) {
        if (v < 1) throw Error(Errc::ParseError, "indices are 1-based");
        return static_cast<unsigned>(v - 1);
    };
    while (pos < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
            continue;
        }
        char kind = text[pos++];
        GenLetter g;
        if (kind == 'S') {
            g = GenLetter::coord_cycle();
        } else {
            if (pos >= text.size() || text[pos] != '(') throw Error(Errc::ParseError, "expected '(' after letter");
            std::size_t close = text.find(')', pos);
            if (close == std::string::npos) throw Error(Errc::ParseError, "unterminated letter");
            std::string body = text.substr(pos + 1, close - pos - 1);
            pos = close + 1;
            if (kind == 'T') {
                auto v = parse_ints(body);
                if (v.size() != 4) throw Error(Errc::ParseError, "T needs 4 arguments");
                if (v[2] < 0) throw Error(Errc::ParseError, "negative exponent");
                g = GenLetter::transvection(index(v[0]), index(v[1]), static_cast<std::uint64_t>(v[2]), reduce(v[3]));
            } else if (kind == 'B') {
                auto v = parse_ints(body);
                if (v.size() != 6) throw Error(Errc::ParseError, "B needs 6 arguments");
                if (v[3] < 0 || v[4] < 0) throw Error(Errc::ParseError, "negative exponent");
                g = GenLetter::bi_transvection(index(v[0]), index(v[1]), index(v[2]), static_cast<std::uint64_t>(v[3]),
                                               static_cast<std::uint64_t>(v[4]), reduce(v[5]));
            } else if (kind == 'P') {
                if (!grading) throw Error(Errc::ParseError, "P letters need group parameters");
                std::size_t lb = body.find('['), rb = body.find(']');
                if (lb == std::string::npos || rb == std::string::npos || rb < lb)
                    throw Error(Errc::ParseError, "P needs a bracketed coefficient list");
                auto idx = parse_ints(body.substr(0, lb));
                if (idx.size() != 2) throw Error(Errc::ParseError, "P needs two indices");
                UPoly P;
                for (long long c : parse_ints(body.substr(lb + 1, rb - lb - 1))) P.push_back(reduce(c));
                g = GenLetter::poly_transvection(index(idx[0]), index(idx[1]), P, *grading);
            } else {
                throw Error(Errc::ParseError, std::string("unknown letter '") + kind + "'");
            }
        }
        int sign = 1;
        if (text.compare(pos, 3, "^-1") == 0) {
            sign = -1;
            pos += 3;
        }
        w.push(g, sign);
    }
    return w;
}

}  // namespace tamexp
