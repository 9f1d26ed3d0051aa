#include "tamexp/polyring.hpp"

#include <sstream>

#include "tamexp/error.hpp"

namespace tamexp {

MultiPoly MultiPoly::constant(unsigned n, Elem c) {
    MultiPoly f;
    f.n = n;
    if (c) f.terms.emplace(Exponents(n, 0), c);
    return f;
}

MultiPoly MultiPoly::var(unsigned n, unsigned i) {
    Exponents ex(n, 0);
    ex.at(i) = 1;
    return monomial(n, ex, 1);
}

MultiPoly MultiPoly::monomial(unsigned n, const Exponents& ex, Elem c) {
    if (ex.size() != n) throw Error(Errc::DimensionMismatch, "exponent vector length differs from n");
    MultiPoly f;
    f.n = n;
    if (c) f.terms.emplace(ex, c);
    return f;
}

unsigned MultiPoly::total_degree() const {
    unsigned best = 0;
    for (const auto& [ex, c] : terms) {
        unsigned s = 0;
        for (auto v : ex) s += v;
        best = std::max(best, s);
    }
    return best;
}

namespace {

void check_same(const MultiPoly& a, const MultiPoly& b) {
    if (a.n != b.n) throw Error(Errc::DimensionMismatch, "polynomials in different variable counts");
}

void accumulate(const Field& F, std::map<Exponents, Elem>& acc, const Exponents& ex, Elem c) {
    if (!c) return;
    auto [it, fresh] = acc.emplace(ex, c);
    if (fresh) return;
    it->second = F.add(it->second, c);
    if (!it->second) acc.erase(it);
}

}  // namespace

MultiPoly add(const Field& F, const MultiPoly& a, const MultiPoly& b) {
    check_same(a, b);
    MultiPoly r = a;
    for (const auto& [ex, c] : b.terms) accumulate(F, r.terms, ex, c);
    return r;
}

MultiPoly sub(const Field& F, const MultiPoly& a, const MultiPoly& b) {
    check_same(a, b);
    MultiPoly r = a;
    for (const auto& [ex, c] : b.terms) accumulate(F, r.terms, ex, F.neg(c));
    return r;
}

MultiPoly scale(const Field& F, const MultiPoly& a, Elem c) {
    MultiPoly r;
    r.n = a.n;
    if (!c) return r;
    for (const auto& [ex, v] : a.terms) r.terms.emplace(ex, F.mul(v, c));
    return r;
}

MultiPoly mul(const Field& F, const MultiPoly& a, const MultiPoly& b, std::size_t cap) {
    check_same(a, b);
    MultiPoly r;
    r.n = a.n;
    Exponents ex(a.n);
    for (const auto& [ea, ca] : a.terms) {
        for (const auto& [eb, cb] : b.terms) {
            for (unsigned i = 0; i < a.n; ++i) ex[i] = ea[i] + eb[i];
            accumulate(F, r.terms, ex, F.mul(ca, cb));
            if (r.terms.size() > cap)
                throw Error(Errc::DegreeOverflow, "term count exceeds cap " + std::to_string(cap));
        }
    }
    return r;
}

MultiPoly pow(const Field& F, const MultiPoly& a, std::uint64_t e, std::size_t cap) {
    MultiPoly r = MultiPoly::constant(a.n, 1);
    MultiPoly x = a;
    while (e) {
        if (e & 1) r = mul(F, r, x, cap);
        e >>= 1;
        if (e) x = mul(F, x, x, cap);
    }
    return r;
}

Elem evaluate(const Field& F, const MultiPoly& f, const Point& a) {
    if (a.size() != f.n) throw Error(Errc::DimensionMismatch, "point dimension differs from n");
    Elem acc = 0;
    for (const auto& [ex, c] : f.terms) {
        Elem t = c;
        for (unsigned i = 0; i < f.n && t; ++i)
            if (ex[i]) t = F.mul(t, F.pow(a[i], ex[i]));
        acc = F.add(acc, t);
    }
    return acc;
}

MultiPoly substitute(const Field& F, const MultiPoly& f, const std::vector<MultiPoly>& images,
                     std::size_t cap) {
    if (images.size() != f.n) throw Error(Errc::DimensionMismatch, "substitution arity differs from n");
    unsigned m = images.empty() ? f.n : images[0].n;
    std::vector<std::map<std::uint32_t, MultiPoly>> powers(f.n);
    auto power_of = [&](unsigned i, std::uint32_t k) -> const MultiPoly& {
        auto it = powers[i].find(k);
        if (it != powers[i].end()) return it->second;
        return powers[i].emplace(k, pow(F, images[i], k, cap)).first->second;
    };
    MultiPoly r;
    r.n = m;
    for (const auto& [ex, c] : f.terms) {
        MultiPoly t = MultiPoly::constant(m, c);
        for (unsigned i = 0; i < f.n; ++i)
            if (ex[i]) t = mul(F, t, power_of(i, ex[i]), cap);
        for (const auto& [e2, c2] : t.terms) accumulate(F, r.terms, e2, c2);
        if (r.terms.size() > cap)
            throw Error(Errc::DegreeOverflow, "term count exceeds cap " + std::to_string(cap));
    }
    return r;
}

std::string to_string(const Field& F, const MultiPoly& f) {
    if (f.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = f.terms.rbegin(); it != f.terms.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        const auto& [ex, c] = *it;
        if (F.ell() == 1) {
            os << c;
        } else {
            os << '(';
            auto cs = F.coeffs(c);
            for (std::size_t i = 0; i < cs.size(); ++i) os << (i ? "," : "") << cs[i];
            os << ')';
        }
        for (unsigned i = 0; i < f.n; ++i) {
            if (!ex[i]) continue;
            os << "*x" << i + 1;
            if (ex[i] > 1) os << '^' << ex[i];
        }
    }
    return os.str();
}

PolyEndo PolyEndo::identity(unsigned n) {
    PolyEndo f;
    for (unsigned i = 0; i < n; ++i) f.images.push_back(MultiPoly::var(n, i));
    return f;
}

PolyEndo compose(const Field& F, const PolyEndo& f, const PolyEndo& g, std::size_t cap) {
    if (f.n() != g.n()) throw Error(Errc::DimensionMismatch, "endomorphisms of different rank");
    PolyEndo r;
    for (const auto& fi : f.images) r.images.push_back(substitute(F, fi, g.images, cap));
    return r;
}

Point evaluate(const Field& F, const PolyEndo& f, const Point& a) {
    Point out(f.n());
    for (unsigned i = 0; i < f.n(); ++i) out[i] = evaluate(F, f.images[i], a);
    return out;
}

std::uint64_t GradingSpec::t(unsigned i, unsigned j) const {
    unsigned n = this->n();
    std::uint64_t prod = 1;
    for (unsigned k = i % n; k != j % n; k = (k + 1) % n) prod *= e[k];
    return prod;
}

std::uint64_t GradingSpec::d(unsigned i) const {
    std::uint64_t prod = 1;
    for (unsigned k = i; k < n(); ++k) prod *= e[k];
    return prod;
}

GradingSpec make_grading(const std::vector<std::uint64_t>& e) {
    GradingSpec g;
    g.e = e;
    for (auto v : e) {
        if (v < 1) throw Error(Errc::BadExponent, "exponents e_i must be positive");
        if (g.E > (1ull << 40) / v) throw Error(Errc::BadExponent, "product of exponents too large");
        g.E *= v;
    }
    g.N = g.E - 1;
    g.deg.assign(e.size(), 0);
    if (g.N > 1)
        for (unsigned i = 0; i < e.size(); ++i) g.deg[i] = g.d(i) % g.N;
    return g;
}

std::uint64_t grading_degree(const Exponents& mono, const GradingSpec& spec) {
    if (spec.N <= 1) return 0;
    if (mono.size() != spec.n()) throw Error(Errc::DimensionMismatch, "monomial length differs from n");
    unsigned __int128 s = 0;
    for (unsigned i = 0; i < mono.size(); ++i) s += static_cast<unsigned __int128>(mono[i]) * spec.deg[i];
    return static_cast<std::uint64_t>(s % spec.N);
}

bool is_graded(const PolyEndo& f, const GradingSpec& spec) {
    for (unsigned i = 0; i < f.n(); ++i)
        for (const auto& [ex, c] : f.images[i].terms)
            if (grading_degree(ex, spec) != spec.deg[i]) return false;
    return true;
}

}  // namespace tamexp
