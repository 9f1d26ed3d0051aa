#include "tamexp/synth.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <random>
#include <tuple>

#include "tamexp/error.hpp"
#include "tamexp/parallel.hpp"

namespace tamexp {

namespace {

// Q(x - 1) - Q(x) over F_p
UPoly difference(const UPoly& q, std::uint64_t p) {
    UPoly out(q.size(), 0);
    for (std::size_t m = 0; m < q.size(); ++m) {
        if (!q[m]) continue;
        // (x - 1)^m = sum binom(m,k) (-1)^k x^{m-k}
        std::uint64_t b = 1;
        for (std::size_t k = 0; k <= m; ++k) {
            if (k) b = b * ((m - k + 1) % p) % p * mod_inv(k % p, p) % p;
            std::uint64_t term = q[m] * b % p;
            if (k % 2) term = (p - term) % p;
            out[m - k] = (out[m - k] + term) % p;
        }
        out[m] = (out[m] + p - q[m]) % p;
    }
    return out;
}

class Synthesizer {
public:
    Synthesizer(const GroupParams& params, std::size_t budget) : g_(params), budget_(budget) {
        std::uint64_t c = *std::max_element(g_.e.begin(), g_.e.end());
        if (g_.grading.E < 2) throw Error(Errc::BadExponent, "E = e_1...e_n must be at least 2");
        if (g_.p <= c) throw Error(Errc::NotInvertible, "p must exceed max e_i");
    }

    unsigned n() const { return g_.n(); }
    unsigned at(long long i) const {
        long long m = static_cast<long long>(n());
        return static_cast<unsigned>(((i % m) + m) % m);
    }

    // x_i += r x_j^{t_ij + mN}
    Word T(unsigned i, unsigned j, std::uint64_t m, Elem r) {
        auto key = std::make_tuple(0, i, j, m, r);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Word w;
        const auto& e = g_.e;
        if (j == at(i + 1)) {
            if (m == 0) {
                w.push(GenLetter::transvection(i, j, e[i], r));
            } else if (m == 1) {
                unsigned k = at(i + 2);
                w = engine([&](Elem a) { return step3a(i, a); }, T(k, j, 0, 1), e[j], e[j], r);
            } else {
                unsigned k = at(i + 2);
                w = engine([&](Elem a) { return step5(i, a); }, T(k, j, m - 1, 1), 1, 1, r);
            }
        } else if (m == 0) {
            w = engine([&](Elem a) { return T(i, at(i + 1), 0, a); }, T(at(i + 1), j, 0, 1), e[i], e[i], r);
        } else {
            w = engine([&](Elem a) { return step3b(i, j, a); }, T(at(i + 1), j, m, 1), 1, 1, r);
        }
        return remember(key, std::move(w));
    }

private:
    using Key = std::tuple<int, unsigned, unsigned, std::uint64_t, Elem>;

    // x_i += r x_{i+1}^{e_i - 1} x_{i+2}^{e_{i+1}}
    Word step3a(unsigned i, Elem r) {
        auto key = std::make_tuple(1, i, 0u, std::uint64_t{0}, r);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        unsigned i1 = at(i + 1);
        Word w = engine([&](Elem a) { return T(i, i1, 0, a); }, T(i1, at(i + 2), 0, 1), g_.e[i], 1, r);
        return remember(key, std::move(w));
    }

    // x_i += r x_{i+1} x_j^{(e_i - 1) t_{i+1,j}}
    Word step3b(unsigned i, unsigned j, Elem r) {
        auto key = std::make_tuple(2, i, j, std::uint64_t{0}, r);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        unsigned i1 = at(i + 1);
        Word w = engine([&](Elem a) { return T(i, i1, 0, a); }, T(i1, j, 0, 1), g_.e[i], g_.e[i] - 1, r);
        return remember(key, std::move(w));
    }

    // x_i += r x_{i+2} x_{i+1}^{e_i - 1 + (e_{i+1} - 1) E / e_{i+1}}
    Word step5(unsigned i, Elem r) {
        auto key = std::make_tuple(3, i, 0u, std::uint64_t{0}, r);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        unsigned i1 = at(i + 1), i2 = at(i + 2);
        std::uint64_t c = g_.e[i1];
        Word w = engine([&](Elem a) { return step3a(i, a); }, T(i2, i1, 0, 1), c, c - 1, r);
        return remember(key, std::move(w));
    }

    // X(a) realizes x_a += a x_b^c x_k^{d0}, Y1 realizes x_b += x_k^e. Returns a word for
    // x_a += r x_b^{c - l} x_k^{d0 + e l}, as a product of iterated commutators with Y1.
    template <class XFn>
    Word engine(XFn&& X, const Word& Y1, std::uint64_t c, std::uint64_t l, Elem r) {
        const std::uint64_t p = g_.p;
        if (r % p == 0) return {};
        UPoly rest(c + 1, 0);
        rest[c - l] = r % p;
        UPoly D(c + 1, 0);
        D[c] = 1;
        Word out;
        Word Yinv = inverse(Y1);
        for (std::uint64_t t = 0; t <= c; ++t) {
            std::uint64_t deg = c - t;
            if (rest[deg]) {
                Elem a = rest[deg] * mod_inv(D[deg], p) % p;
                Word K = X(a);
                for (std::uint64_t s = 0; s < t; ++s) {
                    Word next = inverse(K);
                    next.append(Yinv).append(K).append(Y1);
                    K = std::move(next);
                    check(K.size());
                }
                out.append(K);
                check(out.size());
                for (std::uint64_t m = 0; m <= c; ++m) rest[m] = (rest[m] + (p - a) * D[m]) % p;
            }
            D = difference(D, p);
        }
        return out;
    }

    void check(std::size_t len) const {
        if (len > budget_)
            throw Error(Errc::BudgetExceeded, "word length exceeds budget of " + std::to_string(budget_) + " letters");
    }

    Word remember(const Key& key, Word w) {
        check(w.size());
        return memo_.emplace(key, std::move(w)).first->second;
    }

    const GroupParams& g_;
    std::size_t budget_;
    std::map<Key, Word> memo_;
};

void check_target(const GroupParams& params, unsigned i, unsigned j) {
    if (i >= params.n() || j >= params.n() || i == j) throw Error(Errc::BadIndex, "target indices must be distinct and in range");
}

// verifies word against target(point) on the grid, filling the certificate fields
template <class Target>
void verify(SynthCert& cert, const GroupParams& params, std::uint64_t degree, const SynthOptions& opt,
            Target&& target) {
    unsigned n = params.n();
    unsigned ell = opt.grid_ell ? *opt.grid_ell : separating_extension(params.p, degree);
    Field F = make_field(params.p, ell);
    std::uint64_t q = F.q();
    long double total = 1;
    for (unsigned k = 0; k < n; ++k) total *= q;
    cert.exhaustive = total <= 1e6L;
    cert.grid = F.serialize() + " n=" + std::to_string(n);

    std::vector<Point> samples;
    std::uint64_t count;
    if (cert.exhaustive) {
        count = static_cast<std::uint64_t>(total);
    } else {
        std::mt19937_64 rng(opt.seed);
        std::uniform_int_distribution<Elem> coord(0, q - 1);
        samples.assign(opt.samples, Point(n));
        for (auto& pt : samples)
            for (auto& v : pt) v = coord(rng);
        count = samples.size();
    }
    std::atomic<bool> ok{true};
    parallel_for(0, count, [&](std::uint64_t lo, std::uint64_t hi) {
        Point a(n), b(n);
        for (std::uint64_t idx = lo; idx < hi && ok; ++idx) {
            if (cert.exhaustive) {
                std::uint64_t v = idx;
                for (unsigned k = 0; k < n; ++k) {
                    a[k] = v % q;
                    v /= q;
                }
            } else {
                a = samples[idx];
            }
            b = a;
            apply_word(F, cert.word, b.data(), n);
            if (b != target(F, a)) ok = false;
        }
    }, 256);
    cert.points_checked = count;
    cert.verified = ok;

    if (opt.symbolic && ok) {
        Field Fp = make_field(params.p, 1);
        try {
            PolyEndo got = word_to_endo(Fp, cert.word, n);
            PolyEndo want = PolyEndo::identity(n);
            MultiPoly xj = MultiPoly::var(n, cert.j);
            MultiPoly add_on = MultiPoly::constant(n, 0);
            if (cert.polynomial) {
                std::uint64_t tij = params.grading.t(cert.i, cert.j), N = params.grading.N;
                for (std::size_t m = 0; m < cert.P.size(); ++m)
                    if (cert.P[m]) add_on = add(Fp, add_on, scale(Fp, pow(Fp, xj, tij + m * N), cert.P[m]));
            } else {
                add_on = scale(Fp, pow(Fp, xj, cert.t), cert.r);
            }
            want.images[cert.i] = add(Fp, want.images[cert.i], add_on);
            cert.symbolic_checked = got == want;
            cert.verified = cert.symbolic_checked;
        } catch (const Error& e) {
            if (e.code() != Errc::DegreeOverflow) throw;
        }
    }
}

}  // namespace

unsigned separating_extension(std::uint64_t p, std::uint64_t degree) {
    unsigned m = 1;
    unsigned long long q = p;
    while (q <= degree + 1) {
        q *= p;
        ++m;
    }
    return m;
}

Word transvection_word(const GroupParams& params, unsigned i, unsigned j, std::uint64_t m, Elem r,
                       std::size_t budget) {
    check_target(params, i, j);
    Synthesizer s(params, budget);
    return s.T(i, j, m, r % params.p);
}

SynthCert synth_transvection(const GroupParams& params, unsigned i, unsigned j, std::uint64_t t, Elem r,
                             const SynthOptions& opt) {
    check_target(params, i, j);
    std::uint64_t tij = params.grading.t(i, j), N = params.grading.N;
    if (params.grading.E < 2) throw Error(Errc::BadExponent, "E = e_1...e_n must be at least 2");
    if (t < tij || (t - tij) % N != 0)
        throw Error(Errc::BadExponent, "exponent " + std::to_string(t) + " is not t_ij + m(E-1) with t_ij = " +
                                           std::to_string(tij) + ", E-1 = " + std::to_string(N));
    SynthCert cert;
    cert.i = i;
    cert.j = j;
    cert.t = t;
    cert.r = r % params.p;
    Synthesizer s(params, opt.budget);
    cert.word = s.T(i, j, (t - tij) / N, cert.r);
    verify(cert, params, t, opt, [&](const Field& F, const Point& a) {
        Point b = a;
        b[i] = F.add(b[i], F.mul(cert.r, F.pow(a[j], t)));
        return b;
    });
    return cert;
}

SynthCert synth_poly_transvection(const GroupParams& params, unsigned i, unsigned j, const UPoly& P,
                                  const SynthOptions& opt) {
    check_target(params, i, j);
    SynthCert cert;
    cert.i = i;
    cert.j = j;
    cert.polynomial = true;
    cert.P = P;
    for (auto& c : cert.P) c %= params.p;
    upoly::trim(cert.P);
    std::uint64_t tij = params.grading.t(i, j), N = params.grading.N;
    Synthesizer s(params, opt.budget);
    for (std::size_t m = 0; m < cert.P.size(); ++m) {
        if (!cert.P[m]) continue;
        cert.word.append(s.T(i, j, m, cert.P[m]));
        if (cert.word.size() > opt.budget) throw Error(Errc::BudgetExceeded, "word length exceeds budget");
    }
    std::uint64_t degree = cert.P.empty() ? 0 : tij + (cert.P.size() - 1) * N;
    GenLetter direct = GenLetter::poly_transvection(i, j, cert.P, params.grading);
    verify(cert, params, degree, opt, [&](const Field& F, const Point& a) {
        Point b = a;
        apply_letter(F, direct, 1, b.data(), params.n());
        return b;
    });
    return cert;
}

struct WordFactory::Impl {
    GroupParams params;
    std::size_t budget;
    Synthesizer s;
    Impl(const GroupParams& g, std::size_t b) : params(g), budget(b), s(g, b) {}
};

WordFactory::WordFactory(const GroupParams& params, std::size_t budget)
    : impl_(std::make_unique<Impl>(params, budget)) {}
WordFactory::~WordFactory() = default;
WordFactory::WordFactory(WordFactory&&) noexcept = default;
WordFactory& WordFactory::operator=(WordFactory&&) noexcept = default;

Word WordFactory::transvection(unsigned i, unsigned j, std::uint64_t m, Elem r) {
    check_target(impl_->params, i, j);
    return impl_->s.T(i, j, m, r % impl_->params.p);
}

Word WordFactory::poly_transvection(unsigned i, unsigned j, const UPoly& P) {
    check_target(impl_->params, i, j);
    Word w;
    for (std::size_t m = 0; m < P.size(); ++m) {
        Elem c = P[m] % impl_->params.p;
        if (!c) continue;
        w.append(impl_->s.T(i, j, m, c));
        if (w.size() > impl_->budget) throw Error(Errc::BudgetExceeded, "word length exceeds budget");
    }
    return w;
}

AbelianWitness elementary_abelian_witness(const GroupParams& params, unsigned rank) {
    if (*std::max_element(params.e.begin(), params.e.end()) < 2)
        throw Error(Errc::BadExponent, "needs some e_i > 1");
    AbelianWitness w;
    std::uint64_t tij = params.grading.t(0, 1), N = params.grading.N;
    std::uint64_t top = tij + (rank ? rank - 1 : 0) * N;
    w.grid_ell = separating_extension(params.p, top);
    long double points = 1;
    for (unsigned k = 0; k < params.n(); ++k)
        for (unsigned l = 0; l < w.grid_ell; ++l) points *= params.p;
    if (points > 1e7L) throw Error(Errc::RankTooLarge, "no grid within 10^7 points separates rank " + std::to_string(rank));
    Synthesizer s(params, kWordBudget);
    for (unsigned m = 0; m < rank; ++m) w.words.push_back(s.T(0, 1, m, 1));
    return w;
}

}  // namespace tamexp
