#include "tamexp/gamma.hpp"

#include <numeric>

#include "tamexp/error.hpp"

namespace tamexp {

GammaGroup::GammaGroup(unsigned c, std::uint64_t p) : c_(c), p_(p) {
    if (!is_prime(p)) throw Error(Errc::NonPrime, std::to_string(p) + " is not prime");
    binom_.assign(c + 1, std::vector<std::uint64_t>(c + 1, 0));
    for (unsigned n = 0; n <= c; ++n) {
        binom_[n][0] = 1 % p;
        for (unsigned k = 1; k <= n; ++k) binom_[n][k] = (binom_[n - 1][k - 1] + (k <= n - 1 ? binom_[n - 1][k] : 0)) % p;
    }
}

std::uint64_t GammaGroup::order() const {
    std::uint64_t o = 1;
    for (unsigned i = 0; i < c_ + 2; ++i) {
        if (o > (1ull << 62) / p_) throw Error(Errc::BudgetExceeded, "group order overflows");
        o *= p_;
    }
    return o;
}

GammaElem GammaGroup::identity() const { return {std::vector<std::uint64_t>(c_ + 1, 0), 0}; }

std::vector<std::uint64_t> GammaGroup::shift_poly(const std::vector<std::uint64_t>& q, std::uint64_t s) const {
    std::vector<std::uint64_t> out(c_ + 1, 0);
    s %= p_;
    for (unsigned m = 0; m <= c_; ++m) {
        if (!q[m]) continue;
        std::uint64_t sp = 1;
        for (unsigned t = 0; t <= m; ++t) {
            // x^m -> sum binom(m,t) s^t x^{m-t}
            out[m - t] = (out[m - t] + q[m] * binom_[m][t] % p_ * sp) % p_;
            sp = sp * s % p_;
        }
    }
    return out;
}

GammaElem GammaGroup::op(const GammaElem& a, const GammaElem& b) const {
    GammaElem r;
    r.poly = shift_poly(b.poly, (p_ - a.shift % p_) % p_);
    for (unsigned m = 0; m <= c_; ++m) r.poly[m] = (r.poly[m] + a.poly[m]) % p_;
    r.shift = (a.shift + b.shift) % p_;
    return r;
}

GammaElem GammaGroup::inverse(const GammaElem& a) const {
    GammaElem r;
    r.shift = (p_ - a.shift % p_) % p_;
    r.poly = shift_poly(a.poly, a.shift);
    for (auto& v : r.poly) v = (p_ - v) % p_;
    return r;
}

GammaElem GammaGroup::commutator(const GammaElem& a, const GammaElem& b) const {
    return op(op(inverse(a), inverse(b)), op(a, b));
}

GammaElem GammaGroup::P(unsigned l, std::uint64_t r) const {
    if (l > c_) throw Error(Errc::BadIndex, "layer index exceeds c");
    GammaElem g = identity();
    g.poly[c_ - l] = r % p_;
    return g;
}

GammaElem GammaGroup::y(std::uint64_t r) const {
    GammaElem g = identity();
    g.shift = r % p_;
    return g;
}

std::uint64_t GammaGroup::index(const GammaElem& a) const {
    std::uint64_t idx = 0;
    for (unsigned m = c_ + 1; m-- > 0;) idx = idx * p_ + a.poly[m];
    return idx * p_ + a.shift;
}

GammaElem GammaGroup::element(std::uint64_t idx) const {
    GammaElem g = identity();
    g.shift = idx % p_;
    idx /= p_;
    for (unsigned m = 0; m <= c_; ++m) {
        g.poly[m] = idx % p_;
        idx /= p_;
    }
    return g;
}

namespace {

// closure of seeds under multiplication by seeds and conjugation by conj
std::vector<std::uint64_t> normal_closure(const GammaGroup& G, const std::vector<GammaElem>& seeds,
                                          const std::vector<GammaElem>& conj) {
    std::uint64_t total = G.order();
    std::vector<char> seen(total, 0);
    std::vector<std::uint64_t> members;
    std::vector<GammaElem> gens;
    auto add = [&](const GammaElem& g) {
        std::uint64_t i = G.index(g);
        if (seen[i]) return false;
        seen[i] = 1;
        members.push_back(i);
        return true;
    };
    add(G.identity());
    for (const auto& s : seeds) gens.push_back(s);
    for (std::size_t head = 0; head < members.size(); ++head) {
        GammaElem h = G.element(members[head]);
        for (const auto& s : gens) add(G.op(h, s));
        for (const auto& g : conj) {
            GammaElem c = G.op(G.op(G.inverse(g), h), g);
            if (add(c)) gens.push_back(c);
        }
    }
    return members;
}

}  // namespace

GammaStructure gamma_structure(unsigned c, std::uint64_t p) {
    GammaGroup G(c, p);
    std::uint64_t total = 1;
    for (unsigned i = 0; i < c + 2; ++i) {
        total *= p;
        if (total > 10'000'000) throw Error(Errc::BudgetExceeded, "group exceeds the brute-force budget of 10^7");
    }
    GammaStructure out;
    out.order = total;

    std::vector<GammaElem> gens;
    for (unsigned l = 0; l <= c; ++l) gens.push_back(G.P(l, 1));
    gens.push_back(G.y(1));

    std::vector<std::uint64_t> layer(total);
    std::iota(layer.begin(), layer.end(), 0);
    out.lower_central_orders.push_back(total);
    while (layer.size() > 1) {
        std::vector<GammaElem> comms;
        for (auto h : layer)
            for (const auto& g : gens) comms.push_back(G.commutator(G.element(h), g));
        layer = normal_closure(G, comms, gens);
        out.lower_central_orders.push_back(layer.size());
        ++out.nilpotency_class;
        if (out.nilpotency_class > c + 2) break;
    }

    std::uint64_t centre = 0;
    bool top = true;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        GammaElem z = G.element(idx);
        bool central = true;
        for (const auto& g : gens)
            if (!(G.op(z, g) == G.op(g, z))) {
                central = false;
                break;
            }
        if (!central) continue;
        ++centre;
        if (z.shift) top = false;
        for (unsigned m = 1; m <= c; ++m)
            if (z.poly[m]) top = false;
    }
    out.center_order = centre;
    out.center_is_top_layer = top && centre == p;

    out.generated_by_x0_y = normal_closure(G, {G.P(0, 1), G.y(1)}, {}).size() == total;
    return out;
}

bool check_commutator_formula(const GammaGroup& G) {
    unsigned c = G.c();
    std::uint64_t p = G.p();
    for (unsigned n = 0; n <= c; ++n) {
        std::uint64_t binom = 1;
        std::vector<std::uint64_t> bn(n + 1, 1);
        for (unsigned i = 1; i <= n; ++i) {
            binom = binom * (n - i + 1) / i;
            bn[i] = binom % p;
        }
        for (std::uint64_t r = 0; r < p; ++r)
            for (std::uint64_t s = 0; s < p; ++s) {
                GammaElem lhs = G.commutator(G.P(c - n, r), G.y(s));
                GammaElem rhs = G.identity();
                std::uint64_t sp = 1;
                for (unsigned i = 1; i <= n; ++i) {
                    sp = sp * s % p;
                    rhs = G.op(rhs, G.P(c - n + i, bn[i] * r % p * sp % p));
                }
                if (!(lhs == rhs)) return false;
            }
    }
    return true;
}

Word embed_gamma(const GammaElem& a, const GammaEmbedding& emb, std::uint64_t p) {
    if (p <= emb.c) throw Error(Errc::NotInvertible, "c! is not invertible mod " + std::to_string(p));
    if (a.poly.size() != emb.c + 1) throw Error(Errc::DimensionMismatch, "polynomial length differs from c+1");
    Word w;
    for (unsigned m = 0; m <= emb.c; ++m) {
        std::uint64_t coef = a.poly[m] % p;
        if (!coef) continue;
        w.push(GenLetter::bi_transvection(emb.i, emb.j, emb.k, m, emb.offset + emb.d * (emb.c - m), p - coef));
    }
    if (a.shift % p) w.push(GenLetter::transvection(emb.j, emb.k, emb.d, p - a.shift % p));
    return w;
}

}  // namespace tamexp
