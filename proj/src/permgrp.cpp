#include "tamexp/permgrp.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "tamexp/error.hpp"

namespace tamexp {

Perm identity_perm(std::uint32_t degree) {
    Perm p(degree);
    std::iota(p.begin(), p.end(), 0u);
    return p;
}

Perm compose(const Perm& a, const Perm& b) {
    Perm r(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) r[x] = b[a[x]];
    return r;
}

Perm inverse(const Perm& a) {
    Perm r(a.size());
    for (std::uint32_t x = 0; x < a.size(); ++x) r[a[x]] = x;
    return r;
}

bool is_identity(const Perm& a) {
    for (std::uint32_t x = 0; x < a.size(); ++x)
        if (a[x] != x) return false;
    return true;
}

bool is_permutation(const Perm& a) {
    std::vector<char> hit(a.size(), 0);
    for (auto y : a) {
        if (y >= a.size() || hit[y]) return false;
        hit[y] = 1;
    }
    return true;
}

Parity parity(const Perm& a) {
    std::vector<char> seen(a.size(), 0);
    std::size_t transpositions = 0;
    for (std::uint32_t x = 0; x < a.size(); ++x) {
        if (seen[x]) continue;
        std::size_t len = 0;
        for (std::uint32_t y = x; !seen[y]; y = a[y]) {
            seen[y] = 1;
            ++len;
        }
        transpositions += len - 1;
    }
    return transpositions % 2 ? Parity::Odd : Parity::Even;
}

BigInt perm_order(const Perm& a) {
    std::vector<char> seen(a.size(), 0);
    BigInt o = 1;
    for (std::uint32_t x = 0; x < a.size(); ++x) {
        if (seen[x]) continue;
        std::uint64_t len = 0;
        for (std::uint32_t y = x; !seen[y]; y = a[y]) {
            seen[y] = 1;
            ++len;
        }
        o = boost::multiprecision::lcm(o, BigInt(len));
    }
    return o;
}

BigInt factorial(std::uint32_t n) {
    BigInt f = 1;
    for (std::uint32_t k = 2; k <= n; ++k) f *= k;
    return f;
}

std::vector<std::uint64_t> StabChain::orbit_sizes() const {
    std::vector<std::uint64_t> s;
    for (const auto& l : levels_) s.push_back(l.orbit.size());
    return s;
}

BigInt StabChain::order() const {
    BigInt o = 1;
    for (const auto& l : levels_) o *= l.orbit.size();
    return o;
}

double StabChain::log_order() const {
    double s = 0;
    for (const auto& l : levels_) s += std::log(static_cast<double>(l.orbit.size()));
    return s;
}

std::size_t StabChain::strip(Perm& g, std::size_t from) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
        const Level& L = levels_[i];
        std::uint32_t y = g[L.point];
        if (L.label[y] == -2) return i;
        while (L.label[y] >= 0) {
            const Perm& back = step_back(L.label[y]);
            for (auto& v : g) v = back[v];
            y = back[y];
        }
    }
    return levels_.size();
}

Perm StabChain::sift(Perm g) const {
    if (g.size() != degree_) throw Error(Errc::DimensionMismatch, "permutation degree differs from the chain");
    strip(g);
    return g;
}

bool StabChain::contains(const Perm& g) const {
    if (g.size() != degree_) return false;
    Perm h = g;
    return strip(h) == levels_.size() && is_identity(h);
}

unsigned StabChain::transitivity_degree() const {
    unsigned t = 0;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        if (levels_[i].orbit.size() != degree_ - i) break;
        ++t;
    }
    if (degree_ > 0 && t + 1 >= degree_) return degree_;
    return t;
}

void StabChain::extend_orbit(std::size_t level) {
    Level& L = levels_[level];
    if (L.orbit.size() == degree_ - level) return;
    for (auto x : L.orbit) L.label[x] = -2;
    L.orbit.assign(1, L.point);
    L.label[L.point] = -1;
    for (std::size_t k = 0; k < L.orbit.size(); ++k) {
        std::uint32_t x = L.orbit[k];
        for (auto gi : L.gens) {
            for (int dir = 0; dir < 2; ++dir) {
                std::uint32_t y = dir ? inv_[gi][x] : gens_[gi][x];
                if (L.label[y] == -2) {
                    L.label[y] = static_cast<std::int32_t>(2 * gi + dir);
                    L.orbit.push_back(y);
                }
            }
        }
    }
}

void StabChain::add_generator(Perm g, std::size_t level) {
    if (level == levels_.size()) {
        std::uint32_t b = 0;
        while (g[b] == b) ++b;
        Level L;
        L.point = b;
        L.orbit = {b};
        L.label.assign(degree_, -2);
        L.label[b] = -1;
        levels_.push_back(std::move(L));
        base_.push_back(b);
    }
    std::uint32_t idx = static_cast<std::uint32_t>(gens_.size());
    inv_.push_back(inverse(g));
    gens_.push_back(std::move(g));
    for (std::size_t i = 0; i <= level; ++i) {
        levels_[i].gens.push_back(idx);
        extend_orbit(i);
    }
}

StabChain schreier_sims(const std::vector<Perm>& gens, const SchreierSimsOptions& opt) {
    StabChain C;
    C.seed_ = opt.seed;
    if (gens.empty()) return C;
    C.degree_ = static_cast<std::uint32_t>(gens[0].size());
    for (const auto& g : gens)
        if (g.size() != C.degree_ || !is_permutation(g))
            throw Error(Errc::DimensionMismatch, "generators must be permutations of one degree");
    std::uint32_t d = C.degree_;

    bool all_even = true;
    for (const auto& g : gens) all_even &= parity(g) == Parity::Even;
    BigInt bound = factorial(d);
    if (all_even && d >= 2) bound /= 2;
    double log_bound = std::lgamma(static_cast<double>(d) + 1) - (all_even && d >= 2 ? std::log(2.0) : 0.0);
    auto closed = [&] {
        if (C.log_order() < log_bound - 1e-6) return false;
        return C.order() == bound;
    };

    for (const auto& g : gens) {
        Perm h = g;
        std::size_t lvl = C.strip(h);
        if (!is_identity(h)) C.add_generator(std::move(h), lvl);
    }
    if (C.levels_.empty()) return C;

    // product replacement
    std::mt19937_64 rng(opt.seed);
    std::vector<Perm> slots;
    for (std::size_t k = 0; k < std::max<std::size_t>(10, gens.size()); ++k) slots.push_back(gens[k % gens.size()]);
    Perm acc = identity_perm(d);
    auto next_random = [&] {
        std::size_t a = rng() % slots.size(), b = rng() % (slots.size() - 1);
        if (b >= a) ++b;
        slots[a] = (rng() & 1) ? compose(slots[a], slots[b]) : compose(slots[a], inverse(slots[b]));
        acc = compose(acc, slots[a]);
        return acc;
    };
    for (int k = 0; k < 60; ++k) next_random();

    while (true) {
        unsigned quiet = 0;
        while (quiet < opt.confirm) {
            if (closed()) {
                C.closed_by_bound_ = true;
                return C;
            }
            Perm h = next_random();
            std::size_t lvl = C.strip(h);
            if (is_identity(h)) {
                ++quiet;
                continue;
            }
            quiet = 0;
            C.add_generator(std::move(h), lvl);
        }
        if (closed()) {
            C.closed_by_bound_ = true;
            return C;
        }
        // deterministic pass: every Schreier generator must sift to the identity
        bool changed = false;
        for (std::size_t i = C.levels_.size(); i-- > 0 && !changed;) {
            const auto& L = C.levels_[i];
            for (std::size_t k = 0; !changed && k < L.orbit.size(); ++k) {
                std::uint32_t x = L.orbit[k];
                // u_x as a permutation: walk to the root, then invert
                Perm ux_inv = identity_perm(d);
                for (std::uint32_t y = x; L.label[y] >= 0;) {
                    const Perm& back = C.step_back(L.label[y]);
                    for (auto& v : ux_inv) v = back[v];
                    y = back[y];
                }
                Perm ux = inverse(ux_inv);
                for (std::size_t gi = 0; !changed && gi < L.gens.size(); ++gi) {
                    Perm h = compose(ux, C.gens_[L.gens[gi]]);
                    std::size_t lvl = C.strip(h, i);
                    if (is_identity(h)) continue;
                    C.add_generator(std::move(h), lvl);
                    changed = true;
                }
            }
        }
        if (!changed) return C;
    }
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Alt:
            return "Alt";
        case Verdict::Sym:
            return "Sym";
        default:
            return "Proper";
    }
}

AltCertificate certify_alternating(const StabChain& chain, const std::vector<Perm>& gens) {
    AltCertificate c;
    c.degree = chain.degree();
    c.order = chain.order();
    c.all_even = true;
    for (const auto& g : gens) c.all_even &= parity(g) == Parity::Even;
    BigInt full = factorial(c.degree);
    c.order_matches = c.degree >= 2 && c.order * 2 == full;
    if (c.order_matches && c.all_even)
        c.verdict = Verdict::Alt;
    else if (c.order == full)
        c.verdict = Verdict::Sym;
    else
        c.verdict = Verdict::Proper;
    c.base = chain.base();
    c.seed = chain.seed();
    c.closed_by_bound = chain.closed_by_bound();
    return c;
}

}  // namespace tamexp
