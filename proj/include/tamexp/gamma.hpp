#pragma once

#include <cstdint>
#include <vector>

#include "tamexp/tame.hpp"

namespace tamexp {

// (P, r) with P of degree <= c over F_p; coefficients indexed by power of x
struct GammaElem {
    std::vector<std::uint64_t> poly;
    std::uint64_t shift = 0;
    bool operator==(const GammaElem& o) const = default;
};

// R[x]_{<=c} semidirect F_p, with (P, r)(Q, s) = (P + Q(x - r), r + s)
class GammaGroup {
public:
    GammaGroup(unsigned c, std::uint64_t p);

    unsigned c() const { return c_; }
    std::uint64_t p() const { return p_; }
    std::uint64_t order() const;

    GammaElem identity() const;
    GammaElem op(const GammaElem& a, const GammaElem& b) const;
    GammaElem inverse(const GammaElem& a) const;
    // a^{-1} b^{-1} a b
    GammaElem commutator(const GammaElem& a, const GammaElem& b) const;
    // r x^{c - l}
    GammaElem P(unsigned l, std::uint64_t r) const;
    GammaElem y(std::uint64_t r) const;
    // Q(x + s)
    std::vector<std::uint64_t> shift_poly(const std::vector<std::uint64_t>& q, std::uint64_t s) const;

    std::uint64_t index(const GammaElem& a) const;
    GammaElem element(std::uint64_t idx) const;

private:
    unsigned c_;
    std::uint64_t p_;
    std::vector<std::vector<std::uint64_t>> binom_;
};

struct GammaStructure {
    std::uint64_t order = 0;
    unsigned nilpotency_class = 0;
    std::uint64_t center_order = 0;
    bool center_is_top_layer = false;  // center equals {r x^0}
    bool generated_by_x0_y = false;
    std::vector<std::uint64_t> lower_central_orders;
};

// exhaustive; throws BudgetExceeded when p^{c+2} > 10^7
GammaStructure gamma_structure(unsigned c, std::uint64_t p);

// checks [P_{c-n}(r), y(s)] = sum_{i=1}^n binom(n,i) P_{c-n+i}(r s^i) for all n, r, s
bool check_commutator_formula(const GammaGroup& G);

// Realizes Gamma_{c,F_p} inside the tame group:
// r x^m -> x_i -= r x_j^m x_k^{offset + d(c - m)} and y(s) -> x_j -= s x_k^d.
struct GammaEmbedding {
    unsigned i = 0, j = 1, k = 2;
    unsigned c = 1;
    std::uint64_t d = 1;
    std::uint64_t offset = 0;
};

Word embed_gamma(const GammaElem& a, const GammaEmbedding& emb, std::uint64_t p);

}  // namespace tamexp
