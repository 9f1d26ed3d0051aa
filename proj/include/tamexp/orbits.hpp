#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tamexp/permgrp.hpp"
#include "tamexp/tame.hpp"

namespace tamexp {

// sum_i idx(a_i) q^i; the origin is 0
using PointIndex = std::uint64_t;

// q^n, or BudgetExceeded when it does not fit comfortably in 64 bits
std::uint64_t point_count(const Field& F, unsigned n);
PointIndex encode_point(const Field& F, const Elem* a, unsigned n);
inline PointIndex encode_point(const Field& F, const Point& a) {
    return encode_point(F, a.data(), static_cast<unsigned>(a.size()));
}
void decode_point(const Field& F, PointIndex x, Elem* a, unsigned n);
Point decode_point(const Field& F, PointIndex x, unsigned n);

struct OrbitInvariant {
    unsigned d0 = 1;           // degree of A_{phi,0} over F_p
    PointIndex a1_label = 0;   // smallest index of phi_beta over admissible beta in A_{phi,1}
    bool zero = false;

    bool operator==(const OrbitInvariant&) const = default;
    auto operator<=>(const OrbitInvariant&) const = default;
};

std::string to_string(const OrbitInvariant& inv);

unsigned compute_A0(const Field& F, const Point& phi, const GradingSpec& g);
OrbitInvariant orbit_invariant(const Field& F, const Point& phi, const GradingSpec& g);

struct GammaSpec {
    Elem lambda = 1;                      // generates the (E-1)-st roots of unity in F
    std::uint64_t lambda_order = 1;
    unsigned ell = 1;                     // order of the Frobenius
    std::vector<std::uint64_t> exponent;  // m_lambda scales a_i by lambda^exponent[i]
};

GammaSpec make_gamma_spec(const Field& F, const GradingSpec& g);

enum class GammaMove { Frobenius, MLambda };

void gamma_apply(const Field& F, GammaMove which, const GammaSpec& gamma, Elem* a, unsigned n);
Point gamma_apply(const Field& F, GammaMove which, const GammaSpec& gamma, const Point& a);
// both moves commute with every standard generator on all of F^n (at most 10^6 points)
bool gamma_commutes(const Field& F, const GroupParams& params, const GammaSpec& gamma);
// the Gamma-orbit of a point, smallest index first
std::vector<PointIndex> gamma_orbit(const Field& F, const GammaSpec& gamma, PointIndex x, unsigned n);

inline constexpr std::uint64_t kExhaustiveOrbitLimit = 10'000'000;
inline constexpr std::uint64_t kStratifiedOrbitLimit = 1'000'000'000;

struct OrbitInfo {
    std::uint64_t size = 0;
    PointIndex representative = 0;  // smallest index in the orbit
    OrbitInvariant invariant;
    bool connected = true;  // stratified mode: the class was exhausted from its representative
};

struct OrbitPartition {
    unsigned n = 0;
    std::uint64_t total = 0;
    std::vector<OrbitInfo> orbits;   // sorted by size, then representative
    std::vector<std::uint32_t> label;  // orbit of every point; empty in stratified mode
    bool exhaustive = true;            // BFS on all points rather than invariant classes
    bool sufficiency_applies = false;  // p >= E >= 2, so invariants separate orbits
    bool invariants_distinct = false;

    std::vector<PointIndex> members(std::size_t orbit) const;
};

// orbits of G on F_{p^ell}^n: BFS up to 10^7 points, invariant classes up to 10^9
OrbitPartition orbit_partition(const GroupParams& params, unsigned ell);

struct GammaClasses {
    std::uint64_t class_count = 0;
    std::map<std::uint64_t, std::uint64_t> histogram;  // class size -> number of classes
    std::vector<std::uint32_t> class_of;                // parallel to the input points
    std::vector<PointIndex> representatives;            // smallest index of each class
};

// classes of <F, m_lambda> on a sorted Gamma-invariant point set
GammaClasses gamma_classes(const Field& F, unsigned n, const std::vector<PointIndex>& points,
                           const GammaSpec& gamma);

struct LargeOrbitReport {
    std::uint64_t orbit_size = 0;
    std::uint64_t lower_bound = 0;  // p^{ell n} - (E-1)^n p^{(ell-1) n}
    bool holds = false;             // size >= bound
    bool strict = false;            // size > bound
};

LargeOrbitReport check_large_orbit(const GroupParams& params, unsigned ell);
LargeOrbitReport check_large_orbit(const GroupParams& params, unsigned ell, const OrbitPartition& part);

// the permutation induced by a word on a sorted invariant point set, in positions
Perm action_perm(const Field& F, const Word& w, unsigned n, const std::vector<PointIndex>& domain);
// the action on F^n minus the origin, point x at position x - 1
Perm nonzero_action(const Field& F, const Word& w, unsigned n);
// the action on Gamma-classes of a sorted invariant point set
Perm class_action(const Field& F, const Word& w, unsigned n, const std::vector<PointIndex>& points,
                  const GammaClasses& classes);

// Graphviz rendering of the generator graph on one orbit (at most 2000 points)
std::string orbit_dot(const Field& F, const GroupParams& params, const std::vector<PointIndex>& orbit);

}  // namespace tamexp
