#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tamexp {

using BigInt = boost::multiprecision::cpp_int;
// images[x] is the image of point x
using Perm = std::vector<std::uint32_t>;

Perm identity_perm(std::uint32_t degree);
// apply a, then b
Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& a);
bool is_identity(const Perm& a);
bool is_permutation(const Perm& a);

enum class Parity { Even, Odd };
Parity parity(const Perm& a);
BigInt perm_order(const Perm& a);
BigInt factorial(std::uint32_t n);

struct SchreierSimsOptions {
    std::uint64_t seed = 1;
    unsigned confirm = 30;  // consecutive trivial sifts before the deterministic pass
};

class StabChain {
public:
    std::uint32_t degree() const { return degree_; }
    const std::vector<std::uint32_t>& base() const { return base_; }
    std::vector<std::uint64_t> orbit_sizes() const;
    BigInt order() const;
    // residue after sifting; identity iff g lies in the group
    Perm sift(Perm g) const;
    bool contains(const Perm& g) const;
    // largest t with the group t-transitive, read from the leading full levels
    unsigned transitivity_degree() const;
    std::uint64_t seed() const { return seed_; }
    // closed by matching the parity upper bound rather than by the Schreier generator pass
    bool closed_by_bound() const { return closed_by_bound_; }
    std::size_t strong_generator_count() const { return gens_.size(); }

private:
    friend StabChain schreier_sims(const std::vector<Perm>& gens, const SchreierSimsOptions& opt);

    struct Level {
        std::uint32_t point = 0;
        std::vector<std::uint32_t> orbit;
        // 2*gen + 1 if reached by the inverse of gens_[gen]; -1 at the root, -2 outside
        std::vector<std::int32_t> label;
        std::vector<std::uint32_t> gens;  // strong generators fixing the earlier base points
    };

    // strip through levels [from, end); returns the level where sifting stopped (levels_.size() if all passed)
    std::size_t strip(Perm& g, std::size_t from = 0) const;
    void add_generator(Perm g, std::size_t level);
    void extend_orbit(std::size_t level);
    // the permutation undoing the tree edge with this label
    const Perm& step_back(std::int32_t label) const { return label & 1 ? gens_[label >> 1] : inv_[label >> 1]; }
    double log_order() const;

    std::uint32_t degree_ = 0;
    std::vector<std::uint32_t> base_;
    std::vector<Level> levels_;
    std::vector<Perm> gens_, inv_;
    std::uint64_t seed_ = 0;
    bool closed_by_bound_ = false;
};

StabChain schreier_sims(const std::vector<Perm>& gens, const SchreierSimsOptions& opt = {});

enum class Verdict { Alt, Sym, Proper };
std::string verdict_name(Verdict v);

struct AltCertificate {
    std::uint32_t degree = 0;
    BigInt order;
    bool all_even = false;
    bool order_matches = false;  // order == degree!/2
    Verdict verdict = Verdict::Proper;
    std::vector<std::uint32_t> base;
    std::uint64_t seed = 0;
    bool closed_by_bound = false;
};

AltCertificate certify_alternating(const StabChain& chain, const std::vector<Perm>& gens);

}  // namespace tamexp
