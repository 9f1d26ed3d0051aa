#pragma once

#include <cstdint>
#include <vector>

#include "tamexp/orbits.hpp"
#include "tamexp/synth.hpp"

namespace tamexp {

// the first k elements alpha (by index) with F_p(alpha^{E-1}) = F and pairwise
// distinct minimal polynomials of alpha^{E-1}; the standard tuple is (phi_alpha)
std::vector<Elem> standard_targets(const Field& F, const GradingSpec& g, unsigned k);

struct TupleSolution {
    Word word;                       // polynomial transvection letters
    std::vector<Elem> targets;
    std::size_t expanded_length = 0;  // letters in the standard generators
    bool certified = false;          // both forms send each point into the class of its target
};

// a word of polynomial transvections sending phi_i into the Gamma-class of
// phi_{targets[i]}; the points must lie in distinct Gamma-classes with A_{phi,0} = F
TupleSolution map_to_standard(const Field& F, const GroupParams& params, const GammaSpec& gamma,
                              const std::vector<Point>& tuple, WordFactory& words);

struct ProbeOptions {
    unsigned k = 2;
    unsigned trials = 200;
    std::uint64_t seed = 1;
};

struct ProbeReport {
    unsigned k = 0, trials = 0, successes = 0;
    double k_bound = 0;         // p^ell (p - E) / (ell p E)
    bool precondition_met = false;  // E >= 2, p >= 3E - 2 and k within the bound
    std::vector<Elem> targets;
    std::size_t longest_word = 0, longest_expansion = 0;
    std::vector<std::vector<PointIndex>> failures;
};

// random k-tuples of distinct Gamma-classes in the orbit A_{phi,0} = F_{p^ell};
// throws ProbeFailed on the first failure when the precondition holds
ProbeReport transitivity_probe(const GroupParams& params, unsigned ell, const ProbeOptions& opt);

}  // namespace tamexp
