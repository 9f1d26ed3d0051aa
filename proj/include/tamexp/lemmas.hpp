#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tamexp/ff.hpp"

namespace tamexp {

struct CountReport {
    std::uint64_t N = 0;
    // smallest over nonzero gamma of #{alpha : F_p(alpha^N gamma) = F_q} / q
    std::uint64_t worst_count = 0;
    std::uint64_t q = 0;
    bool holds = false;  // worst_count / q >= 1 - N/p
};

// exhaustive; throws BoundViolated if the proportion drops below 1 - N/p
CountReport verify_count_lemma(const Field& F, std::uint64_t N);

struct EnlargeReport {
    std::uint64_t N = 0;
    std::uint64_t triples = 0;          // (alpha != 0, beta, k) checked
    std::uint64_t strict_instances = 0;  // triples where the strict version applies
    bool holds = false;
};

// for every alpha != 0, beta, 0 <= k < N: some lambda in F_p(alpha^N) gives
// |F_p((beta + lambda alpha^k)^N)| >= |F_p(alpha^N)|, strictly when
// F_p(alpha^N) != F_p(alpha^N, beta^N, alpha^k beta^{N-1}); throws BoundViolated otherwise
EnlargeReport verify_enlarge_lemma(const Field& F, std::uint64_t N);

struct InterpolationReport {
    std::uint64_t instances = 0;
    std::uint64_t passed = 0;
};

InterpolationReport check_interpolation(const Field& F, std::uint64_t instances, std::uint64_t seed);

struct LemmaSuiteReport {
    std::vector<std::string> failures;
    std::uint64_t fields = 0;
    std::uint64_t count_checks = 0;
    std::uint64_t enlarge_triples = 0;
    std::uint64_t interpolation_instances = 0;
    bool passed() const { return failures.empty(); }
};

// all fields with q <= max_q, all N <= max_N with N < p, plus random interpolation instances
LemmaSuiteReport verify_lemma_suite(std::uint64_t max_q, std::uint64_t max_N, std::uint64_t interpolation_instances,
                                    std::uint64_t seed);

}  // namespace tamexp
