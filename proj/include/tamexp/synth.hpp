#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tamexp/tame.hpp"

namespace tamexp {

inline constexpr std::size_t kWordBudget = 1'000'000;

struct SynthOptions {
    std::size_t budget = kWordBudget;
    std::optional<unsigned> grid_ell;  // force the verification field F_{p^grid_ell}
    std::uint64_t samples = 10'000;    // random points when the grid is too big to exhaust
    std::uint64_t seed = 1;
    bool symbolic = true;
};

struct SynthCert {
    unsigned i = 0, j = 0;          // 0-based
    std::uint64_t t = 0;            // exponent (transvection targets)
    Elem r = 0;
    UPoly P;                        // polynomial targets
    bool polynomial = false;
    Word word;
    bool verified = false;
    bool exhaustive = false;
    std::uint64_t points_checked = 0;
    std::string grid;               // serialized verification field and dimension
    bool symbolic_checked = false;  // word_to_endo agreed with the target
};

// x_i += r x_j^{t_ij + m(E-1)} as a word in the standard generators, unverified
Word transvection_word(const GroupParams& params, unsigned i, unsigned j, std::uint64_t m, Elem r,
                       std::size_t budget = kWordBudget);

SynthCert synth_transvection(const GroupParams& params, unsigned i, unsigned j, std::uint64_t t, Elem r,
                             const SynthOptions& opt = {});
// x_i += x_j^{t_ij} P(x_j^{E-1})
SynthCert synth_poly_transvection(const GroupParams& params, unsigned i, unsigned j, const UPoly& P,
                                  const SynthOptions& opt = {});

// memoized unverified words in the standard generators
class WordFactory {
public:
    explicit WordFactory(const GroupParams& params, std::size_t budget = kWordBudget);
    ~WordFactory();
    WordFactory(WordFactory&&) noexcept;
    WordFactory& operator=(WordFactory&&) noexcept;

    // x_i += r x_j^{t_ij + m(E-1)}
    Word transvection(unsigned i, unsigned j, std::uint64_t m, Elem r);
    // x_i += x_j^{t_ij} P(x_j^{E-1})
    Word poly_transvection(unsigned i, unsigned j, const UPoly& P);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct AbelianWitness {
    std::vector<Word> words;  // x_1 += x_2^{t_12 + m(E-1)}, m = 0..rank-1
    unsigned grid_ell = 1;    // smallest extension on which the words are distinct permutations
};

AbelianWitness elementary_abelian_witness(const GroupParams& params, unsigned rank);

// smallest m with p^m > degree + 1
unsigned separating_extension(std::uint64_t p, std::uint64_t degree);

}  // namespace tamexp
