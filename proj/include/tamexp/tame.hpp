#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tamexp/ff.hpp"
#include "tamexp/polyring.hpp"

namespace tamexp {

// Indices are 0-based in memory and 1-based in the text format.
struct GenLetter {
    enum class Kind { Transvection, BiTransvection, PolyTransvection, CoordCycle };

    Kind kind = Kind::CoordCycle;
    unsigned i = 0, j = 0, k = 0;
    std::uint64_t e = 0;     // Transvection exponent
    std::uint64_t c = 0, d = 0;  // BiTransvection exponents on x_j, x_k
    Elem r = 0;              // prime-field coefficient
    UPoly P;                 // PolyTransvection polynomial
    std::uint64_t t = 0, N = 0;  // PolyTransvection: x_i += x_j^t P(x_j^N)

    // x_i += r x_j^e
    static GenLetter transvection(unsigned i, unsigned j, std::uint64_t e, Elem r);
    // x_i += r x_j^c x_k^d
    static GenLetter bi_transvection(unsigned i, unsigned j, unsigned k, std::uint64_t c,
                                     std::uint64_t d, Elem r);
    // x_i += x_j^{t_ij} P(x_j^{E-1}) with t_ij taken from the grading
    static GenLetter poly_transvection(unsigned i, unsigned j, const UPoly& P, const GradingSpec& g);
    // coordinate i receives the old coordinate i+1
    static GenLetter coord_cycle();

    bool operator==(const GenLetter& o) const = default;
};

struct SignedLetter {
    GenLetter g;
    int sign = 1;
    bool operator==(const SignedLetter& o) const = default;
};

struct Word {
    std::vector<SignedLetter> letters;

    Word() = default;
    Word(std::initializer_list<GenLetter> gs);
    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    Word& append(const Word& w);
    Word& push(const GenLetter& g, int sign = 1);
    bool operator==(const Word& o) const = default;
};

Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
// a^{-1} b^{-1} a b
Word commutator(const Word& a, const Word& b);

struct GroupParams {
    std::uint64_t p = 0;
    std::vector<std::uint64_t> e;
    GradingSpec grading;

    unsigned n() const { return static_cast<unsigned>(e.size()); }
};

GroupParams make_params(std::uint64_t p, const std::vector<std::uint64_t>& e);

void check_letter(const GenLetter& g, unsigned n);
void check_word(const Word& w, unsigned n);

// in-place action on a point given as n consecutive coordinates
void apply_letter(const Field& F, const GenLetter& g, int sign, Elem* a, unsigned n);
Point apply_letter(const Field& F, const GenLetter& g, int sign, const Point& a);
void apply_word(const Field& F, const Word& w, Elem* a, unsigned n);
Point apply_word(const Field& F, const Word& w, const Point& a);

// symbolic point map of the word, coefficients in the field F (normally the prime field)
PolyEndo word_to_endo(const Field& F, const Word& w, unsigned n, std::size_t cap = kDefaultTermCap);
PolyEndo letter_to_endo(const Field& F, const GenLetter& g, unsigned n);

// tau_i(r): x_i += r x_{i+1}^{e_i}, cyclic
GenLetter standard_generator(const GroupParams& params, unsigned i, Elem r = 1);
std::vector<GenLetter> standard_generators(const GroupParams& params, bool all_coefficients = false);

// x -> (y, z, x), (x + y, y, z), (x + y^2, y, z) on three coordinates
std::vector<Word> expander_generators_3d();
// the coordinate shift and (x1 + x2, x2, x3, x4 + x6^2, x5, x6, x7) on seven coordinates
std::vector<Word> expander_generators_7d();

std::string format_letter(const GenLetter& g, int sign = 1);
std::string format_word(const Word& w);
// the grading is needed to resolve P(...) letters; prime p reduces coefficients
Word parse_word(const std::string& text, std::uint64_t p, const GradingSpec* grading = nullptr);

}  // namespace tamexp
