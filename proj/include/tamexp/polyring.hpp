#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tamexp/ff.hpp"

namespace tamexp {

using Exponents = std::vector<std::uint32_t>;
using Point = std::vector<Elem>;

inline constexpr std::size_t kDefaultTermCap = 1'000'000;

// Sparse polynomial in n variables; zero coefficients are never stored.
struct MultiPoly {
    unsigned n = 0;
    std::map<Exponents, Elem> terms;

    static MultiPoly constant(unsigned n, Elem c);
    static MultiPoly var(unsigned n, unsigned i);  // 0-based
    static MultiPoly monomial(unsigned n, const Exponents& ex, Elem c);

    bool is_zero() const { return terms.empty(); }
    unsigned total_degree() const;
    bool operator==(const MultiPoly& o) const { return n == o.n && terms == o.terms; }
};

MultiPoly add(const Field& F, const MultiPoly& a, const MultiPoly& b);
MultiPoly sub(const Field& F, const MultiPoly& a, const MultiPoly& b);
MultiPoly scale(const Field& F, const MultiPoly& a, Elem c);
MultiPoly mul(const Field& F, const MultiPoly& a, const MultiPoly& b,
              std::size_t cap = kDefaultTermCap);
MultiPoly pow(const Field& F, const MultiPoly& a, std::uint64_t e,
              std::size_t cap = kDefaultTermCap);
Elem evaluate(const Field& F, const MultiPoly& f, const Point& a);
// substitute images[i] for x_{i+1}
MultiPoly substitute(const Field& F, const MultiPoly& f, const std::vector<MultiPoly>& images,
                     std::size_t cap = kDefaultTermCap);
std::string to_string(const Field& F, const MultiPoly& f);

struct PolyEndo {
    std::vector<MultiPoly> images;

    static PolyEndo identity(unsigned n);
    unsigned n() const { return static_cast<unsigned>(images.size()); }
    bool operator==(const PolyEndo& o) const { return images == o.images; }
};

// the endomorphism x_i -> f_i(g_1, ..., g_n); as a map on points, apply g then f
PolyEndo compose(const Field& F, const PolyEndo& f, const PolyEndo& g,
                 std::size_t cap = kDefaultTermCap);
Point evaluate(const Field& F, const PolyEndo& f, const Point& a);

struct GradingSpec {
    std::vector<std::uint64_t> e;
    std::uint64_t E = 1;
    std::uint64_t N = 0;
    std::vector<std::uint64_t> deg;  // residues mod N (all zero when N <= 1)

    unsigned n() const { return static_cast<unsigned>(e.size()); }
    // e_i e_{i+1} ... e_{j-1}, indices 0-based and cyclic
    std::uint64_t t(unsigned i, unsigned j) const;
    // e_i ... e_{n-1}, 0-based
    std::uint64_t d(unsigned i) const;
};

GradingSpec make_grading(const std::vector<std::uint64_t>& e);
std::uint64_t grading_degree(const Exponents& mono, const GradingSpec& spec);
bool is_graded(const PolyEndo& f, const GradingSpec& spec);

}  // namespace tamexp
