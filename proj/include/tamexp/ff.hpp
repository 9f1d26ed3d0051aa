#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace tamexp {

// A field element is its power-basis coefficient vector packed as a base-p
// integer: sum c_i p^i. Prime-field elements are therefore the integers < p.
using Elem = std::uint64_t;

// Univariate polynomial over F_p, coefficients low-to-high, each in [0, p).
using UPoly = std::vector<std::uint64_t>;

namespace upoly {
void trim(UPoly& f);
int degree(const UPoly& f);  // -1 for the zero polynomial
UPoly add(const UPoly& a, const UPoly& b, std::uint64_t p);
UPoly sub(const UPoly& a, const UPoly& b, std::uint64_t p);
UPoly mul(const UPoly& a, const UPoly& b, std::uint64_t p);
UPoly scale(const UPoly& a, std::uint64_t c, std::uint64_t p);
// quotient and remainder of a by b (b nonzero)
void divmod(const UPoly& a, const UPoly& b, std::uint64_t p, UPoly& quo, UPoly& rem);
UPoly mod(const UPoly& a, const UPoly& b, std::uint64_t p);
UPoly gcd(UPoly a, UPoly b, std::uint64_t p);  // monic, or zero
std::string to_string(const UPoly& f, const char* var = "y");
}  // namespace upoly

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t m);
std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p);
bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// F_{p^ell} = F_p[t]/(modulus). Immutable after construction, cheap to copy.
class Field {
public:
    // lexicographically smallest monic irreducible modulus of degree ell
    static Field make(std::uint64_t p, unsigned ell);
    Field(std::uint64_t p, const UPoly& modulus);

    std::uint64_t p() const { return p_; }
    unsigned ell() const { return ell_; }
    std::uint64_t q() const { return q_; }
    const UPoly& modulus() const { return mod_; }
    bool tabulated() const { return static_cast<bool>(tab_); }
    std::string serialize() const;

    Elem from_int(long long v) const;
    Elem gen() const;  // the class of t
    std::vector<std::uint64_t> coeffs(Elem a) const;
    Elem from_coeffs(const std::vector<std::uint64_t>& c) const;
    bool in_prime_field(Elem a) const { return a < p_; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const;
    Elem frobenius(Elem a) const;

    unsigned generated_subfield_degree(Elem a) const;
    UPoly minimal_polynomial(Elem a) const;
    Elem eval(const UPoly& f, Elem x) const;
    std::uint64_t order(Elem a) const;  // multiplicative order, a != 0
    Elem primitive() const { return prim_; }
    // all elements of the unique subfield of degree d (d | ell), ascending by index
    std::vector<Elem> subfield(unsigned d) const;

    bool operator==(const Field& o) const { return p_ == o.p_ && mod_ == o.mod_; }

private:
    struct Tables {
        std::vector<std::uint32_t> log;
        std::vector<std::uint32_t> exp;  // length 2(q-1)
    };

    Elem mul_poly(Elem a, Elem b) const;
    Elem inv_poly(Elem a) const;

    std::uint64_t p_ = 0;
    unsigned ell_ = 0;
    std::uint64_t q_ = 0;
    UPoly mod_;
    std::vector<std::uint64_t> qm1_factors_;
    Elem prim_ = 1;
    std::shared_ptr<const Tables> tab_;
};

inline Field make_field(std::uint64_t p, unsigned ell) { return Field::make(p, ell); }

}  // namespace tamexp
