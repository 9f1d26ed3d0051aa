#include "tamexp/ff.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "tamexp/error.hpp"

namespace tamexp {

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    unsigned __int128 r = 1 % m, x = b % m;
    while (e) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(r);
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) throw Error(Errc::NotInvertible, "zero has no inverse");
    return mod_pow(a, p - 2, p);
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

namespace upoly {

void trim(UPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const UPoly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[i]) return i;
    return -1;
}

UPoly add(const UPoly& a, const UPoly& b, std::uint64_t p) {
    UPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint64_t s = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        r[i] = s % p;
    }
    trim(r);
    return r;
}

UPoly sub(const UPoly& a, const UPoly& b, std::uint64_t p) {
    UPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint64_t x = i < a.size() ? a[i] : 0;
        std::uint64_t y = i < b.size() ? b[i] : 0;
        r[i] = (x + p - y) % p;
    }
    trim(r);
    return r;
}

UPoly mul(const UPoly& a, const UPoly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    trim(r);
    return r;
}

UPoly scale(const UPoly& a, std::uint64_t c, std::uint64_t p) {
    UPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * (c % p) % p;
    trim(r);
    return r;
}

void divmod(const UPoly& a, const UPoly& b, std::uint64_t p, UPoly& quo, UPoly& rem) {
    int db = degree(b);
    if (db < 0) throw Error(Errc::NotInvertible, "polynomial division by zero");
    rem = a;
    trim(rem);
    int da = degree(rem);
    quo.assign(da >= db ? da - db + 1 : 0, 0);
    std::uint64_t lead_inv = mod_inv(b[db], p);
    for (int k = da; k >= db; --k) {
        std::uint64_t c = rem[k] * lead_inv % p;
        if (!c) continue;
        quo[k - db] = c;
        for (int i = 0; i <= db; ++i)
            rem[k - db + i] = (rem[k - db + i] + p - c * b[i] % p) % p;
    }
    trim(rem);
    trim(quo);
}

UPoly mod(const UPoly& a, const UPoly& b, std::uint64_t p) {
    UPoly q, r;
    divmod(a, b, p, q, r);
    return r;
}

UPoly gcd(UPoly a, UPoly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        UPoly r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) a = scale(a, mod_inv(a.back(), p), p);
    return a;
}

std::string to_string(const UPoly& f, const char* var) {
    if (degree(f) < 0) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(f); i >= 0; --i) {
        if (!f[i]) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || f[i] != 1) os << f[i];
        if (i > 0) os << var;
        if (i > 1) os << '^' << i;
    }
    return os.str();
}

}  // namespace upoly

namespace {

UPoly powmod_x(std::uint64_t e, const UPoly& f, std::uint64_t p, UPoly base) {
    UPoly r{1};
    base = upoly::mod(base, f, p);
    while (e) {
        if (e & 1) r = upoly::mod(upoly::mul(r, base, p), f, p);
        base = upoly::mod(upoly::mul(base, base, p), f, p);
        e >>= 1;
    }
    return r;
}

bool is_irreducible(const UPoly& f, std::uint64_t p) {
    int n = upoly::degree(f);
    if (n <= 1) return n == 1;
    if (f[0] == 0) return false;
    // h_d = x^{p^d} mod f
    std::vector<UPoly> h(n + 1);
    h[0] = UPoly{0, 1};
    for (int d = 1; d <= n; ++d) h[d] = powmod_x(p, f, p, h[d - 1]);
    const UPoly x{0, 1};
    if (upoly::sub(h[n], x, p).size() != 0) return false;
    for (int d = 1; d < n; ++d) {
        if (n % d) continue;
        UPoly g = upoly::gcd(f, upoly::sub(h[d], x, p), p);
        if (upoly::degree(g) != 0) return false;
    }
    return true;
}

constexpr std::uint64_t kTableLimit = 1ull << 16;

}  // namespace

Field Field::make(std::uint64_t p, unsigned ell) {
    if (ell < 1) throw Error(Errc::DegreeZero, "extension degree must be at least 1");
    if (!is_prime(p)) throw Error(Errc::NonPrime, std::to_string(p) + " is not prime");
    if (p >= (1ull << 31)) throw Error(Errc::FieldTooLarge, "p must be below 2^31");
    std::uint64_t count = 1;
    for (unsigned i = 0; i < ell; ++i) {
        count *= p;
        if (count > (1ull << 40)) throw Error(Errc::FieldTooLarge, "p^ell must not exceed 2^40");
    }
    if (ell == 1) return Field(p, UPoly{0, 1});
    // c_0 is the most significant position of the lexicographic order
    std::vector<std::uint64_t> c(ell, 0);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::uint64_t v = idx;
        for (int i = static_cast<int>(ell) - 1; i >= 0; --i) {
            c[i] = v % p;
            v /= p;
        }
        if (c[0] == 0) continue;
        UPoly f(c.begin(), c.end());
        f.push_back(1);
        if (is_irreducible(f, p)) return Field(p, f);
    }
    throw Error(Errc::NotApplicable, "no irreducible polynomial found");
}

Field::Field(std::uint64_t p, const UPoly& modulus) : p_(p), mod_(modulus) {
    if (!is_prime(p)) throw Error(Errc::NonPrime, std::to_string(p) + " is not prime");
    upoly::trim(mod_);
    int deg = upoly::degree(mod_);
    if (deg < 1) throw Error(Errc::DegreeZero, "modulus must have positive degree");
    if (mod_.back() != 1) throw Error(Errc::NotApplicable, "modulus must be monic");
    if (!is_irreducible(mod_, p)) throw Error(Errc::NotApplicable, "modulus is reducible");
    ell_ = static_cast<unsigned>(deg);
    q_ = 1;
    for (unsigned i = 0; i < ell_; ++i) {
        q_ *= p_;
        if (q_ > (1ull << 40)) throw Error(Errc::FieldTooLarge, "p^ell must not exceed 2^40");
    }
    qm1_factors_ = prime_factors(q_ - 1);
    for (Elem g = 1; g < q_; ++g) {
        if (order(g) == q_ - 1) {
            prim_ = g;
            break;
        }
    }
    if (q_ <= kTableLimit) {
        auto t = std::make_shared<Tables>();
        t->log.assign(q_, 0);
        t->exp.assign(2 * (q_ - 1), 0);
        Elem x = 1;
        for (std::uint64_t k = 0; k < q_ - 1; ++k) {
            t->exp[k] = t->exp[k + q_ - 1] = static_cast<std::uint32_t>(x);
            t->log[x] = static_cast<std::uint32_t>(k);
            x = mul_poly(x, prim_);
        }
        tab_ = std::move(t);
    }
}

std::string Field::serialize() const {
    std::ostringstream os;
    os << "p=" << p_ << " ell=" << ell_ << " mod=";
    for (std::size_t i = 0; i < mod_.size(); ++i) os << (i ? "," : "") << mod_[i];
    return os.str();
}

Elem Field::from_int(long long v) const {
    long long m = static_cast<long long>(p_);
    return static_cast<Elem>(((v % m) + m) % m);
}

Elem Field::gen() const { return ell_ == 1 ? 0 : p_; }

std::vector<std::uint64_t> Field::coeffs(Elem a) const {
    std::vector<std::uint64_t> c(ell_);
    for (unsigned i = 0; i < ell_; ++i) {
        c[i] = a % p_;
        a /= p_;
    }
    return c;
}

Elem Field::from_coeffs(const std::vector<std::uint64_t>& c) const {
    if (c.size() > ell_) throw Error(Errc::DimensionMismatch, "too many coefficients");
    Elem a = 0;
    for (std::size_t i = c.size(); i-- > 0;) a = a * p_ + c[i] % p_;
    return a;
}

Elem Field::add(Elem a, Elem b) const {
    if (ell_ == 1) {
        Elem s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem r = 0, w = 1;
    while (a | b) {
        Elem s = a % p_ + b % p_;
        if (s >= p_) s -= p_;
        r += s * w;
        w *= p_;
        a /= p_;
        b /= p_;
    }
    return r;
}

Elem Field::neg(Elem a) const {
    if (ell_ == 1) return a ? p_ - a : 0;
    Elem r = 0, w = 1;
    while (a) {
        Elem d = a % p_;
        r += (d ? p_ - d : 0) * w;
        w *= p_;
        a /= p_;
    }
    return r;
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::mul_poly(Elem a, Elem b) const {
    if (ell_ == 1) return static_cast<Elem>(static_cast<unsigned __int128>(a) * b % p_);
    std::uint64_t x[64] = {}, y[64] = {}, z[128] = {};
    for (unsigned i = 0; i < ell_; ++i) {
        x[i] = a % p_;
        a /= p_;
        y[i] = b % p_;
        b /= p_;
    }
    for (unsigned i = 0; i < ell_; ++i) {
        if (!x[i]) continue;
        for (unsigned j = 0; j < ell_; ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p_;
    }
    for (int k = 2 * static_cast<int>(ell_) - 2; k >= static_cast<int>(ell_); --k) {
        std::uint64_t c = z[k];
        if (!c) continue;
        z[k] = 0;
        for (unsigned i = 0; i < ell_; ++i)
            z[k - ell_ + i] = (z[k - ell_ + i] + (p_ - c) * mod_[i]) % p_;
    }
    Elem r = 0;
    for (unsigned i = ell_; i-- > 0;) r = r * p_ + z[i];
    return r;
}

Elem Field::mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (tab_) return tab_->exp[tab_->log[a] + tab_->log[b]];
    return mul_poly(a, b);
}

Elem Field::inv_poly(Elem a) const {
    // extended Euclid: s*a + t*mod = 1
    UPoly r0 = mod_, r1 = coeffs(a);
    upoly::trim(r1);
    UPoly s0{}, s1{1};
    while (upoly::degree(r1) > 0) {
        UPoly quo, rem;
        upoly::divmod(r0, r1, p_, quo, rem);
        UPoly s2 = upoly::sub(s0, upoly::mul(quo, s1, p_), p_);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    UPoly res = upoly::scale(s1, mod_inv(r1[0], p_), p_);
    res = upoly::mod(res, mod_, p_);
    res.resize(ell_, 0);
    return from_coeffs(res);
}

Elem Field::inv(Elem a) const {
    if (a == 0) throw Error(Errc::NotInvertible, "zero has no inverse");
    if (tab_) return tab_->exp[(q_ - 1 - tab_->log[a]) % (q_ - 1)];
    if (ell_ == 1) return mod_inv(a, p_);
    return inv_poly(a);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    if (tab_) {
        unsigned __int128 k = static_cast<unsigned __int128>(tab_->log[a]) * (e % (q_ - 1));
        return tab_->exp[static_cast<std::uint64_t>(k % (q_ - 1))];
    }
    Elem r = 1, x = a;
    while (e) {
        if (e & 1) r = mul_poly(r, x);
        x = mul_poly(x, x);
        e >>= 1;
    }
    return r;
}

Elem Field::frobenius(Elem a) const { return ell_ == 1 ? a : pow(a, p_); }

unsigned Field::generated_subfield_degree(Elem a) const {
    Elem x = a;
    for (unsigned d = 1; d <= ell_; ++d) {
        x = frobenius(x);
        if (x == a) return d;  // the first return is automatically a divisor of ell
    }
    return ell_;
}

UPoly Field::minimal_polynomial(Elem a) const {
    // product of (y - c) over the Frobenius orbit, computed in F_q[y]
    std::vector<Elem> poly{1};
    Elem c = a;
    do {
        std::vector<Elem> next(poly.size() + 1, 0);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] = add(next[i + 1], poly[i]);
            next[i] = sub(next[i], mul(poly[i], c));
        }
        poly = std::move(next);
        c = frobenius(c);
    } while (c != a);
    UPoly out(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) {
        if (poly[i] >= p_) throw Error(Errc::BoundViolated, "minimal polynomial left the prime field");
        out[i] = poly[i];
    }
    return out;
}

Elem Field::eval(const UPoly& f, Elem x) const {
    Elem acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = add(mul(acc, x), f[i] % p_);
    return acc;
}

std::uint64_t Field::order(Elem a) const {
    if (a == 0) throw Error(Errc::NotInvertible, "zero has no multiplicative order");
    std::uint64_t ord = q_ - 1;
    for (std::uint64_t r : qm1_factors_) {
        while (ord % r == 0 && pow(a, ord / r) == 1) ord /= r;
    }
    return ord;
}

std::vector<Elem> Field::subfield(unsigned d) const {
    if (d == 0 || ell_ % d) throw Error(Errc::NotApplicable, "subfield degree must divide ell");
    std::uint64_t sub_q = 1;
    for (unsigned i = 0; i < d; ++i) sub_q *= p_;
    std::vector<Elem> out{0};
    Elem g = pow(prim_, (q_ - 1) / (sub_q - 1));
    Elem x = 1;
    for (std::uint64_t k = 0; k + 1 < sub_q; ++k) {
        out.push_back(x);
        x = mul(x, g);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace tamexp
