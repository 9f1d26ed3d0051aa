#include "tamexp/interpolate.hpp"

#include "tamexp/error.hpp"

namespace tamexp {

namespace {

// nu = sum c_i mu^i with c_i in F_p, i < deg F_p(mu)
UPoly power_basis_expansion(const Field& F, Elem mu, Elem nu) {
    const std::uint64_t p = F.p();
    const unsigned l = F.ell();
    unsigned d = F.generated_subfield_degree(mu);
    if (d % F.generated_subfield_degree(nu) != 0)
        throw Error(Errc::ValueOutsideSubfield, "value does not lie in the field generated by its point");
    // augmented l x (d+1) system over F_p
    std::vector<std::vector<std::uint64_t>> m(l, std::vector<std::uint64_t>(d + 1, 0));
    Elem pw = 1;
    for (unsigned col = 0; col < d; ++col) {
        auto cs = F.coeffs(pw);
        for (unsigned row = 0; row < l; ++row) m[row][col] = cs[row];
        pw = F.mul(pw, mu);
    }
    auto rhs = F.coeffs(nu);
    for (unsigned row = 0; row < l; ++row) m[row][d] = rhs[row];

    std::vector<int> pivot_col;
    unsigned rank = 0;
    for (unsigned col = 0; col < d && rank < l; ++col) {
        unsigned piv = rank;
        while (piv < l && !m[piv][col]) ++piv;
        if (piv == l) continue;
        std::swap(m[piv], m[rank]);
        std::uint64_t inv = mod_inv(m[rank][col], p);
        for (auto& v : m[rank]) v = v * inv % p;
        for (unsigned row = 0; row < l; ++row) {
            if (row == rank || !m[row][col]) continue;
            std::uint64_t f = m[row][col];
            for (unsigned c = 0; c <= d; ++c) m[row][c] = (m[row][c] + (p - f) * m[rank][c]) % p;
        }
        pivot_col.push_back(static_cast<int>(col));
        ++rank;
    }
    for (unsigned row = rank; row < l; ++row)
        if (m[row][d]) throw Error(Errc::ValueOutsideSubfield, "value does not lie in the field generated by its point");
    UPoly f(d, 0);
    for (unsigned r = 0; r < rank; ++r) f[pivot_col[r]] = m[r][d];
    upoly::trim(f);
    return f;
}

UPoly solve(const Field& F, const std::vector<Elem>& mus, const std::vector<Elem>& nus,
            const std::vector<UPoly>& minpolys) {
    const std::uint64_t p = F.p();
    std::size_t k = mus.size();
    if (k == 1) return power_basis_expansion(F, mus[0], nus[0]);

    std::vector<Elem> head_mu(mus.begin(), mus.end() - 1), head_nu(k - 1);
    std::vector<UPoly> head_min(minpolys.begin(), minpolys.end() - 1);
    const UPoly& fk = minpolys[k - 1];
    for (std::size_t i = 0; i + 1 < k; ++i) head_nu[i] = F.div(nus[i], F.eval(fk, mus[i]));
    UPoly phi = solve(F, head_mu, head_nu, head_min);

    UPoly prod{1};
    for (std::size_t i = 0; i + 1 < k; ++i) prod = upoly::mul(prod, minpolys[i], p);
    Elem denom = F.eval(prod, mus[k - 1]);
    UPoly psi = solve(F, {mus[k - 1]}, {F.div(nus[k - 1], denom)}, {fk});

    UPoly f = upoly::add(upoly::mul(fk, phi, p), upoly::mul(prod, psi, p), p);
    upoly::trim(f);
    return f;
}

}  // namespace

UPoly interpolate(const Field& F, const std::vector<Elem>& mus, const std::vector<Elem>& nus) {
    if (mus.size() != nus.size()) throw Error(Errc::DimensionMismatch, "point and value lists differ in length");
    if (mus.empty()) return {};
    std::vector<UPoly> minpolys;
    for (Elem mu : mus) {
        UPoly m = F.minimal_polynomial(mu);
        for (const auto& prev : minpolys)
            if (prev == m) throw Error(Errc::ClashingMinimalPolynomials, "two points share a minimal polynomial");
        minpolys.push_back(std::move(m));
    }
    for (std::size_t i = 0; i < mus.size(); ++i)
        if (F.generated_subfield_degree(mus[i]) % F.generated_subfield_degree(nus[i]) != 0)
            throw Error(Errc::ValueOutsideSubfield, "value does not lie in the field generated by its point");
    return solve(F, mus, nus, minpolys);
}

}  // namespace tamexp
