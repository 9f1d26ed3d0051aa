#include <cmath>
#include <numeric>
#include <random>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "doctest.h"
#include "tamexp/error.hpp"
#include "tamexp/spectra.hpp"

using namespace tamexp;

namespace {

Perm shift(std::uint32_t V, std::uint32_t s) {
    Perm P(V);
    for (std::uint32_t v = 0; v < V; ++v) P[v] = (v + s) % V;
    return P;
}

std::vector<PointIndex> nonzero(std::uint64_t total) {
    std::vector<PointIndex> d(total - 1);
    std::iota(d.begin(), d.end(), 1);
    return d;
}

// Cholesky succeeds iff the symmetric matrix is positive definite
bool positive_definite(std::vector<std::vector<double>> A) {
    std::size_t n = A.size();
    for (std::size_t j = 0; j < n; ++j) {
        double d = A[j][j];
        for (std::size_t k = 0; k < j; ++k) d -= A[j][k] * A[j][k];
        if (d <= 0) return false;
        A[j][j] = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = A[i][j];
            for (std::size_t k = 0; k < j; ++k) s -= A[i][k] * A[j][k];
            A[i][j] = s / A[j][j];
        }
    }
    return true;
}

std::vector<std::vector<double>> shifted_angle_matrix(const std::vector<double>& alpha, double lambda) {
    std::size_t n = alpha.size();
    std::vector<std::vector<double>> A(n, std::vector<double>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        A[i][i] = 1 - lambda;
        A[i][(i + 1) % n] = A[(i + 1) % n][i] = -alpha[i];
    }
    return A;
}

}  // namespace

TEST_SUITE("spectra") {

TEST_CASE("known spectra") {
    for (std::uint32_t V : {5u, 7u, 11u}) {
        std::vector<Perm> gens;
        for (std::uint32_t s = 1; s <= (V - 1) / 2; ++s) gens.push_back(shift(V, s));
        auto g = build_schreier(gens);
        CHECK(g.degree == V - 1);
        auto d = spectral_gap(g);
        CHECK(d.lambda2 == doctest::Approx(-1.0 / (V - 1)).epsilon(1e-12));
        CHECK(d.gap == doctest::Approx(double(V) / (V - 1)).epsilon(1e-12));
    }
    for (std::uint32_t V : {6u, 17u, 40u}) {
        auto g = build_schreier({shift(V, 1)});
        CHECK(spectral_gap(g).lambda2 == doctest::Approx(std::cos(2 * M_PI / V)).epsilon(1e-12));
        GapOptions it;
        it.method = GapMethod::Iterative;
        CHECK(spectral_gap(g, it).lambda2 == doctest::Approx(std::cos(2 * M_PI / V)).epsilon(1e-10));
    }
}

TEST_CASE("identity generator") {
    auto g = build_schreier({identity_perm(6)});
    CHECK_FALSE(is_connected(g));
    auto d = spectral_gap(g);
    CHECK(d.lambda2 == doctest::Approx(1.0));
    CHECK(d.gap == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_FALSE(d.connected);
    GapOptions it;
    it.method = GapMethod::Iterative;
    CHECK(spectral_gap(g, it).gap == 0);
}

TEST_CASE("expander graphs") {
    Field F3 = make_field(3, 1);
    auto g = build_schreier(F3, 3, nonzero(27), expander_generators_3d());
    CHECK(g.V == 26);
    CHECK(g.degree == 6);
    CHECK(is_connected(g));
    auto g7 = build_schreier(F3, 7, nonzero(2187), expander_generators_7d());
    CHECK(g7.V == 2186);
    CHECK(g7.degree == 4);
    GapOptions it;
    it.method = GapMethod::Iterative;
    auto a = spectral_gap(g7), b = spectral_gap(g7, it);
    CHECK(std::abs(a.lambda2 - b.lambda2) <= 1e-8);
    CHECK(b.residual <= 1e-10);
    CHECK(a.gap > 0);

    Field F5 = make_field(5, 1);
    auto g5 = build_schreier(F5, 3, nonzero(125), expander_generators_3d());
    CHECK(std::abs(spectral_gap(g5).lambda2 - spectral_gap(g5, it).lambda2) <= 1e-8);

    std::vector<PointIndex> all(27);
    std::iota(all.begin(), all.end(), 0);
    std::vector<PointIndex> partial(all.begin() + 1, all.begin() + 10);
    CHECK_THROWS_AS(build_schreier(F3, 3, partial, expander_generators_3d()), Error);
}

TEST_CASE("graph structure") {
    Field F5 = make_field(5, 1);
    auto g = build_schreier(F5, 3, nonzero(125), expander_generators_3d());
    // regular and symmetric: u appears in v's list as often as v in u's
    bool symmetric = true;
    for (std::uint32_t v = 0; v < g.V && symmetric; ++v) {
        for (std::uint32_t d = 0; d < g.degree; ++d) {
            std::uint32_t u = g.nbrs[v * g.degree + d];
            auto cnt = [&](std::uint32_t from, std::uint32_t to) {
                return std::count(g.nbrs.begin() + from * g.degree, g.nbrs.begin() + (from + 1) * g.degree, to);
            };
            symmetric &= cnt(v, u) == cnt(u, v);
        }
    }
    CHECK(symmetric);
    CHECK(g.nbrs.size() == std::size_t{g.V} * g.degree);
}

TEST_CASE("second eigenvalue below one iff connected") {
    std::mt19937_64 rng(9);
    int connected = 0, disconnected = 0;
    for (int trial = 0; trial < 60; ++trial) {
        std::uint32_t V = 8 + trial % 5;
        std::vector<Perm> gens;
        for (int k = 0; k < 1 + trial % 2; ++k) {
            Perm P = identity_perm(V);
            std::swap(P[rng() % V], P[rng() % V]);
            std::swap(P[rng() % V], P[rng() % V]);
            gens.push_back(P);
        }
        auto g = build_schreier(gens);
        // union-find over the generator edges
        std::vector<std::uint32_t> parent(V);
        std::iota(parent.begin(), parent.end(), 0u);
        std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
            return parent[x] == x ? x : parent[x] = find(parent[x]);
        };
        for (const auto& P : gens)
            for (std::uint32_t v = 0; v < V; ++v) parent[find(v)] = find(P[v]);
        std::set<std::uint32_t> roots;
        for (std::uint32_t v = 0; v < V; ++v) roots.insert(find(v));
        bool conn = roots.size() == 1;
        CHECK(conn == is_connected(g));
        CHECK(conn == (spectral_gap(g).lambda2 < 1 - 1e-9));
        (conn ? connected : disconnected)++;
    }
    CHECK(disconnected > 0);
    std::vector<Perm> cyc{shift(9, 1), shift(9, 3)};
    CHECK(spectral_gap(build_schreier(cyc)).lambda2 < 1 - 1e-9);
}

TEST_CASE("angle matrix examples") {
    auto r = angle_matrix_min_eig({0.4, 0.4, 0.4, 0.4});
    CHECK(r.lambda_min == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(r.M == doctest::Approx(0.8));
    CHECK(r.equality_case);

    std::vector<double> beta_case{0.4, 0.4, 0.4, 0.3};
    auto s = angle_matrix_min_eig(beta_case);
    CHECK_FALSE(s.equality_case);
    CHECK(s.lambda_min > s.bound + 1e-10);
    CHECK(s.lambda_min > 0);
    CHECK(s.lambda_min >= beta_case_bound(0.4, 0.3) - 1e-12);

    CHECK_THROWS_AS(angle_matrix_min_eig({0.3, 0.3}), Error);
    CHECK_THROWS_AS(angle_matrix_min_eig({0.3, -0.1, 0.2}), Error);
}

TEST_CASE("angle matrix bound on random vectors") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 2000; ++trial) {
        std::size_t n = 3 + trial % 10;
        std::vector<double> a(n);
        for (auto& x : a) x = u(rng) * 0.5 + 1e-6;
        if (trial % 7 == 0) {
            for (std::size_t i = 2; i < n; ++i) a[i] = a[i - 2];
            if (n % 2) std::fill(a.begin(), a.end(), a[0]);
        }
        auto r = angle_matrix_min_eig(a);
        CHECK(r.lambda_min >= r.bound - 1e-12);
        CHECK(r.equality_case == (std::abs(r.lambda_min - r.bound) <= 1e-10));
        CHECK(positive_definite(shifted_angle_matrix(a, r.lambda_min - 1e-9)));
        CHECK_FALSE(positive_definite(shifted_angle_matrix(a, r.lambda_min + 1e-9)));
    }
}

TEST_CASE("beta case") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0, 1);
    int checked = 0;
    while (checked < 300) {
        double alpha = u(rng) * 0.5, beta = u(rng);
        if (!(alpha * alpha < (1 - alpha) * (1 - beta))) continue;
        std::size_t n = 4 + checked % 6;
        std::vector<double> a(n, alpha);
        a.back() = beta;
        auto r = angle_matrix_min_eig(a);
        CHECK(r.lambda_min > 0);
        CHECK(r.lambda_min >= beta_case_bound(alpha, beta) - 1e-12);
        ++checked;
    }
}

TEST_CASE("kazhdan bound") {
    using boost::multiprecision::cpp_dec_float_50;
    auto r = kazhdan_bound(11, {1, 1, 2});
    cpp_dec_float_50 p = 11;
    cpp_dec_float_50 M = sqrt(cpp_dec_float_50(1) / p) + sqrt(cpp_dec_float_50(2) / p);
    cpp_dec_float_50 bound = sqrt((1 - M) / 3);
    REQUIRE(r.bound);
    CHECK(std::abs(r.M - M.convert_to<double>()) < 1e-14);
    CHECK(std::abs(*r.bound - bound.convert_to<double>()) < 1e-12);
    CHECK(*r.bound == doctest::Approx(0.301157).epsilon(1e-6));
    CHECK(r.p_exceeds_4max);

    auto bad = kazhdan_bound(5, {2, 2, 2});
    CHECK(bad.M == doctest::Approx(2 * std::sqrt(0.4)));
    CHECK_FALSE(bad.bound);
    CHECK_FALSE(bad.p_exceeds_4max);

    auto big = kazhdan_bound(1000003, {1, 1, 1});
    CHECK(*big.bound == doctest::Approx(1 / std::sqrt(3.0)).epsilon(2e-3));
    CHECK(*big.bound < 1 / std::sqrt(3.0));
}

}
