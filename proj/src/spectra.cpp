#include "tamexp/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "tamexp/error.hpp"
#include "tamexp/parallel.hpp"

namespace tamexp {

SchreierGraph build_schreier(const std::vector<Perm>& gens) {
    if (gens.empty()) throw Error(Errc::DimensionMismatch, "no generators");
    SchreierGraph g;
    g.V = static_cast<std::uint32_t>(gens[0].size());
    g.degree = static_cast<std::uint32_t>(2 * gens.size());
    std::vector<Perm> inv;
    for (const auto& p : gens) {
        if (p.size() != g.V || !is_permutation(p)) throw Error(Errc::DimensionMismatch, "generators must be permutations of one domain");
        inv.push_back(inverse(p));
    }
    g.nbrs.resize(std::size_t{g.V} * g.degree);
    parallel_for(0, g.V, [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t v = lo; v < hi; ++v) {
            std::size_t base = v * g.degree;
            for (std::size_t k = 0; k < gens.size(); ++k) {
                g.nbrs[base + 2 * k] = gens[k][v];
                g.nbrs[base + 2 * k + 1] = inv[k][v];
            }
        }
    });
    return g;
}

SchreierGraph build_schreier(const Field& F, unsigned n, const std::vector<PointIndex>& domain,
                             const std::vector<Word>& gens) {
    std::vector<Perm> perms;
    for (const auto& w : gens) {
        Perm P(domain.size());
        Point a(n);
        for (std::size_t k = 0; k < domain.size(); ++k) {
            decode_point(F, domain[k], a.data(), n);
            apply_word(F, w, a.data(), n);
            PointIndex y = encode_point(F, a.data(), n);
            auto it = std::lower_bound(domain.begin(), domain.end(), y);
            if (it == domain.end() || *it != y)
                throw Error(Errc::NotClosed, "generator " + format_word(w) + " leaves the domain");
            P[k] = static_cast<std::uint32_t>(it - domain.begin());
        }
        perms.push_back(std::move(P));
    }
    return build_schreier(perms);
}

bool is_connected(const SchreierGraph& g) {
    if (g.V == 0) return true;
    std::vector<char> seen(g.V, 0);
    std::vector<std::uint32_t> queue{0};
    seen[0] = 1;
    for (std::size_t k = 0; k < queue.size(); ++k) {
        std::uint32_t v = queue[k];
        for (std::uint32_t d = 0; d < g.degree; ++d) {
            std::uint32_t u = g.nbrs[std::size_t{v} * g.degree + d];
            if (!seen[u]) seen[u] = 1, queue.push_back(u);
        }
    }
    return queue.size() == g.V;
}

std::string method_name(GapMethod m) { return m == GapMethod::Dense ? "dense" : "iterative"; }

namespace {

void matvec(const SchreierGraph& g, const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    y.resize(g.V);
    double w = 1.0 / g.degree;
    parallel_for(0, g.V, [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t v = lo; v < hi; ++v) {
            double s = 0;
            const std::uint32_t* nb = &g.nbrs[v * g.degree];
            for (std::uint32_t d = 0; d < g.degree; ++d) s += x[nb[d]];
            y[static_cast<Eigen::Index>(v)] = s * w;
        }
    }, 8192);
}

void deflate(Eigen::VectorXd& x) { x.array() -= x.mean(); }

GapResult dense_gap(const SchreierGraph& g) {
    if (g.V > 4000) throw Error(Errc::BudgetExceeded, "dense eigensolve limited to 4000 vertices");
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(g.V, g.V);
    double w = 1.0 / g.degree;
    for (std::uint32_t v = 0; v < g.V; ++v)
        for (std::uint32_t d = 0; d < g.degree; ++d) A(v, g.nbrs[std::size_t{v} * g.degree + d]) += w;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
    GapResult r;
    r.method = GapMethod::Dense;
    r.lambda2 = es.eigenvalues()[g.V - 2];
    r.gap = 1 - r.lambda2;
    r.connected = is_connected(g);
    return r;
}

GapResult lanczos_gap(const SchreierGraph& g, const GapOptions& opt) {
    GapResult r;
    r.method = GapMethod::Iterative;
    r.connected = is_connected(g);
    if (!r.connected) {
        r.lambda2 = 1;
        r.gap = 0;
        return r;
    }
    const Eigen::Index V = g.V;
    const unsigned k = std::min<unsigned>(opt.krylov, g.V - 1);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> normal;
    Eigen::VectorXd x(V);
    for (Eigen::Index i = 0; i < V; ++i) x[i] = normal(rng);
    deflate(x);
    x.normalize();

    Eigen::MatrixXd Q(V, k + 1);
    Eigen::VectorXd w, Ax;
    for (unsigned restart = 0; restart <= opt.max_restarts; ++restart) {
        std::vector<double> a, b;
        Q.col(0) = x;
        unsigned m = 0;
        for (; m < k; ++m) {
            matvec(g, Q.col(m), w);
            a.push_back(Q.col(m).dot(w));
            for (int pass = 0; pass < 2; ++pass) {
                deflate(w);
                Eigen::VectorXd h = Q.leftCols(m + 1).transpose() * w;
                w -= Q.leftCols(m + 1) * h;
            }
            double beta = w.norm();
            if (beta < 1e-13) {
                ++m;
                break;
            }
            b.push_back(beta);
            Q.col(m + 1) = w / beta;
        }
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
        for (unsigned i = 0; i < m; ++i) {
            T(i, i) = a[i];
            if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = b[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        double theta = es.eigenvalues()[m - 1];
        x = Q.leftCols(m) * es.eigenvectors().col(m - 1);
        deflate(x);
        x.normalize();
        matvec(g, x, Ax);
        theta = x.dot(Ax);
        r.residual = (Ax - theta * x).norm();
        r.lambda2 = theta;
        r.gap = 1 - theta;
        if (r.residual <= opt.tol) return r;
    }
    throw Error(Errc::NoConvergence, "residual " + std::to_string(r.residual) + " above tolerance");
}

}  // namespace

GapResult spectral_gap(const SchreierGraph& g, const GapOptions& opt) {
    if (g.V < 2) throw Error(Errc::NotApplicable, "needs at least two vertices");
    return opt.method == GapMethod::Dense ? dense_gap(g) : lanczos_gap(g, opt);
}

AngleEig angle_matrix_min_eig(const std::vector<double>& alpha) {
    const std::size_t n = alpha.size();
    if (n < 3) throw Error(Errc::NotApplicable, "the cyclic matrix needs n >= 3");
    for (double a : alpha)
        if (!(a > 0)) throw Error(Errc::BadExponent, "alpha entries must be positive");
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    AngleEig r;
    r.equality_case = true;
    for (std::size_t i = 0; i < n; ++i) {
        auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>((i + 1) % n);
        A(a, b) = A(b, a) = -alpha[i];
        r.M = std::max(r.M, alpha[i] + alpha[(i + 1) % n]);
        r.equality_case &= alpha[i] == alpha[(i + 2) % n];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
    r.lambda_min = es.eigenvalues()[0];
    r.bound = 1 - r.M;
    return r;
}

double beta_case_bound(double alpha, double beta) {
    double a = 1 - alpha, b = 1 - beta;
    double root = (a + b - std::sqrt((a - b) * (a - b) + 4 * alpha * alpha)) / 2;
    return std::min(1 - 2 * alpha, root);
}

KazhdanReport kazhdan_bound(std::uint64_t p, const std::vector<std::uint64_t>& e) {
    if (e.size() < 2) throw Error(Errc::DimensionMismatch, "needs at least two exponents");
    if (p < 2) throw Error(Errc::NonPrime, "p must be at least 2");
    KazhdanReport r;
    r.p = p;
    r.e = e;
    double pd = static_cast<double>(p);
    for (std::size_t i = 0; i < e.size(); ++i) {
        double s = std::sqrt(static_cast<double>(e[i]) / pd) + std::sqrt(static_cast<double>(e[(i + 1) % e.size()]) / pd);
        r.M = std::max(r.M, s);
    }
    if (r.M < 1) r.bound = std::sqrt((1 - r.M) / static_cast<double>(e.size()));
    r.p_exceeds_4max = p > 4 * *std::max_element(e.begin(), e.end());
    return r;
}

}  // namespace tamexp
