#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tamexp/orbits.hpp"

namespace tamexp {

// regular multigraph; neighbours of v are nbrs[v*degree .. (v+1)*degree)
struct SchreierGraph {
    std::uint32_t V = 0;
    std::uint32_t degree = 0;
    std::vector<std::uint32_t> nbrs;
};

// edges v -> g v and v -> g^{-1} v for every generator
SchreierGraph build_schreier(const std::vector<Perm>& gens);
// the same on a sorted point set; NotClosed if a generator leaves it
SchreierGraph build_schreier(const Field& F, unsigned n, const std::vector<PointIndex>& domain,
                             const std::vector<Word>& gens);
bool is_connected(const SchreierGraph& g);

enum class GapMethod { Dense, Iterative };
std::string method_name(GapMethod m);

struct GapOptions {
    GapMethod method = GapMethod::Dense;
    double tol = 1e-10;           // residual bound for the iterative method
    unsigned krylov = 200;        // Lanczos steps per restart
    unsigned max_restarts = 100;
};

struct GapResult {
    double lambda2 = 1;   // second largest eigenvalue of the normalized adjacency
    double gap = 0;       // 1 - lambda2
    double residual = 0;  // |Ax - lambda2 x| for the returned unit vector (iterative only)
    bool connected = true;
    GapMethod method = GapMethod::Dense;
};

// dense limited to 4000 vertices; the iterative method throws NoConvergence when the cap is hit
GapResult spectral_gap(const SchreierGraph& g, const GapOptions& opt = {});

struct AngleEig {
    double lambda_min = 0;
    double M = 0;              // max alpha_i + alpha_{i+1}, cyclic
    double bound = 0;          // 1 - M
    bool equality_case = false;  // alpha_i = alpha_{i+2} for all i
};

// the cyclic matrix with unit diagonal and -alpha_i at (i, i+1); n >= 3
AngleEig angle_matrix_min_eig(const std::vector<double>& alpha);

// alpha repeated n-1 times then beta: the largest lambda with lambda <= 1 - 2 alpha,
// lambda < 1 - beta and alpha^2 <= (1 - alpha - lambda)(1 - beta - lambda)
double beta_case_bound(double alpha, double beta);

struct KazhdanReport {
    std::uint64_t p = 0;
    std::vector<std::uint64_t> e;
    double M = 0;  // max sqrt(e_i/p) + sqrt(e_{i+1}/p)
    std::optional<double> bound;  // sqrt((1 - M)/n) when M < 1
    bool p_exceeds_4max = false;
};

KazhdanReport kazhdan_bound(std::uint64_t p, const std::vector<std::uint64_t>& e);

}  // namespace tamexp
