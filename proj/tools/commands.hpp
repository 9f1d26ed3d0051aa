#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tamexp::cli {

// rejected before any computation; exit code 3
struct BadInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::vector<std::uint64_t> p;
    std::optional<unsigned> n;
    std::vector<std::uint64_t> e;
    unsigned ell = 1;
    unsigned k = 2;
    unsigned trials = 200;
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> budget;
    std::string format;
    std::string out;
    std::string method = "iterative";
    double tol = 1e-10;
    std::string thm15;

    std::string domain;
    std::optional<int> orbit;
    unsigned i = 1, j = 2;
    std::uint64_t t = 1;
    std::uint64_t r = 1;
    std::vector<std::uint64_t> poly;
    std::optional<unsigned> grid_ell;
    std::uint64_t samples = 10'000;
    bool emit_endo = false;
    unsigned c = 2;
    std::uint64_t max_q = 625;
    std::uint64_t max_N = 4;
    std::uint64_t instances = 1000;
};

int cmd_certify_alt(const RunConfig& cfg);
int cmd_orbits(const RunConfig& cfg);
int cmd_gamma_classes(const RunConfig& cfg);
int cmd_synth(const RunConfig& cfg);
int cmd_gap(const RunConfig& cfg);
int cmd_kazhdan(const RunConfig& cfg);
int cmd_gamma_group(const RunConfig& cfg);
int cmd_verify_lemmas(const RunConfig& cfg);
int cmd_probe(const RunConfig& cfg);

}  // namespace tamexp::cli
