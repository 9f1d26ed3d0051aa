#include <cstdlib>
#include <functional>
#include <iostream>
#include <new>

#include "CLI11.hpp"
#include "commands.hpp"
#include "tamexp/error.hpp"
#include "tamexp/version.hpp"

using namespace tamexp;
using namespace tamexp::cli;

namespace {

int exit_code(Errc c) {
    switch (c) {
    case Errc::BudgetExceeded:
    case Errc::FieldTooLarge:
    case Errc::DegreeOverflow:
    case Errc::NoConvergence:
        return 2;
    case Errc::NonPrime:
    case Errc::DegreeZero:
    case Errc::DimensionMismatch:
    case Errc::BadExponent:
    case Errc::BadIndex:
    case Errc::ParseError:
        return 3;
    default:
        return 1;
    }
}

void field_options(CLI::App* sub, RunConfig& cfg, bool with_ell = true) {
    sub->add_option("--p", cfg.p, "prime")->delimiter(',')->required();
    sub->add_option("--n", cfg.n, "number of variables, checked against --e");
    sub->add_option("--e", cfg.e, "exponents e_1,...,e_n")->delimiter(',');
    if (with_ell) sub->add_option("--ell", cfg.ell, "extension degree of the point field");
}

void common_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--format", cfg.format, "json, csv or dot");
    sub->add_option("--out", cfg.out, "output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tame automorphism groups over finite fields"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    RunConfig cfg;
    unsigned threads = 0;
    app.add_option("--threads", threads, "worker threads (TAMEXP_THREADS takes precedence)");
    std::function<int(const RunConfig&)> run;

    auto bind = [&](CLI::App* sub, int (*fn)(const RunConfig&)) {
        common_options(sub, cfg);
        sub->callback([&run, fn] { run = fn; });
    };

    auto* certify = app.add_subcommand("certify-alt", "certify that the generators induce an alternating group");
    field_options(certify, cfg);
    certify->add_option("--thm15", cfg.thm15, "use the explicit 3- (i) or 7-variable (ii) generators")
        ->check(CLI::IsMember({"i", "ii"}));
    certify->add_option("--domain", cfg.domain, "nonzero, big-orbit or gamma-classes")
        ->check(CLI::IsMember({"nonzero", "big-orbit", "gamma-classes"}));
    certify->add_option("--budget", cfg.budget, "largest permutation degree");
    bind(certify, cmd_certify_alt);

    auto* orbits = app.add_subcommand("orbits", "orbits of the group on F_{p^ell}^n");
    field_options(orbits, cfg);
    orbits->add_option("--orbit", cfg.orbit, "orbit index for DOT output");
    bind(orbits, cmd_orbits);

    auto* classes = app.add_subcommand("gamma-classes", "Gamma-classes of the largest orbit");
    field_options(classes, cfg);
    bind(classes, cmd_gamma_classes);

    auto* synth = app.add_subcommand("synth", "synthesize and verify a transvection word");
    field_options(synth, cfg, false);
    synth->add_option("--i", cfg.i, "target coordinate (1-based)");
    synth->add_option("--j", cfg.j, "source coordinate (1-based)");
    synth->add_option("--t", cfg.t, "exponent");
    synth->add_option("--r", cfg.r, "coefficient");
    synth->add_option("--poly", cfg.poly, "coefficients c0,c1,... of P")->delimiter(',');
    synth->add_option("--grid-ell", cfg.grid_ell, "verification field degree");
    synth->add_option("--samples", cfg.samples, "random points when the grid is not exhausted");
    synth->add_option("--budget", cfg.budget, "word length budget");
    synth->add_flag("--emit-endo", cfg.emit_endo, "include the polynomial map of the word");
    bind(synth, cmd_synth);

    auto* gap = app.add_subcommand("gap", "spectral gaps of the explicit Schreier graphs");
    gap->add_option("--p", cfg.p, "primes to sweep")->delimiter(',')->required();
    gap->add_option("--thm15", cfg.thm15, "3- (i) or 7-variable (ii) generators")->check(CLI::IsMember({"i", "ii"}));
    gap->add_option("--method", cfg.method, "dense or iterative")->check(CLI::IsMember({"dense", "iterative"}));
    gap->add_option("--tol", cfg.tol, "residual tolerance for the iterative method");
    gap->add_option("--budget", cfg.budget, "largest vertex count");
    bind(gap, cmd_gap);

    auto* kazhdan = app.add_subcommand("kazhdan", "lower bound for the Kazhdan constant");
    field_options(kazhdan, cfg, false);
    bind(kazhdan, cmd_kazhdan);

    auto* ggroup = app.add_subcommand("gamma-group", "structure of R[x]_{<=c} semidirect R over F_p");
    ggroup->add_option("--p", cfg.p, "prime")->required();
    ggroup->add_option("--c", cfg.c, "degree bound");
    bind(ggroup, cmd_gamma_group);

    auto* lemmas = app.add_subcommand("verify-lemmas", "exhaustive small-field checks of the toolbox lemmas");
    lemmas->add_option("--max-q", cfg.max_q, "largest field size");
    lemmas->add_option("--max-n", cfg.max_N, "largest N");
    lemmas->add_option("--instances", cfg.instances, "random interpolation instances");
    bind(lemmas, cmd_verify_lemmas);

    auto* probe = app.add_subcommand("probe", "map random Gamma-class tuples to standard points");
    field_options(probe, cfg);
    probe->add_option("--k", cfg.k, "tuple size");
    probe->add_option("--trials", cfg.trials, "number of tuples");
    bind(probe, cmd_probe);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }
    if (threads) setenv("TAMEXP_THREADS", std::to_string(threads).c_str(), 0);

    try {
        return run(cfg);
    } catch (const BadInput& e) {
        std::cerr << "bad input: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return exit_code(e.code());
    } catch (const std::bad_alloc&) {
        std::cerr << "out of memory\n";
        return 2;
    }
}
