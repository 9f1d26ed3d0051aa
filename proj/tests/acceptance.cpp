#include <sys/resource.h>
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "json.hpp"
#include "tamexp/error.hpp"
#include "tamexp/gamma.hpp"
#include "tamexp/orbits.hpp"
#include "tamexp/permgrp.hpp"
#include "tamexp/probe.hpp"
#include "tamexp/spectra.hpp"
#include "tamexp/synth.hpp"

using namespace tamexp;
using json = nlohmann::json;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

json run_cli(const std::string& args, int& code) {
    std::string cmd = std::string(TAMEXP_CLI_PATH) + " " + args;
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) throw std::runtime_error("cannot start " + cmd);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, got);
    int status = pclose(f);
    code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return json::parse(out);
}

std::string half_factorial(std::uint32_t n) {
    BigInt f = 1;
    for (std::uint32_t k = 2; k <= n; ++k) f *= k;
    return BigInt(f / 2).str();
}

double seconds_since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string fmt(double x, int prec = 3) {
    std::ostringstream os;
    os.precision(prec);
    os << x;
    return os.str();
}

std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = lo; p <= hi; ++p)
        if (is_prime(p)) out.push_back(p);
    return out;
}

Outcome alt_certification() {
    std::string detail;
    bool ok = true;
    struct Case {
        std::string args;
        std::uint32_t degree;
        double limit;
    };
    for (const Case& c : {Case{"certify-alt --p 3 --n 3 --e 1,1,2", 26, 1}, Case{"certify-alt --thm15 i --p 3", 26, 1},
                          Case{"certify-alt --thm15 i --p 5", 124, 15}, Case{"certify-alt --thm15 i --p 7", 342, 120}}) {
        auto t = std::chrono::steady_clock::now();
        int code = 0;
        json j = run_cli(c.args, code);
        double s = seconds_since(t);
        bool good = code == 0 && j["verdict"] == "Alt" && j["degree"] == c.degree &&
                    j["order"].get<std::string>() == half_factorial(c.degree) && s < c.limit;
        ok &= good;
        detail += " Alt(" + std::to_string(c.degree) + ")" + (good ? "" : "!") + " " + fmt(s) + "s;";
    }
    return {ok, detail};
}

Outcome degree_four() {
    Field F = make_field(3, 1);
    auto gens = expander_generators_7d();
    const Word &rho = gens[0], &gamma = gens[1];
    std::vector<Perm> perms;
    for (const auto& w : gens) perms.push_back(nonzero_action(F, w, 7));
    auto t = std::chrono::steady_clock::now();
    StabChain chain = schreier_sims(perms);
    AltCertificate cert = certify_alternating(chain, perms);
    double s = seconds_since(t);
    bool alt = cert.verdict == Verdict::Alt && cert.degree == 2186 && cert.order.str() == half_factorial(2186);

    // words compose like ring automorphisms; an automorphism acts on points through its inverse
    Word tau = commutator(gamma, concat(concat(rho, gamma), inverse(rho)));
    Word tau_on_points = inverse(tau);
    std::uint64_t plus = 0, minus = 0, total = point_count(F, 7);
    for (PointIndex x = 0; x < total; ++x) {
        Point a = decode_point(F, x, 7);
        Point want = a;
        want[0] = F.add(a[0], a[2]);
        plus += apply_word(F, tau_on_points, a) == want;
        want[0] = F.sub(a[0], a[2]);
        minus += apply_word(F, tau, a) == want;
    }
    bool ok = alt && plus == total && minus == total && s < 600;
    return {ok, " Alt(2186) " + std::string(alt ? "certified" : "NOT certified") + " in " + fmt(s) + "s; tau = x1 + x3 on " +
                    std::to_string(plus) + "/" + std::to_string(total) + " points (the word itself is x1 - x3 on " +
                    std::to_string(minus) + ")"};
}

Outcome three_orbits(OrbitPartition& part) {
    auto t = std::chrono::steady_clock::now();
    part = orbit_partition(make_params(5, {1, 1, 2}), 3);
    double s = seconds_since(t);
    std::vector<std::uint64_t> sizes;
    for (const auto& o : part.orbits) sizes.push_back(o.size);
    struct rusage ru {};
    getrusage(RUSAGE_SELF, &ru);
    double mb = ru.ru_maxrss / 1024.0;
    bool ok = sizes == std::vector<std::uint64_t>{1, 124, 1953000} && part.exhaustive && s < 300 && mb < 2048;
    std::string list;
    for (auto x : sizes) list += " " + std::to_string(x);
    return {ok, " sizes" + list + " in " + fmt(s) + "s, peak " + fmt(mb, 4) + " MB"};
}

Outcome gamma_class_count(const OrbitPartition& part) {
    Field F = make_field(5, 3);
    GammaSpec gamma = make_gamma_spec(F, make_params(5, {1, 1, 2}).grading);
    auto members = part.members(part.orbits.size() - 1);
    GammaClasses cls = gamma_classes(F, 3, members, gamma);
    std::uint64_t expected = (1953125 - 125) / 3;
    bool ok = cls.class_count == expected && cls.histogram.size() == 1 && cls.histogram.count(3) &&
              cls.histogram.at(3) == expected;
    return {ok, " " + std::to_string(cls.class_count) + " classes, expected " + std::to_string(expected) +
                    (cls.histogram.size() == 1 ? ", all of size " + std::to_string(cls.histogram.begin()->first) : ", mixed sizes")};
}

Outcome transitivity() {
    bool ok = true;
    std::string detail;
    for (auto [p, need] : std::vector<std::pair<std::uint64_t, unsigned>>{{5, 4}, {7, 6}}) {
        GroupParams g = make_params(p, {1, 1, 2});
        Field F = make_field(p, 1);
        std::vector<Perm> perms;
        for (const auto& l : standard_generators(g)) perms.push_back(nonzero_action(F, Word{l}, 3));
        unsigned t = schreier_sims(perms).transitivity_degree();
        ok &= t >= need;
        detail += " p=" + std::to_string(p) + ": " + std::to_string(t) + "-transitive (need " + std::to_string(need) + ");";
    }
    return {ok, detail};
}

Outcome synthesis() {
    GroupParams g = make_params(5, {1, 1, 2});
    SynthOptions opt;
    opt.grid_ell = 2;
    int passed = 0, total = 0;
    for (std::uint64_t t = 1; t <= 4; ++t)
        for (Elem r = 1; r < 5; ++r) {
            SynthCert c = synth_transvection(g, 0, 1, t, r, opt);
            ++total;
            passed += c.verified && c.exhaustive && c.points_checked == 15625;
        }
    SynthCert big = synth_transvection(make_params(23, {2, 2, 2}), 0, 1, 9, 1, opt);
    bool big_ok = big.verified && big.points_checked >= 10000 && big.symbolic_checked;
    return {passed == total && big_ok, " " + std::to_string(passed) + "/" + std::to_string(total) +
                                           " exhaustive on F_25^3; p=23 t=9: " + std::to_string(big.points_checked) +
                                           " sampled points on " + big.grid + (big.symbolic_checked ? " + symbolic" : "") +
                                           (big_ok ? " verified" : " FAILED")};
}

Outcome nilpotent_structure() {
    bool ok = true;
    std::string detail;
    auto t = std::chrono::steady_clock::now();
    for (auto [c, p] : std::vector<std::pair<unsigned, std::uint64_t>>{{2, 5}, {3, 5}, {2, 7}}) {
        GammaStructure s = gamma_structure(c, p);
        std::uint64_t order = 1;
        for (unsigned k = 0; k < c + 2; ++k) order *= p;
        bool good = s.order == order && s.nilpotency_class == c + 1 && s.center_order == p && s.center_is_top_layer &&
                    s.generated_by_x0_y && check_commutator_formula(GammaGroup(c, p));
        ok &= good;
        detail += " (c,p)=(" + std::to_string(c) + "," + std::to_string(p) + ") order " + std::to_string(s.order) + " class " +
                  std::to_string(s.nilpotency_class) + (good ? "" : " FAILED") + ";";
    }
    double s = seconds_since(t);
    return {ok && s < 60, detail + " " + fmt(s) + "s"};
}

Outcome matrix_criterion() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0, 1);
    std::uint64_t below = 0, equality_wrong = 0, equality_cases = 0, random_cases = 0, beta_cases = 0, beta_bad = 0;
    for (int trial = 0; trial < 100000; ++trial) {
        std::size_t n = 3 + trial % 10;
        std::vector<double> a(n);
        bool forced = trial % 10 == 0;
        auto adjacent_max = [&] {
            double M = 0;
            for (std::size_t i = 0; i < n; ++i) M = std::max(M, a[i] + a[(i + 1) % n]);
            return M;
        };
        if (forced) {
            double x = u(rng), y = u(rng) * (1 - x);
            for (std::size_t i = 0; i < n; ++i) a[i] = (n % 2 == 1 || i % 2 == 0) ? x : y;
            if (n % 2 == 1) y = x;
            if (!(x > 0 && y > 0 && adjacent_max() < 1)) {
                --trial;
                continue;
            }
        } else {
            do
                for (auto& x : a) x = u(rng);
            while (adjacent_max() >= 1);
        }
        double M = adjacent_max();
        bool alternating = true;
        for (std::size_t i = 0; i < n; ++i) alternating &= a[i] == a[(i + 2) % n];
        AngleEig r = angle_matrix_min_eig(a);
        below += r.lambda_min < 1 - M - 1e-12;
        equality_wrong += alternating != (std::abs(r.lambda_min - (1 - M)) <= 1e-10);
        (alternating ? equality_cases : random_cases)++;
    }
    for (int trial = 0; trial < 20000; ++trial) {
        double alpha = u(rng) * 0.5, beta = u(rng);
        if (!(alpha > 0 && alpha * alpha < (1 - alpha) * (1 - beta))) {
            --trial;
            continue;
        }
        std::vector<double> a(4 + trial % 9, alpha);
        a.back() = beta;
        AngleEig r = angle_matrix_min_eig(a);
        ++beta_cases;
        beta_bad += !(r.lambda_min > 0 && r.lambda_min >= beta_case_bound(alpha, beta) - 1e-12);
    }
    bool ok = below == 0 && equality_wrong == 0 && beta_bad == 0;
    return {ok, " " + std::to_string(random_cases + equality_cases) + " vectors (" + std::to_string(equality_cases) +
                    " alternating): " + std::to_string(below) + " below 1-M, " + std::to_string(equality_wrong) +
                    " equality mismatches; " + std::to_string(beta_cases) + " one-off instances, " +
                    std::to_string(beta_bad) + " not positive definite"};
}

Outcome kazhdan() {
    using boost::multiprecision::cpp_dec_float_50;
    KazhdanReport r = kazhdan_bound(11, {1, 1, 2});
    cpp_dec_float_50 p = 11, M = 0;
    std::vector<int> e{1, 1, 2};
    for (std::size_t i = 0; i < 3; ++i) {
        cpp_dec_float_50 s = sqrt(cpp_dec_float_50(e[i]) / p) + sqrt(cpp_dec_float_50(e[(i + 1) % 3]) / p);
        if (s > M) M = s;
    }
    cpp_dec_float_50 exact = sqrt((1 - M) / 3);
    double diff = r.bound ? std::abs(*r.bound - exact.convert_to<double>()) : 1;

    std::uint64_t checked = 0, violations = 0;
    for (std::uint64_t q : primes_between(2, 200)) {
        for (unsigned n = 2; n <= 4; ++n) {
            std::vector<std::uint64_t> ev(n, 1);
            while (true) {
                std::uint64_t mx = *std::max_element(ev.begin(), ev.end());
                if (q > 4 * mx) {
                    ++checked;
                    KazhdanReport k = kazhdan_bound(q, ev);
                    violations += !(k.M < 1 && k.bound);
                }
                std::size_t i = 0;
                while (i < n && ev[i] == 12) ev[i++] = 1;
                if (i == n) break;
                ++ev[i];
            }
        }
    }
    bool ok = diff <= 1e-12 && violations == 0;
    std::ostringstream os;
    os.precision(15);
    os << " bound " << (r.bound ? *r.bound : 0.0) << ", |diff| vs 50 digits " << diff << "; " << checked
       << " (p, e) with p > 4 max e, n in 2..4: " << violations << " with M >= 1";
    return {ok, os.str()};
}

Outcome lemmas() {
    auto t = std::chrono::steady_clock::now();
    int code = 0;
    json j = run_cli("verify-lemmas --max-q 625 --max-n 4 --instances 1000", code);
    double s = seconds_since(t);
    bool ok = code == 0 && j["passed"] == true && j["interpolation_instances"] == 1000 && s < 120;
    return {ok, " " + j["fields"].dump() + " fields, " + j["count_checks"].dump() + " count checks, " +
                    j["enlarge_triples"].dump() + " enlargement triples, " + j["interpolation_instances"].dump() +
                    " interpolations, " + std::to_string(j["failures"].size()) + " failures in " + fmt(s) + "s"};
}

Outcome spectral_gaps() {
    std::ofstream csv("acceptance_gaps.csv");
    csv << "p,V,degree,lambda2,gap,method,residual,dense_diff\n";
    csv.precision(15);
    bool ok = true;
    double smallest = 1, worst_diff = 0;
    GapOptions it;
    it.method = GapMethod::Iterative;
    for (std::uint64_t p : primes_between(3, 31)) {
        Field F = make_field(p, 1);
        std::vector<Perm> perms;
        for (const auto& w : expander_generators_3d()) perms.push_back(nonzero_action(F, w, 3));
        SchreierGraph g = build_schreier(perms);
        GapResult r = spectral_gap(g, it);
        double diff = -1;
        if (g.V <= 4000) {
            diff = std::abs(spectral_gap(g).lambda2 - r.lambda2);
            worst_diff = std::max(worst_diff, diff);
            ok &= diff <= 1e-8;
        }
        ok &= r.connected && r.gap > 0.01 && g.degree == 6;
        smallest = std::min(smallest, r.gap);
        csv << p << "," << g.V << "," << g.degree << "," << r.lambda2 << "," << r.gap << ",iterative," << r.residual << ","
            << diff << "\n";
    }
    return {ok, " smallest gap " + fmt(smallest, 6) + " over p in 3..31; worst dense/iterative difference " +
                    fmt(worst_diff, 3) + " (rows in acceptance_gaps.csv)"};
}

Outcome probe() {
    bool ok = true;
    std::string detail;
    for (unsigned k : {2u, 3u}) {
        auto t = std::chrono::steady_clock::now();
        ProbeReport r = transitivity_probe(make_params(5, {1, 1, 2}), 2, {k, 200, 12});
        double s = seconds_since(t);
        bool good = r.precondition_met && r.successes == 200 && r.failures.empty();
        ok &= good && s < 300;
        detail += " k=" + std::to_string(k) + ": " + std::to_string(r.successes) + "/200 certified, longest word " +
                  std::to_string(r.longest_word) + " (" + std::to_string(r.longest_expansion) + " generators), " + fmt(s) + "s;";
    }
    return {ok, detail};
}

}  // namespace

int main() {
    OrbitPartition part;
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"Alt certification for p = 3, 5, 7", alt_certification},
        {"Alt(2186) and the commutator x1 + x3", degree_four},
        {"three orbits over F_125", [&] { return three_orbits(part); }},
        {"651000 Gamma-classes", [&] { return gamma_class_count(part); }},
        {"(p-1)-transitivity", transitivity},
        {"word synthesis", synthesis},
        {"nilpotent structure", nilpotent_structure},
        {"matrix criterion", matrix_criterion},
        {"Kazhdan bound", kazhdan},
        {"toolbox lemmas", lemmas},
        {"spectral gaps", spectral_gaps},
        {"transitivity probe", probe},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string(" threw ") + e.what()};
        }
        failed += !o.pass;
        std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].first << ":" << o.detail
                  << std::endl;
    }
    std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed ? 1 : 0;
}
