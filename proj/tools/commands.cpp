#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "tamexp/error.hpp"
#include "tamexp/gamma.hpp"
#include "tamexp/lemmas.hpp"
#include "tamexp/orbits.hpp"
#include "tamexp/permgrp.hpp"
#include "tamexp/probe.hpp"
#include "tamexp/spectra.hpp"
#include "tamexp/synth.hpp"
#include "tamexp/version.hpp"

namespace tamexp::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kChainDomainLimit = 100'000;

std::uint64_t single_p(const RunConfig& cfg) {
    if (cfg.p.size() != 1) throw BadInput("--p takes exactly one prime here");
    if (!is_prime(cfg.p[0])) throw BadInput("p = " + std::to_string(cfg.p[0]) + " is not prime");
    return cfg.p[0];
}

GroupParams group_params(const RunConfig& cfg) {
    std::uint64_t p = single_p(cfg);
    if (cfg.e.size() < 2) throw BadInput("--e needs at least two exponents");
    for (auto x : cfg.e)
        if (x == 0) throw BadInput("exponents must be positive");
    if (cfg.n && *cfg.n != cfg.e.size())
        throw BadInput("--n " + std::to_string(*cfg.n) + " disagrees with " + std::to_string(cfg.e.size()) + " exponents");
    if (cfg.ell == 0) throw BadInput("--ell must be positive");
    return make_params(p, cfg.e);
}

void check_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
    if (cfg.format.empty()) return;
    for (const char* f : allowed)
        if (cfg.format == f) return;
    throw BadInput("format '" + cfg.format + "' not available for this command");
}

std::string format_or(const RunConfig& cfg, const char* dflt) { return cfg.format.empty() ? dflt : cfg.format; }

json header(const char* command, const Field* F) {
    json j;
    j["schema"] = 1;
    j["tool"] = "tamexp";
    j["version"] = kVersion;
    j["command"] = command;
    if (F) j["field"] = F->serialize();
    return j;
}

std::string csv_header(const char* command, const Field* F) {
    std::string s = std::string("# tamexp ") + kVersion + " " + command + "\n";
    if (F) s += "# field " + F->serialize() + "\n";
    return s;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw BadInput("cannot open " + cfg.out);
    f << text;
}

void emit(const RunConfig& cfg, const json& j) { emit(cfg, j.dump(2) + "\n"); }

std::string num(double x) {
    std::ostringstream os;
    os.precision(15);
    os << x;
    return os.str();
}

std::string str(const BigInt& x) { return x.str(); }

std::vector<std::string> word_texts(const std::vector<Word>& ws) {
    std::vector<std::string> out;
    for (const auto& w : ws) out.push_back(format_word(w));
    return out;
}

std::vector<Word> letter_words(const GroupParams& params) {
    std::vector<Word> ws;
    for (const auto& l : standard_generators(params)) ws.push_back(Word{l});
    return ws;
}

std::size_t largest_orbit(const OrbitPartition& part) {
    if (part.orbits.empty()) throw Error(Errc::NotApplicable, "no orbits");
    return part.orbits.size() - 1;
}

OrbitPartition exhaustive_partition(const GroupParams& params, unsigned ell) {
    Field F = make_field(params.p, ell);
    if (point_count(F, params.n()) > kExhaustiveOrbitLimit)
        throw Error(Errc::BudgetExceeded, "point listing limited to 10^7 points");
    return orbit_partition(params, ell);
}

}  // namespace

int cmd_certify_alt(const RunConfig& cfg) {
    check_format(cfg, {"json"});
    std::uint64_t budget = cfg.budget.value_or(kChainDomainLimit);
    std::vector<Word> words;
    std::vector<Perm> gens;
    std::string domain;
    std::optional<Field> F;
    json params;

    auto need = [&](std::uint64_t size) {
        if (size > budget)
            throw Error(Errc::BudgetExceeded, "domain of " + std::to_string(size) + " points exceeds " + std::to_string(budget));
    };

    if (!cfg.thm15.empty()) {
        std::uint64_t p = single_p(cfg);
        if (cfg.ell != 1 || !cfg.e.empty() || !cfg.domain.empty()) throw BadInput("--thm15 fixes the field, exponents and domain");
        unsigned n = cfg.thm15 == "i" ? 3 : 7;
        F = make_field(p, 1);
        need(point_count(*F, n) - 1);
        words = n == 3 ? expander_generators_3d() : expander_generators_7d();
        for (const auto& w : words) gens.push_back(nonzero_action(*F, w, n));
        domain = "nonzero";
        params = {{"thm15", cfg.thm15}, {"p", p}, {"n", n}};
    } else {
        GroupParams gp = group_params(cfg);
        unsigned n = gp.n();
        F = make_field(gp.p, cfg.ell);
        words = letter_words(gp);
        domain = cfg.domain.empty() ? (cfg.ell == 1 ? "nonzero" : "gamma-classes") : cfg.domain;
        params = {{"p", gp.p}, {"n", n}, {"e", gp.e}, {"ell", cfg.ell}};
        if (domain == "nonzero") {
            need(point_count(*F, n) - 1);
            for (const auto& w : words) gens.push_back(nonzero_action(*F, w, n));
        } else {
            OrbitPartition part = exhaustive_partition(gp, cfg.ell);
            auto members = part.members(largest_orbit(part));
            if (domain == "big-orbit") {
                need(members.size());
                for (const auto& w : words) gens.push_back(action_perm(*F, w, n, members));
            } else {
                GammaClasses cls = gamma_classes(*F, n, members, make_gamma_spec(*F, gp.grading));
                need(cls.class_count);
                for (const auto& w : words) gens.push_back(class_action(*F, w, n, members, cls));
            }
        }
    }

    StabChain chain = schreier_sims(gens, {cfg.seed});
    AltCertificate cert = certify_alternating(chain, gens);
    json j = header("certify-alt", &*F);
    j["params"] = params;
    j["domain"] = domain;
    j["generators"] = word_texts(words);
    j["degree"] = cert.degree;
    j["order"] = str(cert.order);
    j["alt_order"] = str(factorial(cert.degree) / 2);
    j["order_matches"] = cert.order_matches;
    j["all_even"] = cert.all_even;
    j["verdict"] = verdict_name(cert.verdict);
    j["transitivity_degree"] = chain.transitivity_degree();
    j["base"] = cert.base;
    j["seed"] = cert.seed;
    j["closed_by_bound"] = cert.closed_by_bound;
    emit(cfg, j);
    if (cert.verdict != Verdict::Alt)
        std::cerr << "verdict " << verdict_name(cert.verdict) << " on " << cert.degree << " points, order " << cert.order << "\n";
    return cert.verdict == Verdict::Alt ? 0 : 1;
}

int cmd_orbits(const RunConfig& cfg) {
    check_format(cfg, {"csv", "json", "dot"});
    GroupParams gp = group_params(cfg);
    Field F = make_field(gp.p, cfg.ell);
    std::string fmt = format_or(cfg, "csv");
    if (fmt == "dot") {
        OrbitPartition part = exhaustive_partition(gp, cfg.ell);
        std::size_t pick = part.orbits.size();
        if (cfg.orbit) {
            if (*cfg.orbit < 0 || static_cast<std::size_t>(*cfg.orbit) >= part.orbits.size())
                throw BadInput("--orbit out of range");
            pick = static_cast<std::size_t>(*cfg.orbit);
        } else {
            for (std::size_t o = 0; o < part.orbits.size(); ++o)
                if (part.orbits[o].size <= 2000) pick = o;
            if (pick == part.orbits.size()) throw Error(Errc::BudgetExceeded, "every orbit exceeds 2000 points");
        }
        emit(cfg, "// tamexp " + std::string(kVersion) + " field " + F.serialize() + "\n" +
                      orbit_dot(F, gp, part.members(pick)));
        return 0;
    }
    OrbitPartition part = orbit_partition(gp, cfg.ell);
    if (fmt == "csv") {
        std::string s = csv_header("orbits", &F) + "d0,a1_label,size,representative\n";
        for (const auto& o : part.orbits)
            s += std::to_string(o.invariant.d0) + "," + std::to_string(o.invariant.a1_label) + "," +
                 std::to_string(o.size) + "," + std::to_string(o.representative) + "\n";
        emit(cfg, s);
        return 0;
    }
    json j = header("orbits", &F);
    j["params"] = {{"p", gp.p}, {"n", gp.n()}, {"e", gp.e}, {"ell", cfg.ell}};
    j["total"] = part.total;
    j["exhaustive"] = part.exhaustive;
    j["sufficiency_applies"] = part.sufficiency_applies;
    j["invariants_distinct"] = part.invariants_distinct;
    json rows = json::array();
    for (const auto& o : part.orbits)
        rows.push_back({{"d0", o.invariant.d0}, {"a1_label", o.invariant.a1_label}, {"zero", o.invariant.zero},
                        {"size", o.size}, {"representative", o.representative}, {"connected", o.connected}});
    j["orbits"] = rows;
    if (gp.p >= gp.grading.E) {
        LargeOrbitReport lr = check_large_orbit(gp, cfg.ell, part);
        j["large_orbit"] = {{"size", lr.orbit_size}, {"lower_bound", lr.lower_bound}, {"holds", lr.holds}, {"strict", lr.strict}};
    }
    emit(cfg, j);
    return 0;
}

int cmd_gamma_classes(const RunConfig& cfg) {
    check_format(cfg, {"json"});
    GroupParams gp = group_params(cfg);
    Field F = make_field(gp.p, cfg.ell);
    GammaSpec gamma = make_gamma_spec(F, gp.grading);
    OrbitPartition part = exhaustive_partition(gp, cfg.ell);
    auto members = part.members(largest_orbit(part));
    GammaClasses cls = gamma_classes(F, gp.n(), members, gamma);
    json j = header("gamma-classes", &F);
    j["params"] = {{"p", gp.p}, {"n", gp.n()}, {"e", gp.e}, {"ell", cfg.ell}};
    j["lambda"] = gamma.lambda;
    j["lambda_order"] = gamma.lambda_order;
    j["exponent"] = gamma.exponent;
    j["orbit_size"] = members.size();
    j["class_count"] = cls.class_count;
    json hist = json::object();
    for (const auto& [size, count] : cls.histogram) hist[std::to_string(size)] = count;
    j["histogram"] = hist;
    if (point_count(F, gp.n()) <= 1'000'000)
        j["commutes"] = gamma_commutes(F, gp, gamma);
    else
        j["commutes"] = nullptr;
    emit(cfg, j);
    return 0;
}

int cmd_synth(const RunConfig& cfg) {
    check_format(cfg, {"json"});
    GroupParams gp = group_params(cfg);
    unsigned n = gp.n();
    if (cfg.i < 1 || cfg.i > n || cfg.j < 1 || cfg.j > n || cfg.i == cfg.j) throw BadInput("--i and --j must be distinct in 1..n");
    unsigned i = cfg.i - 1, j = cfg.j - 1;
    SynthOptions opt;
    opt.budget = cfg.budget.value_or(kWordBudget);
    opt.grid_ell = cfg.grid_ell;
    opt.samples = cfg.samples;
    opt.seed = cfg.seed;

    SynthCert cert;
    std::string xi = "x" + std::to_string(cfg.i), xj = "x" + std::to_string(cfg.j);
    std::string target;
    if (!cfg.poly.empty()) {
        UPoly P(cfg.poly.begin(), cfg.poly.end());
        for (auto& c : P) c %= gp.p;
        cert = synth_poly_transvection(gp, i, j, P, opt);
        target = xi + " -> " + xi + " + " + xj + "^" + std::to_string(gp.grading.t(i, j)) + "*P(" + xj + "^" +
                 std::to_string(gp.grading.N) + "), P(y) = " + upoly::to_string(P);
    } else {
        if (cfg.r % gp.p == 0) throw BadInput("--r must be nonzero mod p");
        cert = synth_transvection(gp, i, j, cfg.t, cfg.r % gp.p, opt);
        target = xi + " -> " + xi + " + " + std::to_string(cfg.r % gp.p) + "*" + xj + "^" + std::to_string(cfg.t);
    }
    Field Fp = make_field(gp.p, 1);
    json out = header("synth", &Fp);
    out["params"] = {{"p", gp.p}, {"n", n}, {"e", gp.e}};
    out["target"] = target;
    out["word"] = format_word(cert.word);
    out["length"] = cert.word.size();
    out["verification"] = cert.exhaustive ? "exhaustive" : "probabilistic";
    out["grid"] = cert.grid;
    out["points_checked"] = cert.points_checked;
    out["symbolic_checked"] = cert.symbolic_checked;
    out["verified"] = cert.verified;
    if (cfg.emit_endo) {
        PolyEndo f = word_to_endo(Fp, cert.word, n);
        std::vector<std::string> images;
        for (const auto& im : f.images) images.push_back(to_string(Fp, im));
        out["endo"] = images;
    }
    emit(cfg, out);
    if (!cert.verified) std::cerr << "word does not realize " << target << "\n";
    return cert.verified ? 0 : 1;
}

int cmd_gap(const RunConfig& cfg) {
    check_format(cfg, {"csv", "json"});
    if (cfg.p.empty()) throw BadInput("--p needs at least one prime");
    for (auto p : cfg.p)
        if (!is_prime(p)) throw BadInput(std::to_string(p) + " is not prime");
    std::string which = cfg.thm15.empty() ? "i" : cfg.thm15;
    unsigned n = which == "i" ? 3 : 7;
    GapOptions opt;
    if (cfg.method == "dense")
        opt.method = GapMethod::Dense;
    else if (cfg.method == "iterative")
        opt.method = GapMethod::Iterative;
    else
        throw BadInput("--method is dense or iterative");
    opt.tol = cfg.tol;
    auto words = n == 3 ? expander_generators_3d() : expander_generators_7d();

    std::string csv = csv_header("gap", nullptr) + "# generators " + which + "\np,V,degree,lambda2,gap,method,residual,connected\n";
    json rows = json::array();
    bool all_connected = true;
    for (auto p : cfg.p) {
        Field F = make_field(p, 1);
        std::uint64_t V = point_count(F, n) - 1;
        if (V > cfg.budget.value_or(50'000'000)) throw Error(Errc::BudgetExceeded, "graph on " + std::to_string(V) + " vertices");
        std::vector<Perm> gens;
        for (const auto& w : words) gens.push_back(nonzero_action(F, w, n));
        SchreierGraph g = build_schreier(gens);
        GapResult r = spectral_gap(g, opt);
        all_connected &= r.connected;
        csv += std::to_string(p) + "," + std::to_string(g.V) + "," + std::to_string(g.degree) + "," + num(r.lambda2) + "," +
               num(r.gap) + "," + method_name(r.method) + "," + num(r.residual) + "," + (r.connected ? "1" : "0") + "\n";
        rows.push_back({{"p", p}, {"field", F.serialize()}, {"V", g.V}, {"degree", g.degree}, {"lambda2", r.lambda2},
                        {"gap", r.gap}, {"method", method_name(r.method)}, {"residual", r.residual}, {"connected", r.connected}});
    }
    if (format_or(cfg, "csv") == "csv") {
        emit(cfg, csv);
    } else {
        json j = header("gap", nullptr);
        j["generators"] = which;
        j["rows"] = rows;
        emit(cfg, j);
    }
    return all_connected ? 0 : 1;
}

int cmd_kazhdan(const RunConfig& cfg) {
    check_format(cfg, {"json"});
    GroupParams gp = group_params(cfg);
    Field F = make_field(gp.p, 1);
    KazhdanReport r = kazhdan_bound(gp.p, gp.e);
    json j = header("kazhdan", &F);
    j["p"] = r.p;
    j["n"] = r.e.size();
    j["e"] = r.e;
    j["M"] = r.M;
    if (r.bound)
        j["bound"] = *r.bound;
    else
        j["bound"] = nullptr;
    j["p_exceeds_4max"] = r.p_exceeds_4max;
    emit(cfg, j);
    if (!r.bound) std::cerr << "M = " << num(r.M) << " >= 1, no bound\n";
    return r.bound ? 0 : 1;
}

namespace {

json gamma_group_json(unsigned c, std::uint64_t p, bool& ok) {
    GammaStructure s = gamma_structure(c, p);
    bool formula = check_commutator_formula(GammaGroup(c, p));
    std::uint64_t expected = 1;
    for (unsigned k = 0; k < c + 2; ++k) expected *= p;
    ok = s.order == expected && s.nilpotency_class == c + 1 && s.center_order == p && s.center_is_top_layer &&
         s.generated_by_x0_y && formula;
    return {{"c", c},
            {"p", p},
            {"order", s.order},
            {"nilpotency_class", s.nilpotency_class},
            {"center_order", s.center_order},
            {"center_is_top_layer", s.center_is_top_layer},
            {"generated_by_x0_y", s.generated_by_x0_y},
            {"lower_central_orders", s.lower_central_orders},
            {"commutator_formula", formula},
            {"holds", ok}};
}

}  // namespace

int cmd_gamma_group(const RunConfig& cfg) {
    check_format(cfg, {"json"});
    std::uint64_t p = single_p(cfg);
    if (cfg.c == 0) throw BadInput("--c must be positive");
    if (cfg.c >= p) throw BadInput("--c must be below p so that c! is invertible");
    Field F = make_field(p, 1);
    bool ok = false;
    json j = header("gamma-group", &F);
    j["structure"] = gamma_group_json(cfg.c, p, ok);
    emit(cfg, j);
    return ok ? 0 : 1;
}

int cmd_verify_lemmas(const RunConfig& cfg) {
    check_format(cfg, {"json"});
    if (cfg.max_q < 2 || cfg.max_N < 1) throw BadInput("--max-q >= 2 and --max-n >= 1 required");
    LemmaSuiteReport r = verify_lemma_suite(cfg.max_q, cfg.max_N, cfg.instances, cfg.seed);
    json j = header("verify-lemmas", nullptr);
    j["max_q"] = cfg.max_q;
    j["max_N"] = cfg.max_N;
    j["seed"] = cfg.seed;
    j["fields"] = r.fields;
    j["count_checks"] = r.count_checks;
    j["enlarge_triples"] = r.enlarge_triples;
    j["interpolation_instances"] = r.interpolation_instances;
    j["failures"] = r.failures;
    bool ok = r.passed();
    json groups = json::array();
    for (auto [c, p] : std::vector<std::pair<unsigned, std::uint64_t>>{{2, 5}, {3, 5}, {2, 7}}) {
        bool g_ok = false;
        groups.push_back(gamma_group_json(c, p, g_ok));
        ok &= g_ok;
    }
    j["gamma_groups"] = groups;
    j["passed"] = ok;
    emit(cfg, j);
    for (const auto& f : r.failures) std::cerr << f << "\n";
    return ok ? 0 : 1;
}

int cmd_probe(const RunConfig& cfg) {
    check_format(cfg, {"json"});
    GroupParams gp = group_params(cfg);
    if (cfg.k == 0) throw BadInput("--k must be positive");
    Field F = make_field(gp.p, cfg.ell);
    ProbeReport r = transitivity_probe(gp, cfg.ell, {cfg.k, cfg.trials, cfg.seed});
    json j = header("probe", &F);
    j["params"] = {{"p", gp.p}, {"n", gp.n()}, {"e", gp.e}, {"ell", cfg.ell}, {"seed", cfg.seed}};
    j["k"] = r.k;
    j["k_bound"] = r.k_bound;
    j["precondition_met"] = r.precondition_met;
    j["targets"] = r.targets;
    j["trials"] = r.trials;
    j["successes"] = r.successes;
    j["longest_word"] = r.longest_word;
    j["longest_expansion"] = r.longest_expansion;
    j["failures"] = r.failures;
    emit(cfg, j);
    return r.successes == r.trials ? 0 : 1;
}

}  // namespace tamexp::cli
