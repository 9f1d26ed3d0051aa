#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "tamexp/error.hpp"
#include "tamexp/permgrp.hpp"
#include "tamexp/synth.hpp"
#include "tamexp/tame.hpp"

using namespace tamexp;

namespace {

// group closure by breadth-first multiplication; only for tiny groups
std::size_t closure_size(const std::vector<Perm>& gens) {
    std::set<Perm> seen{identity_perm(static_cast<std::uint32_t>(gens[0].size()))};
    std::vector<Perm> queue(seen.begin(), seen.end());
    for (std::size_t k = 0; k < queue.size(); ++k)
        for (const auto& g : gens) {
            Perm h = compose(queue[k], g);
            if (seen.insert(h).second) queue.push_back(h);
        }
    return seen.size();
}

std::uint64_t encode(const Point& a, std::uint64_t q) {
    std::uint64_t j = 0;
    for (std::size_t i = a.size(); i-- > 0;) j = j * q + a[i];
    return j;
}

// action on nonzero points of F_q^n
Perm nonzero_action(const Field& F, const Word& w, unsigned n) {
    std::uint64_t q = F.q(), total = 1;
    for (unsigned i = 0; i < n; ++i) total *= q;
    Perm P(total - 1);
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        Point a(n);
        std::uint64_t v = idx;
        for (unsigned i = 0; i < n; ++i) {
            a[i] = v % q;
            v /= q;
        }
        P[idx - 1] = static_cast<std::uint32_t>(encode(apply_word(F, w, a), q) - 1);
    }
    return P;
}

Perm full_action(const Field& F, const Word& w, unsigned n) {
    std::uint64_t q = F.q(), total = 1;
    for (unsigned i = 0; i < n; ++i) total *= q;
    Perm P(total);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        Point a(n);
        std::uint64_t v = idx;
        for (unsigned i = 0; i < n; ++i) {
            a[i] = v % q;
            v /= q;
        }
        P[idx] = static_cast<std::uint32_t>(encode(apply_word(F, w, a), q));
    }
    return P;
}

Perm random_perm(std::mt19937_64& rng, std::uint32_t d) {
    Perm p = identity_perm(d);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

}  // namespace

TEST_SUITE("permgrp") {

TEST_CASE("basic permutations") {
    Perm a{1, 2, 0, 3}, b{0, 1, 3, 2};
    CHECK(compose(a, inverse(a)) == identity_perm(4));
    CHECK(compose(a, b) == Perm{1, 3, 0, 2});
    CHECK(parity(identity_perm(5)) == Parity::Even);
    CHECK(parity(b) == Parity::Odd);
    CHECK(parity(a) == Parity::Even);
    CHECK(perm_order(Perm{1, 2, 0, 4, 3}) == 6);
    CHECK(factorial(26) / 2 == BigInt("201645730563302817792000000"));
    CHECK(!is_permutation(Perm{0, 0, 1}));
}

TEST_CASE("schreier sims examples") {
    auto triv = schreier_sims({identity_perm(5)});
    CHECK(triv.order() == 1);
    std::vector<Perm> alt4{{1, 2, 0, 3}, {1, 0, 3, 2}};
    auto c = schreier_sims(alt4);
    CHECK(c.order() == 12);
    CHECK(closure_size(alt4) == 12);
    CHECK(certify_alternating(c, alt4).verdict == Verdict::Alt);
    std::vector<Perm> sym4{{1, 2, 3, 0}, {1, 0, 2, 3}};
    auto s = schreier_sims(sym4);
    CHECK(s.order() == 24);
    CHECK(certify_alternating(s, sym4).verdict == Verdict::Sym);
    CHECK(s.transitivity_degree() == 4);
    CHECK_THROWS_AS(schreier_sims({Perm{0, 1}, Perm{0, 1, 2}}), Error);
}

TEST_CASE("orders agree with closure on random small groups") {
    std::mt19937_64 rng(8);
    for (int rep = 0; rep < 40; ++rep) {
        std::uint32_t d = 4 + rng() % 4;
        std::vector<Perm> gens;
        for (unsigned k = 0; k < 1 + rng() % 2; ++k) {
            // sparse perms so that proper subgroups show up
            Perm p = identity_perm(d);
            for (unsigned s = 0; s < 1 + rng() % 2; ++s) std::swap(p[rng() % d], p[rng() % d]);
            gens.push_back(p);
        }
        auto c = schreier_sims(gens, {rep + 1ull, 30});
        CHECK(c.order() == closure_size(gens));
    }
}

TEST_CASE("chain properties") {
    std::mt19937_64 rng(2);
    std::vector<Perm> gens{random_perm(rng, 40), random_perm(rng, 40)};
    auto c = schreier_sims(gens);
    BigInt o = c.order();
    CHECK(factorial(40) % o == 0);
    for (const auto& g : gens) CHECK(o % perm_order(g) == 0);
    for (int rep = 0; rep < 20; ++rep) {
        Perm h = identity_perm(40);
        for (unsigned k = 0; k < 1 + rng() % 50; ++k) h = compose(h, gens[rng() % 2]);
        CHECK(c.contains(h));
    }
}

TEST_CASE("membership rejects outsiders") {
    std::vector<Perm> alt5{{1, 2, 0, 3, 4}, {0, 1, 3, 4, 2}, {0, 2, 3, 1, 4}};
    auto c = schreier_sims(alt5);
    CHECK(c.order() == 60);
    CHECK(!c.contains(Perm{1, 0, 2, 3, 4}));
    CHECK(c.contains(Perm{1, 0, 3, 2, 4}));
}

TEST_CASE("three-variable action for p = 3 gives Alt(26)") {
    GroupParams g = make_params(3, {1, 1, 2});
    Field F = make_field(3, 1);
    std::vector<Perm> gens;
    for (const auto& l : standard_generators(g)) gens.push_back(nonzero_action(F, Word{l}, 3));
    for (const auto& p : gens) CHECK(parity(p) == Parity::Even);
    auto c = schreier_sims(gens);
    auto cert = certify_alternating(c, gens);
    CHECK(cert.verdict == Verdict::Alt);
    CHECK(cert.order == factorial(26) / 2);
    CHECK(c.transitivity_degree() == 24);
}

TEST_CASE("linear case is SL3(F3)") {
    GroupParams g = make_params(3, {1, 1, 1});
    Field F = make_field(3, 1);
    std::vector<Perm> gens;
    for (const auto& l : standard_generators(g)) gens.push_back(nonzero_action(F, Word{l}, 3));
    auto c = schreier_sims(gens);
    CHECK(c.order() == 5616);
    CHECK(closure_size(gens) == 5616);
    CHECK(!c.closed_by_bound());
    auto cert = certify_alternating(c, gens);
    CHECK(cert.verdict == Verdict::Proper);
    CHECK(c.transitivity_degree() == 1);
}

TEST_CASE("odd generator gives Sym") {
    Field F = make_field(3, 1);
    auto words = expander_generators_3d();
    std::vector<Perm> gens;
    for (const auto& w : words) gens.push_back(nonzero_action(F, w, 3));
    Perm t = identity_perm(26);
    std::swap(t[0], t[1]);
    gens.push_back(t);
    auto c = schreier_sims(gens);
    CHECK(certify_alternating(c, gens).verdict == Verdict::Sym);
}

TEST_CASE("explicit 3-variable generators for p = 5") {
    Field F = make_field(5, 1);
    std::vector<Perm> gens;
    for (const auto& w : expander_generators_3d()) gens.push_back(nonzero_action(F, w, 3));
    auto c = schreier_sims(gens, {7, 30});
    auto cert = certify_alternating(c, gens);
    CHECK(cert.verdict == Verdict::Alt);
    CHECK(cert.order == factorial(124) / 2);
    CHECK(cert.seed == 7);
    CHECK(c.transitivity_degree() >= 4);
}

TEST_CASE("elementary abelian witness has order p^rank") {
    GroupParams g = make_params(5, {1, 1, 2});
    auto w = elementary_abelian_witness(g, 3);
    Field F = make_field(5, w.grid_ell);
    std::vector<Perm> gens;
    for (const auto& word : w.words) gens.push_back(full_action(F, word, 3));
    CHECK(schreier_sims(gens).order() == 125);
}

}  // TEST_SUITE
