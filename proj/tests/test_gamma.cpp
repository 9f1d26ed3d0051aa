#include <random>

#include "doctest.h"
#include "tamexp/error.hpp"
#include "tamexp/gamma.hpp"

using namespace tamexp;

namespace {

std::vector<Point> all_points(std::uint64_t q, unsigned n) {
    std::vector<Point> out;
    std::uint64_t total = 1;
    for (unsigned i = 0; i < n; ++i) total *= q;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        Point a(n);
        std::uint64_t v = idx;
        for (unsigned i = 0; i < n; ++i) {
            a[i] = v % q;
            v /= q;
        }
        out.push_back(a);
    }
    return out;
}

GammaElem random_elem(const GammaGroup& G, std::mt19937_64& rng) { return G.element(rng() % G.order()); }

}  // namespace

TEST_SUITE("gamma") {

TEST_CASE("group law examples") {
    GammaGroup G(2, 5);
    GammaElem g = G.element(1234 % G.order());
    CHECK(G.op(G.identity(), g) == g);
    CHECK(G.op(g, G.identity()) == g);
    CHECK(G.op(G.y(2), G.y(4)) == G.y(1));
    GammaElem c = G.commutator(G.P(0, 1), G.y(1));
    CHECK(c.shift == 0);
    CHECK(c.poly == std::vector<std::uint64_t>{1, 2, 0});
}

TEST_CASE("group axioms, exhaustive for small groups") {
    for (auto [c, p] : {std::pair{1u, 3u}, {2u, 3u}}) {
        GammaGroup G(c, p);
        std::uint64_t n = G.order();
        for (std::uint64_t a = 0; a < n; ++a) {
            GammaElem x = G.element(a);
            CHECK(G.index(x) == a);
            CHECK(G.op(x, G.inverse(x)) == G.identity());
            CHECK(G.op(G.inverse(x), x) == G.identity());
        }
        std::mt19937_64 rng(5);
        for (int rep = 0; rep < 2000; ++rep) {
            GammaElem x = random_elem(G, rng), y = random_elem(G, rng), z = random_elem(G, rng);
            CHECK(G.op(G.op(x, y), z) == G.op(x, G.op(y, z)));
        }
    }
}

TEST_CASE("structure by brute force") {
    auto s = gamma_structure(2, 5);
    CHECK(s.order == 625);
    CHECK(s.nilpotency_class == 3);
    CHECK(s.center_order == 5);
    CHECK(s.center_is_top_layer);
    CHECK(s.generated_by_x0_y);

    auto s0 = gamma_structure(0, 3);
    CHECK(s0.order == 9);
    CHECK(s0.nilpotency_class == 1);
    CHECK(s0.center_order == 9);

    auto s3 = gamma_structure(3, 5);
    CHECK(s3.order == 3125);
    CHECK(s3.nilpotency_class == 4);
    CHECK(s3.center_order == 5);
    CHECK(s3.generated_by_x0_y);

    auto s27 = gamma_structure(2, 7);
    CHECK(s27.order == 2401);
    CHECK(s27.nilpotency_class == 3);
    CHECK(s27.center_is_top_layer);

    CHECK_THROWS_AS(gamma_structure(8, 7), Error);
}

TEST_CASE("class drops when c! vanishes") {
    // c = 3 over F_3: the third iterated commutator has leading coefficient 3! = 0
    auto s = gamma_structure(3, 3);
    CHECK(s.nilpotency_class < 4);
}

TEST_CASE("commutator formula") {
    for (unsigned c = 0; c <= 3; ++c)
        for (std::uint64_t p : {5u, 7u}) CHECK(check_commutator_formula(GammaGroup(c, p)));
}

TEST_CASE("embedding images") {
    GammaGroup G(2, 5);
    GammaEmbedding emb{0, 1, 2, 2, 1, 0};
    Word top = embed_gamma(G.P(2, 3), emb, 5);
    REQUIRE(top.size() == 1);
    CHECK(top.letters[0].g == GenLetter::bi_transvection(0, 1, 2, 0, 2, 2));
    Word ys = embed_gamma(G.y(2), emb, 5);
    REQUIRE(ys.size() == 1);
    CHECK(ys.letters[0].g == GenLetter::transvection(1, 2, 1, 3));
    CHECK_THROWS_AS(embed_gamma(G.y(1), GammaEmbedding{0, 1, 2, 5, 1, 0}, 5), Error);
}

TEST_CASE("embedding is a homomorphism on points") {
    Field F = make_field(5, 1);
    auto pts = all_points(5, 3);
    for (GammaEmbedding emb : {GammaEmbedding{0, 1, 2, 2, 1, 0}, GammaEmbedding{2, 0, 1, 2, 2, 0},
                               GammaEmbedding{0, 1, 2, 2, 2, 1}}) {
        GammaGroup G(emb.c, 5);
        std::mt19937_64 rng(17 + emb.d);
        for (int rep = 0; rep < 100; ++rep) {
            GammaElem a = random_elem(G, rng), b = random_elem(G, rng);
            Word lhs = embed_gamma(G.op(a, b), emb, 5);
            Word rhs = concat(embed_gamma(a, emb, 5), embed_gamma(b, emb, 5));
            for (const auto& x : pts) CHECK(apply_word(F, lhs, x) == apply_word(F, rhs, x));
        }
        // centre goes to a central element of the image
        Word z = embed_gamma(G.P(emb.c, 1), emb, 5);
        for (int rep = 0; rep < 20; ++rep) {
            Word g = embed_gamma(random_elem(G, rng), emb, 5);
            for (const auto& x : pts) CHECK(apply_word(F, concat(z, g), x) == apply_word(F, concat(g, z), x));
        }
    }
}

TEST_CASE("embedding is injective") {
    Field F = make_field(5, 1);
    GammaGroup G(2, 5);
    GammaEmbedding emb{0, 1, 2, 2, 1, 0};
    auto pts = all_points(5, 3);
    for (std::uint64_t idx = 1; idx < G.order(); ++idx) {
        Word w = embed_gamma(G.element(idx), emb, 5);
        bool moved = false;
        for (const auto& x : pts)
            if (apply_word(F, w, x) != x) {
                moved = true;
                break;
            }
        CHECK(moved);
    }
}

}  // TEST_SUITE
