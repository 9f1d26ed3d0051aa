#include <numeric>

#include "doctest.h"
#include "tamexp/error.hpp"
#include "tamexp/lemmas.hpp"

using namespace tamexp;

namespace {

// direct count without tables, for one gamma
std::uint64_t generating_count(const Field& F, std::uint64_t N, Elem gamma) {
    std::uint64_t good = 0;
    for (Elem a = 0; a < F.q(); ++a) good += F.generated_subfield_degree(F.mul(F.pow(a, N), gamma)) == F.ell();
    return good;
}

}  // namespace

TEST_SUITE("lemmas") {

TEST_CASE("count lemma examples") {
    Field F25 = make_field(5, 2);
    auto r = verify_count_lemma(F25, 1);
    CHECK(r.worst_count == 20);
    CHECK(r.q == 25);
    CHECK(r.holds);
    for (Elem g = 1; g < 25; ++g) CHECK(generating_count(F25, 1, g) >= r.worst_count);

    Field F7 = make_field(7, 1);
    for (std::uint64_t N = 1; N < 7; ++N) CHECK(verify_count_lemma(F7, N).worst_count == 7);

    Field F125 = make_field(5, 3);
    auto c = verify_count_lemma(F125, 2);
    CHECK(c.holds);
    CHECK(c.worst_count * 5 >= 125 * 3);
    std::uint64_t worst = 125;
    for (Elem g = 1; g < 125; ++g) worst = std::min(worst, generating_count(F125, 2, g));
    CHECK(worst == c.worst_count);

    CHECK_THROWS_AS(verify_count_lemma(F7, 7), Error);
    CHECK_THROWS_AS(verify_count_lemma(F7, 0), Error);
}

TEST_CASE("enlarge lemma examples") {
    Field F9 = make_field(3, 2);
    auto r = verify_enlarge_lemma(F9, 2);
    CHECK(r.holds);
    CHECK(r.triples == 8 * 9 * 2);

    Field F25 = make_field(5, 2);
    auto s = verify_enlarge_lemma(F25, 3);
    CHECK(s.holds);
    CHECK(s.strict_instances > 0);

    Field F5 = make_field(5, 1);
    auto t = verify_enlarge_lemma(F5, 4);
    CHECK(t.strict_instances == 0);
}

TEST_CASE("strict instances match a direct count") {
    Field F9 = make_field(3, 2);
    const std::uint64_t N = 2;
    std::uint64_t strict = 0;
    for (Elem a = 1; a < 9; ++a) {
        unsigned d = F9.generated_subfield_degree(F9.pow(a, N));
        for (std::uint64_t k = 0; k < N; ++k)
            for (Elem b = 0; b < 9; ++b) {
                unsigned j = std::lcm(std::lcm(d, F9.generated_subfield_degree(F9.pow(b, N))),
                                      F9.generated_subfield_degree(F9.mul(F9.pow(a, k), F9.pow(b, N - 1))));
                strict += j != d;
            }
    }
    CHECK(verify_enlarge_lemma(F9, N).strict_instances == strict);
}

TEST_CASE("interpolation spot check") {
    auto r = check_interpolation(make_field(3, 4), 200, 7);
    CHECK(r.instances == 200);
    CHECK(r.passed == 200);
}

TEST_CASE("small suite") {
    auto rep = verify_lemma_suite(49, 4, 100, 3);
    CHECK(rep.passed());
    CHECK(rep.interpolation_instances == 100);
    CHECK(rep.fields == 15 + 3 + 2 + 1 + 1 + 1);
}

}  // TEST_SUITE
