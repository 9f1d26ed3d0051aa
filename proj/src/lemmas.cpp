#include "tamexp/lemmas.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "tamexp/error.hpp"
#include "tamexp/interpolate.hpp"

namespace tamexp {

namespace {

std::vector<std::uint8_t> degree_table(const Field& F) {
    std::vector<std::uint8_t> deg(F.q());
    for (Elem x = 0; x < F.q(); ++x) deg[x] = static_cast<std::uint8_t>(F.generated_subfield_degree(x));
    return deg;
}

std::vector<Elem> power_table(const Field& F, std::uint64_t N) {
    std::vector<Elem> pw(F.q());
    for (Elem x = 0; x < F.q(); ++x) pw[x] = F.pow(x, N);
    return pw;
}

void check_size(const Field& F) {
    if (F.q() > 1'000'000) throw Error(Errc::FieldTooLarge, "exhaustive lemma checks need q <= 10^6");
}

}  // namespace

CountReport verify_count_lemma(const Field& F, std::uint64_t N) {
    check_size(F);
    if (N < 1 || N >= F.p()) throw Error(Errc::BadExponent, "needs 1 <= N < p");
    auto deg = degree_table(F);
    auto pw = power_table(F, N);
    CountReport r;
    r.N = N;
    r.q = F.q();
    r.worst_count = F.q();
    for (Elem gamma = 1; gamma < F.q(); ++gamma) {
        std::uint64_t good = 0;
        for (Elem a = 0; a < F.q(); ++a) good += deg[F.mul(pw[a], gamma)] == F.ell();
        r.worst_count = std::min(r.worst_count, good);
    }
    // worst/q >= 1 - N/p  <=>  worst * p >= q (p - N)
    r.holds = static_cast<unsigned __int128>(r.worst_count) * F.p() >=
              static_cast<unsigned __int128>(F.q()) * (F.p() - N);
    if (!r.holds) throw Error(Errc::BoundViolated, "count bound violated over " + F.serialize());
    return r;
}

EnlargeReport verify_enlarge_lemma(const Field& F, std::uint64_t N) {
    check_size(F);
    if (N < 1 || N >= F.p()) throw Error(Errc::BadExponent, "needs 1 <= N < p");
    auto deg = degree_table(F);
    auto pw = power_table(F, N);
    auto pw1 = power_table(F, N - 1);
    std::vector<std::vector<Elem>> subfields(F.ell() + 1);
    for (unsigned d = 1; d <= F.ell(); ++d)
        if (F.ell() % d == 0) subfields[d] = F.subfield(d);

    EnlargeReport r;
    r.N = N;
    for (Elem alpha = 1; alpha < F.q(); ++alpha) {
        unsigned d = deg[pw[alpha]];
        const auto& lambdas = subfields[d];
        Elem ak = 1;
        for (std::uint64_t k = 0; k < N; ++k, ak = F.mul(ak, alpha)) {
            for (Elem beta = 0; beta < F.q(); ++beta) {
                unsigned joint = std::lcm(std::lcm(d, static_cast<unsigned>(deg[pw[beta]])),
                                          static_cast<unsigned>(deg[F.mul(ak, pw1[beta])]));
                bool strict = joint != d;
                bool weak_ok = false, strict_ok = !strict;
                for (Elem lam : lambdas) {
                    unsigned got = deg[pw[F.add(beta, F.mul(lam, ak))]];
                    weak_ok |= got >= d;
                    if (strict) strict_ok |= got > d;
                    if (weak_ok && strict_ok) break;
                }
                ++r.triples;
                r.strict_instances += strict;
                if (!weak_ok || !strict_ok)
                    throw Error(Errc::BoundViolated, "enlargement fails over " + F.serialize() + " at alpha=" +
                                                         std::to_string(alpha) + " beta=" + std::to_string(beta) +
                                                         " k=" + std::to_string(k));
            }
        }
    }
    r.holds = true;
    return r;
}

InterpolationReport check_interpolation(const Field& F, std::uint64_t instances, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    InterpolationReport r;
    std::vector<std::vector<Elem>> subfields(F.ell() + 1);
    for (unsigned d = 1; d <= F.ell(); ++d)
        if (F.ell() % d == 0) subfields[d] = F.subfield(d);
    for (std::uint64_t it = 0; it < instances; ++it) {
        unsigned k = 1 + rng() % 5;
        std::vector<Elem> mus, nus;
        std::vector<UPoly> seen;
        for (int tries = 0; tries < 100 && mus.size() < k; ++tries) {
            Elem mu = rng() % F.q();
            UPoly m = F.minimal_polynomial(mu);
            if (std::find(seen.begin(), seen.end(), m) != seen.end()) continue;
            seen.push_back(std::move(m));
            const auto& sub = subfields[F.generated_subfield_degree(mu)];
            mus.push_back(mu);
            nus.push_back(sub[rng() % sub.size()]);
        }
        UPoly f = interpolate(F, mus, nus);
        bool ok = std::all_of(f.begin(), f.end(), [&](std::uint64_t c) { return c < F.p(); });
        for (std::size_t i = 0; i < mus.size() && ok; ++i) ok = F.eval(f, mus[i]) == nus[i];
        ++r.instances;
        r.passed += ok;
    }
    return r;
}

LemmaSuiteReport verify_lemma_suite(std::uint64_t max_q, std::uint64_t max_N, std::uint64_t interpolation_instances,
                                    std::uint64_t seed) {
    LemmaSuiteReport rep;
    std::vector<Field> fields;
    for (std::uint64_t p = 2; p <= max_q; ++p) {
        if (!is_prime(p)) continue;
        std::uint64_t q = p;
        for (unsigned l = 1; q <= max_q; ++l, q *= p) fields.push_back(make_field(p, l));
    }
    for (const auto& F : fields) {
        ++rep.fields;
        for (std::uint64_t N = 1; N <= max_N && N < F.p(); ++N) {
            try {
                verify_count_lemma(F, N);
                ++rep.count_checks;
                rep.enlarge_triples += verify_enlarge_lemma(F, N).triples;
            } catch (const Error& e) {
                rep.failures.push_back(e.what());
            }
        }
    }
    std::vector<const Field*> ext;
    for (const auto& F : fields)
        if (F.ell() > 1) ext.push_back(&F);
    if (ext.empty())
        for (const auto& F : fields) ext.push_back(&F);
    std::uint64_t per = ext.empty() ? 0 : (interpolation_instances + ext.size() - 1) / ext.size();
    std::uint64_t done = 0;
    for (std::size_t i = 0; i < ext.size() && done < interpolation_instances; ++i) {
        std::uint64_t want = std::min(per, interpolation_instances - done);
        auto r = check_interpolation(*ext[i], want, seed + i);
        done += r.instances;
        if (r.passed != r.instances)
            rep.failures.push_back("interpolation failed over " + ext[i]->serialize());
    }
    rep.interpolation_instances = done;
    return rep;
}

}  // namespace tamexp
