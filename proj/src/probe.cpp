#include "tamexp/probe.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "tamexp/error.hpp"
#include "tamexp/interpolate.hpp"

namespace tamexp {

namespace {

struct Ctx {
    const Field& F;
    const GroupParams& params;
    const GammaSpec& gamma;
    std::uint64_t N;
    unsigned ell, n;

    Elem pw(Elem x) const { return F.pow(x, N); }
    // degree of F_p(x^N), 0 for x = 0
    unsigned size(Elem x) const { return x ? F.generated_subfield_degree(pw(x)) : 0; }
    bool conjugate(Elem a, Elem b) const {
        Elem x = a;
        for (unsigned i = 0; i < ell; ++i, x = F.frobenius(x))
            if (x == b) return true;
        return false;
    }
    std::uint64_t t(unsigned i, unsigned j) const { return params.grading.t(i, j); }
};

[[noreturn]] void fail(const std::string& why) { throw Error(Errc::ProbeFailed, why); }

struct State {
    std::vector<Point> pts;
    Word word;
};

void apply(State& st, const Ctx& c, unsigned i, unsigned j, UPoly P) {
    upoly::trim(P);
    if (P.empty()) return;
    GenLetter g = GenLetter::poly_transvection(i, j, P, c.params.grading);
    st.word.push(g);
    for (auto& a : st.pts) apply_letter(c.F, g, 1, a.data(), c.n);
}

// make F_p(psi(1)^N) the whole field while fixing the finished points
void raise_first(State& st, const Ctx& c, unsigned s, const std::vector<Elem>& targets) {
    const Field& F = c.F;
    for (unsigned iter = 0; iter < 4 * c.n * c.ell + 4; ++iter) {
        const Point& psi = st.pts[s];
        unsigned s1 = c.size(psi[0]);
        if (s1 == c.ell) return;
        unsigned best = 1;
        for (unsigned j = 2; j < c.n; ++j)
            if (c.size(psi[j]) > c.size(psi[best])) best = j;
        bool moved = false;
        if (c.size(psi[best]) > s1) {
            Elem alpha = psi[best], at = F.pow(alpha, c.t(0, best));
            for (Elem lam : F.subfield(F.generated_subfield_degree(c.pw(alpha)))) {
                if (c.size(F.add(psi[0], F.mul(lam, at))) >= c.size(alpha)) {
                    apply(st, c, 0, best, interpolate(F, {c.pw(alpha)}, {lam}));
                    moved = true;
                    break;
                }
            }
        } else {
            if (!psi[0]) fail("point is the origin");
            Elem alpha = psi[0];
            std::vector<Elem> lams = F.subfield(F.generated_subfield_degree(c.pw(alpha)));
            for (unsigned j = 1; j < c.n && !moved; ++j) {
                Elem at = F.pow(alpha, c.t(j, 0));
                for (Elem lam : lams) {
                    if (c.size(F.add(psi[j], F.mul(lam, at))) <= s1) continue;
                    std::vector<Elem> mus, nus;
                    for (unsigned i = 0; i < s; ++i) mus.push_back(c.pw(targets[i])), nus.push_back(0);
                    mus.push_back(c.pw(alpha));
                    nus.push_back(lam);
                    apply(st, c, j, 0, interpolate(F, mus, nus));
                    moved = true;
                    break;
                }
            }
        }
        if (!moved) fail("no enlarging move");
    }
    fail("first coordinate did not reach the full field");
}

// a coordinate whose values have N-th powers with distinct minimal polynomials, each generating F
unsigned separate(State& st, const Ctx& c, unsigned s, const std::vector<Elem>& targets) {
    const Field& F = c.F;
    Point& psi = st.pts[s];
    int match = -1;
    for (unsigned i = 0; i < s; ++i)
        if (c.conjugate(c.pw(targets[i]), c.pw(psi[0]))) match = static_cast<int>(i);
    if (match < 0) return 0;

    bool aligned = false;
    for (std::uint64_t b = 0; b < c.gamma.lambda_order && !aligned; ++b) {
        Point q = psi;
        for (std::uint64_t r = 0; r < b; ++r) gamma_apply(F, GammaMove::MLambda, c.gamma, q.data(), c.n);
        for (unsigned a = 0; a < c.ell; ++a) {
            if (q[0] == targets[match]) {
                psi = q;
                aligned = true;
                break;
            }
            gamma_apply(F, GammaMove::Frobenius, c.gamma, q.data(), c.n);
        }
    }
    if (!aligned) fail("no Gamma element aligns the first coordinate");

    unsigned j = 1;
    while (j < c.n && !psi[j]) ++j;
    if (j == c.n) fail("point shares a Gamma-class with a finished point");

    Elem delta = 0;
    for (Elem x = 1; x < F.q() && !delta; ++x) {
        Elem y = F.add(psi[j], x);
        if (c.size(x) == c.ell && c.size(y) == c.ell && !c.conjugate(c.pw(x), c.pw(y))) delta = x;
    }
    if (!delta) fail("no separating shift");

    std::vector<Elem> b(s + 1, 0);
    b[match] = delta;
    b[s] = F.add(psi[j], delta);
    auto clashes = [&](Elem x) {
        for (Elem y : b)
            if (y && c.conjugate(c.pw(x), c.pw(y))) return true;
        return false;
    };
    for (unsigned m = 0; m < s; ++m) {
        if (static_cast<int>(m) == match) continue;
        for (Elem x = 1; x < F.q(); ++x) {
            if (c.size(x) == c.ell && !clashes(x)) {
                b[m] = x;
                break;
            }
        }
        if (!b[m]) fail("not enough Gamma-classes for the new column");
    }
    std::vector<Elem> mus, nus;
    for (unsigned m = 0; m < s; ++m) {
        mus.push_back(c.pw(targets[m]));
        nus.push_back(F.div(b[m], F.pow(targets[m], c.t(j, 0))));
    }
    apply(st, c, j, 0, interpolate(F, mus, nus));
    for (unsigned m = 0; m <= s; ++m)
        if (st.pts[m][j] != b[m]) fail("separating move missed its values");
    return j;
}

void finish(State& st, const Ctx& c, unsigned s, const std::vector<Elem>& targets, unsigned j) {
    const Field& F = c.F;
    unsigned l = 1;
    while (l == j) ++l;
    std::vector<Elem> mus, nus;
    for (unsigned i = 0; i <= s; ++i) {
        Elem ci = st.pts[i][j];
        mus.push_back(c.pw(ci));
        nus.push_back(F.div(F.sub(targets[i], st.pts[i][l]), F.pow(ci, c.t(l, j))));
    }
    apply(st, c, l, j, interpolate(F, mus, nus));

    mus.clear(), nus.clear();
    for (unsigned i = 0; i <= s; ++i) {
        mus.push_back(c.pw(targets[i]));
        nus.push_back(F.div(F.sub(targets[i], st.pts[i][0]), F.pow(targets[i], c.t(0, l))));
    }
    apply(st, c, 0, l, interpolate(F, mus, nus));

    for (unsigned m = 1; m < c.n; ++m) {
        nus.clear();
        for (unsigned i = 0; i <= s; ++i) nus.push_back(F.div(F.neg(st.pts[i][m]), F.pow(targets[i], c.t(m, 0))));
        apply(st, c, m, 0, interpolate(F, mus, nus));
    }
    for (unsigned i = 0; i <= s; ++i) {
        Point want(c.n, 0);
        want[0] = targets[i];
        if (st.pts[i] != want) fail("final moves missed the standard point");
    }
}

}  // namespace

std::vector<Elem> standard_targets(const Field& F, const GradingSpec& g, unsigned k) {
    std::uint64_t N = g.N ? g.N : 1;
    std::vector<Elem> out;
    for (Elem x = 1; x < F.q() && out.size() < k; ++x) {
        Elem xn = F.pow(x, N);
        if (F.generated_subfield_degree(xn) != F.ell()) continue;
        bool fresh = std::none_of(out.begin(), out.end(), [&](Elem y) {
            return F.minimal_polynomial(F.pow(y, N)) == F.minimal_polynomial(xn);
        });
        if (fresh) out.push_back(x);
    }
    if (out.size() < k) throw Error(Errc::NotApplicable, "fewer than k Gamma-classes of standard points");
    return out;
}

TupleSolution map_to_standard(const Field& F, const GroupParams& params, const GammaSpec& gamma,
                              const std::vector<Point>& tuple, WordFactory& words) {
    unsigned n = params.n(), k = static_cast<unsigned>(tuple.size());
    Ctx c{F, params, gamma, params.grading.N ? params.grading.N : 1, F.ell(), n};
    TupleSolution sol;
    sol.targets = standard_targets(F, params.grading, k);
    State st{tuple, {}};
    for (unsigned s = 0; s < k; ++s) {
        raise_first(st, c, s, sol.targets);
        unsigned j = separate(st, c, s, sol.targets);
        finish(st, c, s, sol.targets, j);
    }
    sol.word = st.word;

    std::vector<Point> direct = tuple, expanded = tuple;
    for (const auto& sl : sol.word.letters) {
        Word w = words.poly_transvection(sl.g.i, sl.g.j, sl.g.P);
        sol.expanded_length += w.size();
        for (unsigned i = 0; i < k; ++i) {
            apply_letter(F, sl.g, 1, direct[i].data(), n);
            apply_word(F, w, expanded[i].data(), n);
        }
    }
    sol.certified = direct == expanded;
    for (unsigned i = 0; i < k && sol.certified; ++i) {
        auto cls = gamma_orbit(F, gamma, encode_point(F, direct[i]), n);
        sol.certified = std::binary_search(cls.begin(), cls.end(), PointIndex{sol.targets[i]});
    }
    return sol;
}

ProbeReport transitivity_probe(const GroupParams& params, unsigned ell, const ProbeOptions& opt) {
    Field F = make_field(params.p, ell);
    GammaSpec gamma = make_gamma_spec(F, params.grading);
    unsigned n = params.n();
    double p = static_cast<double>(params.p), E = static_cast<double>(params.grading.E);
    ProbeReport rep;
    rep.k = opt.k;
    rep.trials = opt.trials;
    rep.k_bound = std::pow(p, ell) * (p - E) / (ell * p * E);
    rep.precondition_met = params.grading.E >= 2 && p >= 3 * E - 2 && opt.k >= 1 && opt.k <= rep.k_bound;
    rep.targets = standard_targets(F, params.grading, opt.k);

    WordFactory words(params);
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<Elem> pick(0, F.q() - 1);
    for (unsigned trial = 0; trial < opt.trials; ++trial) {
        std::vector<Point> tuple;
        std::set<PointIndex> classes;
        while (tuple.size() < opt.k) {
            Point a(n);
            for (auto& x : a) x = pick(rng);
            if (orbit_invariant(F, a, params.grading).zero || compute_A0(F, a, params.grading) != ell) continue;
            if (!classes.insert(gamma_orbit(F, gamma, encode_point(F, a), n).front()).second) continue;
            tuple.push_back(a);
        }
        bool ok = false;
        std::string why = "word not certified";
        try {
            TupleSolution sol = map_to_standard(F, params, gamma, tuple, words);
            ok = sol.certified;
            rep.longest_word = std::max(rep.longest_word, sol.word.size());
            rep.longest_expansion = std::max(rep.longest_expansion, sol.expanded_length);
        } catch (const Error& e) {
            if (e.code() != Errc::ProbeFailed) throw;
            why = e.what();
        }
        if (ok) {
            ++rep.successes;
            continue;
        }
        std::vector<PointIndex> idx;
        std::string list;
        for (const auto& a : tuple) {
            idx.push_back(encode_point(F, a));
            list += " " + std::to_string(idx.back());
        }
        rep.failures.push_back(idx);
        if (rep.precondition_met) throw Error(Errc::ProbeFailed, "tuple" + list + ": " + why);
    }
    return rep;
}

}  // namespace tamexp
