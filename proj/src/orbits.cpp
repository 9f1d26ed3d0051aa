#include "tamexp/orbits.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "tamexp/error.hpp"
#include "tamexp/parallel.hpp"

namespace tamexp {

std::uint64_t point_count(const Field& F, unsigned n) {
    std::uint64_t total = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (total > (std::uint64_t{1} << 62) / F.q())
            throw Error(Errc::BudgetExceeded, "q^n does not fit a 64-bit point index");
        total *= F.q();
    }
    return total;
}

PointIndex encode_point(const Field& F, const Elem* a, unsigned n) {
    PointIndex x = 0;
    for (unsigned i = n; i-- > 0;) x = x * F.q() + a[i];
    return x;
}

void decode_point(const Field& F, PointIndex x, Elem* a, unsigned n) {
    for (unsigned i = 0; i < n; ++i) {
        a[i] = x % F.q();
        x /= F.q();
    }
}

Point decode_point(const Field& F, PointIndex x, unsigned n) {
    Point a(n);
    decode_point(F, x, a.data(), n);
    return a;
}

std::string to_string(const OrbitInvariant& inv) {
    if (inv.zero) return "zero";
    return "d0=" + std::to_string(inv.d0) + " a1=" + std::to_string(inv.a1_label);
}

namespace {

// E = 1 is graded trivially
std::uint64_t grading_modulus(const GradingSpec& g) { return g.N ? g.N : 1; }

// first coordinate after x_1 += x_i^{t_{1,i}} for the first nonzero a_i, or 0 for the origin
Elem leading_value(const Field& F, const Point& phi, const GradingSpec& g) {
    if (phi[0]) return phi[0];
    for (unsigned i = 1; i < phi.size(); ++i)
        if (phi[i]) return F.pow(phi[i], g.t(0, i));
    return 0;
}

unsigned a0_degree(const Field& F, const Point& phi, Elem a1, const GradingSpec& g) {
    std::uint64_t N = grading_modulus(g);
    unsigned d0 = F.generated_subfield_degree(F.pow(a1, N));
    for (unsigned i = 1; i < phi.size(); ++i) {
        if (!phi[i]) continue;
        Elem v = F.div(phi[i], F.pow(a1, g.d(i)));
        d0 = std::lcm(d0, F.generated_subfield_degree(v));
    }
    return d0;
}

Point moved_point(const Field& F, const Point& phi, const GradingSpec& g) {
    Point a = phi;
    a[0] = leading_value(F, phi, g);
    return a;
}

}  // namespace

unsigned compute_A0(const Field& F, const Point& phi, const GradingSpec& g) {
    Point a = moved_point(F, phi, g);
    if (!a[0]) return 1;
    return a0_degree(F, a, a[0], g);
}

OrbitInvariant orbit_invariant(const Field& F, const Point& phi, const GradingSpec& g) {
    Point a = moved_point(F, phi, g);
    if (!a[0]) return {1, 0, true};
    OrbitInvariant inv;
    inv.d0 = a0_degree(F, a, a[0], g);
    std::uint64_t N = grading_modulus(g);
    std::uint64_t pd = 1;
    for (unsigned i = 0; i < inv.d0; ++i) pd *= F.p();
    for (Elem beta = 1; beta < F.q(); ++beta) {
        Elem ratio = F.div(beta, a[0]);
        if (F.pow(ratio, pd) == ratio && F.generated_subfield_degree(F.pow(beta, N)) == inv.d0) {
            inv.a1_label = beta;
            break;
        }
    }
    return inv;
}

GammaSpec make_gamma_spec(const Field& F, const GradingSpec& g) {
    GammaSpec s;
    s.ell = F.ell();
    s.exponent.assign(g.n(), 0);
    if (g.N <= 1) return s;
    s.lambda_order = std::gcd(g.N, F.q() - 1);
    for (Elem x = 1; x < F.q(); ++x)
        if (F.order(x) == s.lambda_order) {
            s.lambda = x;
            break;
        }
    s.exponent = g.deg;
    return s;
}

void gamma_apply(const Field& F, GammaMove which, const GammaSpec& gamma, Elem* a, unsigned n) {
    for (unsigned i = 0; i < n; ++i)
        a[i] = which == GammaMove::Frobenius ? F.frobenius(a[i]) : F.mul(a[i], F.pow(gamma.lambda, gamma.exponent[i]));
}

Point gamma_apply(const Field& F, GammaMove which, const GammaSpec& gamma, const Point& a) {
    Point b = a;
    gamma_apply(F, which, gamma, b.data(), static_cast<unsigned>(b.size()));
    return b;
}

bool gamma_commutes(const Field& F, const GroupParams& params, const GammaSpec& gamma) {
    unsigned n = params.n();
    std::uint64_t total = point_count(F, n);
    if (total > 1'000'000) throw Error(Errc::BudgetExceeded, "commutation check limited to 10^6 points");
    auto gens = standard_generators(params);
    Point a(n), b(n);
    for (PointIndex x = 0; x < total; ++x) {
        for (GammaMove m : {GammaMove::Frobenius, GammaMove::MLambda}) {
            for (const auto& g : gens) {
                decode_point(F, x, a.data(), n);
                b = a;
                apply_letter(F, g, 1, a.data(), n);
                gamma_apply(F, m, gamma, a.data(), n);
                gamma_apply(F, m, gamma, b.data(), n);
                apply_letter(F, g, 1, b.data(), n);
                if (a != b) return false;
            }
        }
    }
    return true;
}

std::vector<PointIndex> gamma_orbit(const Field& F, const GammaSpec& gamma, PointIndex x, unsigned n) {
    std::vector<PointIndex> seen{x};
    Point a(n);
    for (std::size_t k = 0; k < seen.size(); ++k) {
        for (GammaMove m : {GammaMove::Frobenius, GammaMove::MLambda}) {
            decode_point(F, seen[k], a.data(), n);
            gamma_apply(F, m, gamma, a.data(), n);
            PointIndex y = encode_point(F, a.data(), n);
            if (std::find(seen.begin(), seen.end(), y) == seen.end()) seen.push_back(y);
        }
    }
    std::sort(seen.begin(), seen.end());
    return seen;
}

std::vector<PointIndex> OrbitPartition::members(std::size_t orbit) const {
    if (label.empty()) throw Error(Errc::NotApplicable, "members need the exhaustive partition");
    std::vector<PointIndex> out;
    out.reserve(orbits.at(orbit).size);
    for (PointIndex x = 0; x < total; ++x)
        if (label[x] == orbit) out.push_back(x);
    return out;
}

namespace {

void finish_partition(OrbitPartition& part, const Field& F, const GroupParams& params) {
    for (auto& o : part.orbits) o.invariant = orbit_invariant(F, decode_point(F, o.representative, part.n), params.grading);
    std::vector<std::size_t> order(part.orbits.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto &x = part.orbits[a], &y = part.orbits[b];
        return std::tie(x.size, x.representative) < std::tie(y.size, y.representative);
    });
    std::vector<OrbitInfo> sorted;
    std::vector<std::uint32_t> rename(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        sorted.push_back(part.orbits[order[k]]);
        rename[order[k]] = static_cast<std::uint32_t>(k);
    }
    part.orbits = std::move(sorted);
    for (auto& l : part.label) l = rename[l];

    std::vector<OrbitInvariant> invs;
    for (const auto& o : part.orbits) invs.push_back(o.invariant);
    std::sort(invs.begin(), invs.end());
    part.invariants_distinct = std::adjacent_find(invs.begin(), invs.end()) == invs.end();
    part.sufficiency_applies = params.grading.E >= 2 && params.p >= params.grading.E;
}

void bfs_partition(OrbitPartition& part, const Field& F, const std::vector<GenLetter>& gens) {
    unsigned n = part.n;
    std::vector<std::atomic<std::uint64_t>> bits((part.total + 63) / 64);
    for (auto& w : bits) w.store(0, std::memory_order_relaxed);
    auto claim = [&](PointIndex x) {
        std::uint64_t mask = std::uint64_t{1} << (x & 63);
        return !(bits[x >> 6].fetch_or(mask, std::memory_order_relaxed) & mask);
    };
    part.label.assign(part.total, 0);
    std::mutex mu;
    for (PointIndex s = 0; s < part.total; ++s) {
        if (bits[s >> 6].load(std::memory_order_relaxed) >> (s & 63) & 1) continue;
        auto id = static_cast<std::uint32_t>(part.orbits.size());
        claim(s);
        part.label[s] = id;
        std::uint64_t size = 1;
        std::vector<PointIndex> frontier{s}, next;
        while (!frontier.empty()) {
            next.clear();
            parallel_for(0, frontier.size(), [&](std::uint64_t lo, std::uint64_t hi) {
                std::vector<PointIndex> found;
                std::vector<Elem> a(n), b(n);
                for (std::uint64_t k = lo; k < hi; ++k) {
                    decode_point(F, frontier[k], a.data(), n);
                    for (const auto& g : gens) {
                        b = a;
                        apply_letter(F, g, 1, b.data(), n);
                        PointIndex y = encode_point(F, b.data(), n);
                        if (claim(y)) {
                            part.label[y] = id;
                            found.push_back(y);
                        }
                    }
                }
                std::lock_guard<std::mutex> lock(mu);
                next.insert(next.end(), found.begin(), found.end());
            }, 1024);
            size += next.size();
            frontier.swap(next);
        }
        part.orbits.push_back({size, s, {}, true});
    }
}

void stratified_partition(OrbitPartition& part, const Field& F, const GroupParams& params,
                          const std::vector<GenLetter>& gens) {
    unsigned n = part.n;
    std::map<OrbitInvariant, OrbitInfo> classes;
    std::mutex mu;
    parallel_for(0, part.total, [&](std::uint64_t lo, std::uint64_t hi) {
        std::map<OrbitInvariant, OrbitInfo> local;
        Point a(n);
        for (PointIndex x = lo; x < hi; ++x) {
            decode_point(F, x, a.data(), n);
            auto& c = local.try_emplace(orbit_invariant(F, a, params.grading), OrbitInfo{0, x, {}, false}).first->second;
            ++c.size;
        }
        std::lock_guard<std::mutex> lock(mu);
        for (auto& [inv, c] : local) {
            auto [it, fresh] = classes.try_emplace(inv, c);
            if (!fresh) {
                it->second.size += c.size;
                it->second.representative = std::min(it->second.representative, c.representative);
            }
        }
    }, 1 << 16);

    constexpr std::uint64_t kConnectCap = 1'000'000;
    for (auto& [inv, c] : classes) {
        c.invariant = inv;
        if (c.size > kConnectCap) continue;
        std::unordered_set<PointIndex> seen{c.representative};
        std::vector<PointIndex> queue{c.representative};
        Point a(n);
        for (std::size_t k = 0; k < queue.size(); ++k) {
            for (const auto& g : gens) {
                decode_point(F, queue[k], a.data(), n);
                apply_letter(F, g, 1, a.data(), n);
                PointIndex y = encode_point(F, a.data(), n);
                if (seen.insert(y).second) queue.push_back(y);
            }
        }
        c.connected = seen.size() == c.size;
        part.orbits.push_back(c);
    }
    for (auto& [inv, c] : classes)
        if (c.size > kConnectCap) part.orbits.push_back(c);
}

}  // namespace

OrbitPartition orbit_partition(const GroupParams& params, unsigned ell) {
    Field F = make_field(params.p, ell);
    OrbitPartition part;
    part.n = params.n();
    part.total = point_count(F, part.n);
    if (part.total > kStratifiedOrbitLimit)
        throw Error(Errc::BudgetExceeded, "q^n = " + std::to_string(part.total) + " exceeds 10^9 points");
    auto gens = standard_generators(params);
    if (part.total <= kExhaustiveOrbitLimit) {
        bfs_partition(part, F, gens);
    } else {
        part.exhaustive = false;
        stratified_partition(part, F, params, gens);
    }
    finish_partition(part, F, params);
    return part;
}

namespace {

std::size_t position(const std::vector<PointIndex>& points, PointIndex x) {
    auto it = std::lower_bound(points.begin(), points.end(), x);
    if (it == points.end() || *it != x) throw Error(Errc::NotApplicable, "point set is not invariant");
    return static_cast<std::size_t>(it - points.begin());
}

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a), b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

GammaClasses gamma_classes(const Field& F, unsigned n, const std::vector<PointIndex>& points,
                           const GammaSpec& gamma) {
    if (!std::is_sorted(points.begin(), points.end()))
        throw Error(Errc::NotApplicable, "point set must be sorted");
    UnionFind uf(points.size());
    Point a(n);
    for (std::size_t k = 0; k < points.size(); ++k) {
        for (GammaMove m : {GammaMove::Frobenius, GammaMove::MLambda}) {
            decode_point(F, points[k], a.data(), n);
            gamma_apply(F, m, gamma, a.data(), n);
            uf.unite(static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(position(points, encode_point(F, a.data(), n))));
        }
    }
    GammaClasses out;
    out.class_of.resize(points.size());
    std::vector<std::uint64_t> sizes;
    std::vector<std::uint32_t> id_of_root(points.size(), UINT32_MAX);
    for (std::size_t k = 0; k < points.size(); ++k) {
        std::uint32_t r = uf.find(static_cast<std::uint32_t>(k));
        if (id_of_root[r] == UINT32_MAX) {
            id_of_root[r] = static_cast<std::uint32_t>(out.representatives.size());
            out.representatives.push_back(points[r]);
            sizes.push_back(0);
        }
        out.class_of[k] = id_of_root[r];
        ++sizes[id_of_root[r]];
    }
    out.class_count = sizes.size();
    for (auto s : sizes) ++out.histogram[s];
    return out;
}

LargeOrbitReport check_large_orbit(const GroupParams& params, unsigned ell, const OrbitPartition& part) {
    if (params.p < params.grading.E) throw Error(Errc::NotApplicable, "needs p >= E");
    LargeOrbitReport r;
    for (const auto& o : part.orbits)
        if (!o.invariant.zero && o.invariant.d0 == ell) r.orbit_size += o.size;
    std::uint64_t N = params.grading.E - 1, pn = 1, Nn = 1;
    for (unsigned i = 0; i < params.n(); ++i) pn *= params.p, Nn *= N;
    std::uint64_t top = 1, lower = 1;
    for (unsigned i = 0; i < ell; ++i) top *= pn;
    for (unsigned i = 1; i < ell; ++i) lower *= pn;
    r.lower_bound = top - Nn * lower;
    r.holds = r.orbit_size >= r.lower_bound;
    r.strict = r.orbit_size > r.lower_bound;
    if (!r.holds)
        throw Error(Errc::BoundViolated, "orbit of size " + std::to_string(r.orbit_size) + " below " +
                                             std::to_string(r.lower_bound));
    return r;
}

LargeOrbitReport check_large_orbit(const GroupParams& params, unsigned ell) {
    return check_large_orbit(params, ell, orbit_partition(params, ell));
}

Perm action_perm(const Field& F, const Word& w, unsigned n, const std::vector<PointIndex>& domain) {
    Perm P(domain.size());
    Point a(n);
    for (std::size_t k = 0; k < domain.size(); ++k) {
        decode_point(F, domain[k], a.data(), n);
        apply_word(F, w, a.data(), n);
        P[k] = static_cast<std::uint32_t>(position(domain, encode_point(F, a.data(), n)));
    }
    return P;
}

Perm nonzero_action(const Field& F, const Word& w, unsigned n) {
    std::uint64_t total = point_count(F, n);
    if (total - 1 > UINT32_MAX) throw Error(Errc::BudgetExceeded, "permutation domain too large");
    Perm P(total - 1);
    Point a(n);
    for (PointIndex x = 1; x < total; ++x) {
        decode_point(F, x, a.data(), n);
        apply_word(F, w, a.data(), n);
        PointIndex y = encode_point(F, a.data(), n);
        if (!y) throw Error(Errc::NotApplicable, "word moves a point to the origin");
        P[x - 1] = static_cast<std::uint32_t>(y - 1);
    }
    return P;
}

Perm class_action(const Field& F, const Word& w, unsigned n, const std::vector<PointIndex>& points,
                  const GammaClasses& classes) {
    Perm P(classes.class_count);
    Point a(n);
    for (std::size_t c = 0; c < classes.class_count; ++c) {
        decode_point(F, classes.representatives[c], a.data(), n);
        apply_word(F, w, a.data(), n);
        P[c] = classes.class_of[position(points, encode_point(F, a.data(), n))];
    }
    return P;
}

std::string orbit_dot(const Field& F, const GroupParams& params, const std::vector<PointIndex>& orbit) {
    if (orbit.size() > 2000) throw Error(Errc::BudgetExceeded, "DOT export limited to 2000 points");
    unsigned n = params.n();
    auto gens = standard_generators(params);
    std::ostringstream os;
    os << "digraph orbit {\n";
    Point a(n);
    for (PointIndex x : orbit) {
        for (std::size_t g = 0; g < gens.size(); ++g) {
            decode_point(F, x, a.data(), n);
            apply_letter(F, gens[g], 1, a.data(), n);
            os << "  " << x << " -> " << encode_point(F, a.data(), n) << " [label=\"tau" << g + 1 << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace tamexp
