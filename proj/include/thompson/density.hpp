// Exact sphere sizes for both stratifications, the bound checks against the
// counting lemmas, the cyclic/abelian classifier for sampled tuples, Monte
// Carlo density estimation with Wilson intervals, and the closed-form lower
// bound formulas evaluated at mu = 8 + 4 sqrt(3).
//
// Cyclic test for a commuting pair f, g (both nontrivial): powers of a common
// element share their fixed-point set, so the support infima must agree; at
// that point the slope exponents r_f, r_g are nonzero, and any relation
// f^a = g^b forces (a, b) proportional to (r_g, r_f)/gcd. Torsion-freeness
// (a finitely generated abelian subgroup of F is free abelian) makes the
// single test f^{r_g/d} = g^{r_f/d} sound and complete.
#pragma once

#include "sampling.hpp"
#include "stats.hpp"

#include <atomic>
#include <cstdio>
#include <map>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

namespace thompson {

// ---------------------------------------------------------------------------
// Sphere sizes and bounds
// ---------------------------------------------------------------------------

/// Exact count of unordered k-tuples in the sphere of radius n.
inline BigInt sphere_size(StratumKind kind, int k, int n, const BigSeq& r) {
    if (k < 1 || n < 1) throw std::invalid_argument("sphere_size: k, n must be >= 1");
    if (kind == StratumKind::Sum) {
        if (n < k) return 0;
        int smax = n - k + 1;
        // dp[j][m] over sizes 1..s processed so far
        std::vector<std::vector<BigInt>> dp(k + 1, std::vector<BigInt>(n + 1, BigInt(0)));
        dp[0][0] = 1;
        for (int s = 1; s <= smax; ++s)
            for (int j = k; j >= 1; --j)
                for (int m = n; m >= s; --m) {
                    BigInt add = 0;
                    for (int t = 1; t <= j && t * s <= m; ++t)
                        add += multichoose(r.at(s), static_cast<unsigned>(t)) * dp[j - t][m - t * s];
                    dp[j][m] += add;
                }
        return dp[k][n];
    }
    BigInt pool = 0, pool_prev = 0;
    for (int s = 1; s <= n; ++s) {
        if (s <= n - 1) pool_prev += r.at(s);
        pool += r.at(s);
    }
    return multichoose(pool, static_cast<unsigned>(k)) - multichoose(pool_prev, static_cast<unsigned>(k));
}

struct BoundsReport {
    int k_max = 0;
    int n_max = 0;
    bool ok = false;
    std::string detail;
};

/// r_{n-k+1} <= |Sph^sum_k(n)| <= r_{n+k-1} for 1 <= k <= k_max, k <= n <= N.
inline BoundsReport check_sum_bounds(int k_max, int N, const BigSeq& r) {
    for (int k = 1; k <= k_max; ++k)
        for (int n = k; n <= N; ++n) {
            BigInt s = sphere_size(StratumKind::Sum, k, n, r);
            if (s < r.at(n - k + 1) || s > r.at(n + k - 1))
                throw std::logic_error("sum sphere bound violated at k=" + std::to_string(k) +
                                       " n=" + std::to_string(n));
        }
    return BoundsReport{k_max, N, true, "sum sphere bounds hold"};
}

/// (1/k!) r_n^k <= |Sph^max_k(n)| <= k r_n^k for 1 <= k <= k_max, 1 <= n <= N.
inline BoundsReport check_max_bounds(int k_max, int N, const BigSeq& r) {
    for (int k = 1; k <= k_max; ++k) {
        BigInt kfac = 1;
        for (int t = 2; t <= k; ++t) kfac *= t;
        for (int n = 1; n <= N; ++n) {
            BigInt s = sphere_size(StratumKind::Max, k, n, r);
            BigInt rk = 1;
            for (int t = 0; t < k; ++t) rk *= r.at(n);
            if (s * kfac < rk || s > k * rk)
                throw std::logic_error("max sphere bound violated at k=" + std::to_string(k) +
                                       " n=" + std::to_string(n));
        }
    }
    return BoundsReport{k_max, N, true, "max sphere bounds hold"};
}

// ---------------------------------------------------------------------------
// Classifier
// ---------------------------------------------------------------------------

enum class ClassLabel { Trivial, CyclicZ, Z2, AbelianCommuting, NonabelianUnclassified };

inline std::string to_string(ClassLabel l) {
    switch (l) {
        case ClassLabel::Trivial: return "TRIVIAL";
        case ClassLabel::CyclicZ: return "CYCLIC_Z";
        case ClassLabel::Z2: return "Z2";
        case ClassLabel::AbelianCommuting: return "ABELIAN_COMMUTING";
        case ClassLabel::NonabelianUnclassified: return "NONABELIAN_UNCLASSIFIED";
    }
    return "?";
}

inline ClassLabel class_label_from_string(const std::string& s) {
    if (s == "TRIVIAL") return ClassLabel::Trivial;
    if (s == "CYCLIC_Z") return ClassLabel::CyclicZ;
    if (s == "Z2") return ClassLabel::Z2;
    if (s == "ABELIAN_COMMUTING") return ClassLabel::AbelianCommuting;
    if (s == "NONABELIAN_UNCLASSIFIED") return ClassLabel::NonabelianUnclassified;
    throw std::invalid_argument("unknown class label: " + s);
}

namespace detail {

/// Support endpoints plus slope exponents there; cheap rejector data.
struct SupportSignature {
    Dyadic inf, sup;
    int slope_inf = 0, slope_sup = 0;
};

inline SupportSignature support_signature(const Element& e) {
    PLMap m = to_plmap(e);
    auto s = m.support();
    SupportSignature sig;
    sig.inf = s->first;
    sig.sup = s->second;
    sig.slope_inf = m.first_slope_exponent();
    // slope immediately left of the supremum
    const auto& pts = m.breakpoints();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        if (pts[i + 1].x == sig.sup) sig.slope_sup = m.slope_exponent(i);
    return sig;
}

inline long gcd_long(long a, long b) { return std::gcd(a, b); }

} // namespace detail

/// True iff f, g (both nontrivial) generate an infinite cyclic group.
inline bool cyclic_pair(const Element& f, const Element& g) {
    if (f == g || f == invert(g)) return true;
    auto sf = detail::support_signature(f);
    auto sg = detail::support_signature(g);
    if (sf.inf != sg.inf || sf.sup != sg.sup) return false;
    // cross-ratio test at both ends: exponents must be proportional
    if (static_cast<long>(sf.slope_inf) * sg.slope_sup != static_cast<long>(sg.slope_inf) * sf.slope_sup)
        return false;
    if (!commute(f, g)) return false;
    long rf = sf.slope_inf, rg = sg.slope_inf;
    long d = detail::gcd_long(std::abs(rf), std::abs(rg));
    return power(f, rg / d) == power(g, rf / d);
}

/// True iff the nontrivial members of the tuple generate Z. All-identity
/// tuples give false (the trivial group).
inline bool is_cyclic_tuple(const std::vector<Element>& fs) {
    std::vector<const Element*> nontrivial;
    for (const auto& f : fs)
        if (!f.is_identity()) nontrivial.push_back(&f);
    if (nontrivial.empty()) return false;
    for (std::size_t i = 0; i < nontrivial.size(); ++i)
        for (std::size_t j = i + 1; j < nontrivial.size(); ++j)
            if (!cyclic_pair(*nontrivial[i], *nontrivial[j])) return false;
    return true;
}

/// Sound classification: every label except the two catch-alls is provably
/// correct for the tuple (rank-2 certification comes from a failed cyclic
/// test; a 2-generated commuting non-cyclic subgroup is free abelian).
inline ClassLabel classify(const std::vector<Element>& tuple) {
    bool all_id = true;
    for (const auto& e : tuple)
        if (!e.is_identity()) all_id = false;
    if (all_id) return ClassLabel::Trivial;
    if (is_cyclic_tuple(tuple)) return ClassLabel::CyclicZ;
    bool commuting = true;
    for (std::size_t i = 0; i < tuple.size() && commuting; ++i)
        for (std::size_t j = i + 1; j < tuple.size() && commuting; ++j)
            if (!commute(tuple[i], tuple[j])) commuting = false;
    if (!commuting) return ClassLabel::NonabelianUnclassified;
    return tuple.size() == 2 ? ClassLabel::Z2 : ClassLabel::AbelianCommuting;
}

inline ClassLabel classify(const TupleSample& t) { return classify(t.elements); }

// ---------------------------------------------------------------------------
// Density estimation
// ---------------------------------------------------------------------------

struct DensityEstimate {
    StratumSpec stratum;
    ClassLabel label = ClassLabel::CyclicZ;
    double estimate = 0;
    double ci_low = 0, ci_high = 0;
    std::uint64_t hits = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    bool exact = false;
};

inline constexpr std::uint64_t kExactModeCutoff = 10'000'000;

namespace detail {

/// Enumerate every unordered tuple of the sphere (small cases only), calling
/// fn on each. Sizes are processed descending; within a size class the
/// multiset is a combination with repetition over the enumerated pool.
template <typename Fn>
void for_each_sphere_tuple(const StratumSpec& spec, Fn&& fn) {
    int top = spec.kind == StratumKind::Sum ? spec.n - spec.k + 1 : spec.n;
    std::vector<std::vector<Element>> pools(top + 1);
    for (int s = 1; s <= top; ++s)
        for (const auto& p : enumerate_reduced_pairs(s)) pools[s].push_back(Element(p));

    std::vector<Element> current;
    std::function<void(int, int, int, bool)> by_size = [&](int s, int slots, int carets, bool used_n) {
        if (slots == 0) {
            if (spec.kind == StratumKind::Sum ? carets == 0 : used_n) fn(current);
            return;
        }
        if (s == 0) return;
        std::function<void(int, int, int)> choose = [&](int idx, int chosen, int carets_left) {
            by_size(s - 1, slots - chosen, carets_left, used_n || (chosen > 0 && s == spec.n));
            if (chosen == slots) return;
            if (spec.kind == StratumKind::Sum && carets_left < s) return;
            for (int i = idx; i < static_cast<int>(pools[s].size()); ++i) {
                current.push_back(pools[s][i]);
                choose(i, chosen + 1, spec.kind == StratumKind::Sum ? carets_left - s : carets_left);
                current.pop_back();
            }
        };
        choose(0, 0, carets);
    };
    by_size(top, spec.k, spec.kind == StratumKind::Sum ? spec.n : 0, false);
}

} // namespace detail

/// Monte Carlo (or exact, when the sphere is within brute-force reach)
/// estimate of the density of `label` in the given sphere. Progress, when
/// requested, goes to stderr, never to stdout.
inline DensityEstimate estimate_density(const StratumSpec& spec, ClassLabel label, std::uint64_t samples,
                                        std::uint64_t seed, const BigSeq& r, int threads = 1,
                                        bool progress = false) {
    DensityEstimate est;
    est.stratum = spec;
    est.label = label;
    est.seed = seed;

    BigInt sphere = sphere_size(spec.kind, spec.k, spec.n, r);
    int enum_cap = std::min(spec.n, spec.kind == StratumKind::Sum ? spec.n - spec.k + 1 : spec.n);
    if (sphere <= kExactModeCutoff && enum_cap <= kPairEnumerationCap) {
        BigInt total = 0, hits = 0;
        detail::for_each_sphere_tuple(spec, [&](const std::vector<Element>& tuple) {
            ++total;
            if (classify(tuple) == label) ++hits;
        });
        if (total != sphere) throw std::logic_error("sphere enumeration does not match sphere size");
        est.exact = true;
        est.samples = total.convert_to<std::uint64_t>();
        est.hits = hits.convert_to<std::uint64_t>();
        est.estimate = Real(Real(hits) / Real(total)).convert_to<double>();
        est.ci_low = est.ci_high = est.estimate;
        return est;
    }

    TupleSampler sampler(spec, r);
    const std::uint64_t block = 4096;
    std::atomic<std::uint64_t> next_block{0};
    std::atomic<std::uint64_t> hits{0};
    std::atomic<std::uint64_t> done{0};
    std::uint64_t nblocks = (samples + block - 1) / block;
    std::uint64_t report_every = std::max<std::uint64_t>(1, nblocks / 20);
    RngStream root(seed, 0x7af31u ^ (static_cast<std::uint64_t>(spec.k) << 8) ^
                             (static_cast<std::uint64_t>(spec.n) << 16) ^
                             (spec.kind == StratumKind::Max ? 1u : 0u));
    auto worker = [&]() {
        for (;;) {
            std::uint64_t b = next_block.fetch_add(1);
            if (b >= nblocks) return;
            RngStream rng = root.split(b);
            std::uint64_t lo = b * block, hi = std::min(samples, lo + block);
            std::uint64_t local = 0;
            for (std::uint64_t i = lo; i < hi; ++i) {
                TupleSample t = sampler.draw(rng);
                if (classify(t) == label) ++local;
            }
            hits.fetch_add(local);
            std::uint64_t d = done.fetch_add(1) + 1;
            if (progress && d % report_every == 0)
                std::fprintf(stderr, "estimate n=%d: %.0f%%\n", spec.n,
                             100.0 * static_cast<double>(d) / static_cast<double>(nblocks));
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    est.samples = samples;
    est.hits = hits.load();
    est.estimate = samples ? static_cast<double>(est.hits) / static_cast<double>(samples) : 0.0;
    auto ci = wilson_interval(est.hits, est.samples);
    est.ci_low = ci.low;
    est.ci_high = ci.high;
    return est;
}

// ---------------------------------------------------------------------------
// Exhaustive cyclic-pair counting (k = 2)
// ---------------------------------------------------------------------------

/// counts[n] = number of unordered pairs {f, g} with max caret count exactly n
/// generating Z, for 1 <= n <= max_n. Elements are bucketed by their support
/// signature first; only same-bucket pairs can be powers of a common element.
inline std::vector<long> count_cyclic_pairs_exhaustive(int max_n, int threads = 1) {
    std::vector<Element> all;
    for (int s = 1; s <= max_n; ++s)
        for (const auto& p : enumerate_reduced_pairs(s)) all.push_back(Element(p));

    // identity partners: {f, id} is cyclic for every f != id
    std::vector<long> counts(max_n + 1, 0);
    for (const auto& e : all)
        if (!e.is_identity()) ++counts[e.carets()];

    struct Entry {
        const Element* e;
        detail::SupportSignature sig;
    };
    std::map<std::pair<std::string, std::string>, std::vector<Entry>> buckets;
    for (const auto& e : all) {
        if (e.is_identity()) continue;
        auto sig = detail::support_signature(e);
        buckets[{sig.inf.str(), sig.sup.str()}].push_back(Entry{&e, sig});
    }

    std::vector<const std::vector<Entry>*> bucket_list;
    for (const auto& [key, v] : buckets) bucket_list.push_back(&v);
    std::atomic<std::size_t> next{0};
    std::vector<std::vector<long>> partial(threads > 1 ? threads : 1, std::vector<long>(max_n + 1, 0));

    auto run = [&](int tid) {
        auto& local = partial[tid];
        for (;;) {
            std::size_t b = next.fetch_add(1);
            if (b >= bucket_list.size()) return;
            const auto& v = *bucket_list[b];
            for (std::size_t i = 0; i < v.size(); ++i) {
                local[v[i].e->carets()] += 1; // {f, f}
                for (std::size_t j = i + 1; j < v.size(); ++j) {
                    const auto &a = v[i], &c = v[j];
                    if (static_cast<long>(a.sig.slope_inf) * c.sig.slope_sup !=
                        static_cast<long>(c.sig.slope_inf) * a.sig.slope_sup)
                        continue;
                    if (*a.e == invert(*c.e)) {
                        ++local[std::max(a.e->carets(), c.e->carets())];
                        continue;
                    }
                    if (!commute(*a.e, *c.e)) continue;
                    long rf = a.sig.slope_inf, rg = c.sig.slope_inf;
                    long d = detail::gcd_long(std::abs(rf), std::abs(rg));
                    if (power(*a.e, rg / d) == power(*c.e, rf / d))
                        ++local[std::max(a.e->carets(), c.e->carets())];
                }
            }
        }
    };
    if (threads <= 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(run, t);
        for (auto& th : pool) th.join();
    }
    for (const auto& local : partial)
        for (int n = 1; n <= max_n; ++n) counts[n] += local[n];
    return counts;
}

// ---------------------------------------------------------------------------
// Theoretical bounds and construction masses
// ---------------------------------------------------------------------------

/// A closed-form density lower bound; `lambda_pending` marks the bounds that
/// carry an unknown factor lambda_k in (0,1].
struct BoundValue {
    Real value;
    bool lambda_pending = false;
};

inline BoundValue theoretical_bound(const std::string& name, const std::vector<long>& params) {
    Real mu = growth_mu();
    auto need = [&](std::size_t m) {
        if (params.size() != m)
            throw std::invalid_argument("theoretical_bound: " + name + " takes " + std::to_string(m) +
                                        " parameter(s)");
    };
    if (name == "specs_sum") { // visibility of an m-generator subgroup, sum stratification
        need(2);
        long s = params[0], k = params[1];
        return {pow(mu, -static_cast<int>(s - 1 + 2 * k)), false};
    }
    if (name == "lemma_z") { // Z^k in the max k-spectrum
        need(1);
        long k = params[0];
        return {pow(mu, -static_cast<int>(k * k - k)) / static_cast<int>(k), false};
    }
    if (name == "spec2") { // H or H x Z in the max 2-spectrum
        need(2);
        long n1 = params[0], n2 = params[1];
        return {pow(mu, -static_cast<int>(n1 + n2 + 4)) / 2, false};
    }
    if (name == "fpersis") { // F in the max k-spectrum
        need(1);
        long k = params[0];
        return {pow(mu, -9 - 3 * static_cast<int>(k - 2)) / static_cast<int>(k), false};
    }
    if (name == "product_z") { // H x Z from a visible H (coefficient of lambda_k)
        need(1);
        long k = params[0];
        return {pow(mu, -static_cast<int>(k + 1)) / static_cast<int>(k + 1), true};
    }
    if (name == "wreath") { // H wr Z from a visible H (coefficient of lambda_k)
        need(1);
        long k = params[0];
        return {pow(mu, -3 * static_cast<int>(k) - 3) / static_cast<int>(k + 1), true};
    }
    throw std::invalid_argument("theoretical_bound: unknown name " + name);
}

/// Exact count of tuples produced by the named construction at radius n.
inline BigInt count_construction_mass(const std::string& name, int k, int n, const BigSeq& r) {
    if (name == "lemma_z") {
        BigInt v = 1;
        for (int i = 0; i < k; ++i) v *= r.at(n - k + 1);
        return v;
    }
    if (name == "fpersis") {
        if (k < 2) throw std::invalid_argument("fpersis mass needs k >= 2");
        BigInt v = r.at(n - 4) * r.at(n - 5);
        for (int i = 0; i < k - 2; ++i) v *= r.at(n - 3);
        return v;
    }
    throw std::invalid_argument("count_construction_mass: unknown name " + name);
}

} // namespace thompson
