// Uniform random generation: trees by leaf-edge growth (Remy), reduced pairs
// by rejection, and unordered k-tuples from the sum and max spheres by exact
// multiset sampling. Tuple sampling is exactly uniform over UNORDERED tuples:
// the multiset of sizes is drawn from an exact DP, and within a pool a
// multiset is drawn by first picking its multiplicity pattern with exact
// combinations-with-repetition weights (sampling ordered draws and sorting
// would over-weight all-distinct tuples).
#pragma once

#include "element.hpp"
#include "enumeration.hpp"
#include "rng.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace thompson {

enum class StratumKind { Sum, Max };

inline std::string to_string(StratumKind k) { return k == StratumKind::Sum ? "sum" : "max"; }

struct StratumSpec {
    int k = 1;
    int n = 1;
    StratumKind kind = StratumKind::Sum;

    bool feasible() const { return k >= 1 && (kind == StratumKind::Sum ? n >= k : n >= 1); }
};

struct TupleSample {
    std::vector<Element> elements; // canonical sorted order
    StratumSpec stratum;

    std::vector<int> sizes() const {
        std::vector<int> s;
        s.reserve(elements.size());
        for (const auto& e : elements) s.push_back(e.carets());
        return s;
    }
};

inline std::string to_string(const TupleSample& t) {
    std::string out;
    for (std::size_t i = 0; i < t.elements.size(); ++i) {
        if (i) out += ' ';
        out += to_string(t.elements[i]);
    }
    return out;
}

inline constexpr int kRejectionCap = 64;

/// Exactly uniform over the c_n trees with n carets (Remy growth: a new caret
/// is grafted onto a uniformly chosen node of the current tree, on a
/// uniformly chosen side).
inline Tree random_tree(int n, RngStream& rng) {
    if (n < 0) throw std::invalid_argument("random_tree: negative n");
    if (n == 0) return Tree::leaf();
    std::vector<int> left(2 * n + 1, -1), right(2 * n + 1, -1), parent(2 * n + 1, -1);
    int root = 0;
    for (int k = 1; k <= n; ++k) {
        int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(2 * k - 1)));
        bool new_leaf_right = rng.next_bool();
        int w = 2 * k - 1, u = 2 * k;
        left[w] = new_leaf_right ? v : u;
        right[w] = new_leaf_right ? u : v;
        int p = parent[v];
        parent[w] = p;
        parent[v] = w;
        parent[u] = w;
        if (p < 0)
            root = w;
        else if (left[p] == v)
            left[p] = w;
        else
            right[p] = w;
    }
    std::string code;
    code.reserve(2 * n + 1);
    std::vector<int> stack{root};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (left[v] < 0) {
            code += '0';
        } else {
            code += '1';
            stack.push_back(right[v]);
            stack.push_back(left[v]);
        }
    }
    return Tree(std::move(code), Tree::unchecked_tag{});
}

/// Exactly uniform over the r_n reduced pairs: draw two independent uniform
/// trees, accept iff the pair is reduced. Acceptance decays like (mu/16)^n;
/// the cap keeps the runtime predictable.
inline TreePair random_reduced_pair(int n, RngStream& rng, int cap = kRejectionCap) {
    if (n < 1) throw std::invalid_argument("random_reduced_pair: n must be >= 1");
    if (n > cap) throw std::invalid_argument("random_reduced_pair: n exceeds rejection cap");
    for (;;) {
        TreePair p{random_tree(n, rng), random_tree(n, rng)};
        if (is_reduced(p)) return p;
    }
}

inline Element random_element(int n, RngStream& rng) { return Element(random_reduced_pair(n, rng)); }

namespace detail {

inline const std::vector<std::vector<int>>& partitions_of(int j) {
    static std::vector<std::vector<std::vector<int>>> memo{{{}}};
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    while (static_cast<int>(memo.size()) <= j) {
        int target = static_cast<int>(memo.size());
        std::vector<std::vector<int>> out;
        std::vector<int> cur;
        std::function<void(int, int)> rec = [&](int remaining, int maxpart) {
            if (remaining == 0) {
                out.push_back(cur);
                return;
            }
            for (int p = std::min(remaining, maxpart); p >= 1; --p) {
                cur.push_back(p);
                rec(remaining - p, p);
                cur.pop_back();
            }
        };
        rec(target, target);
        memo.push_back(std::move(out));
    }
    return memo[j];
}

/// Number of multisets from a pool of `pool` objects whose multiplicity
/// pattern is `parts`: C(pool, t) times the number of distinct assignments of
/// the parts to the t chosen objects.
inline BigInt pattern_count(const BigInt& pool, const std::vector<int>& parts) {
    BigInt ways = binomial_big(pool, static_cast<unsigned>(parts.size()));
    if (ways == 0) return 0;
    // t! / prod (count of equal parts)!
    BigInt assign = 1;
    for (unsigned t = 2; t <= parts.size(); ++t) assign *= t;
    std::size_t i = 0;
    while (i < parts.size()) {
        std::size_t jx = i;
        while (jx < parts.size() && parts[jx] == parts[i]) ++jx;
        BigInt fac = 1;
        for (unsigned t = 2; t <= jx - i; ++t) fac *= t;
        assign = divide_exact(assign, fac, "pattern_count");
        i = jx;
    }
    return ways * assign;
}

/// Uniform multiset of size j from an abstract pool; `draw_one` must be an
/// exactly uniform sampler of pool elements and `pool` the exact pool size.
template <typename DrawOne>
std::vector<Element> uniform_multiset(const BigInt& pool, int j, DrawOne&& draw_one, RngStream& rng) {
    if (j == 0) return {};
    const auto& pats = partitions_of(j);
    std::vector<BigInt> weights;
    weights.reserve(pats.size());
    BigInt total = 0;
    for (const auto& p : pats) {
        weights.push_back(pattern_count(pool, p));
        total += weights.back();
    }
    if (total == 0) throw std::logic_error("uniform_multiset: empty pool");
    BigInt pick = rng.below_big(total);
    std::size_t chosen = 0;
    while (pick >= weights[chosen]) {
        pick -= weights[chosen];
        ++chosen;
    }
    std::vector<int> parts = pats[chosen];
    // Uniform set of t distinct pool elements: iid draws, retry on collision.
    std::vector<Element> distinct;
    for (;;) {
        distinct.clear();
        for (std::size_t t = 0; t < parts.size(); ++t) distinct.push_back(draw_one(rng));
        std::vector<Element> s = distinct;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) == s.end()) break;
    }
    // Uniform assignment of multiplicities: shuffle the parts.
    for (std::size_t t = parts.size(); t > 1; --t)
        std::swap(parts[t - 1], parts[rng.below(t)]);
    std::vector<Element> out;
    out.reserve(j);
    for (std::size_t t = 0; t < parts.size(); ++t)
        for (int c = 0; c < parts[t]; ++c) out.push_back(distinct[t]);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

/// Exact sampler for one stratum; precomputes the size-multiset DP (sum) or
/// the size-weight table (max) once.
class TupleSampler {
public:
    TupleSampler(StratumSpec spec, const BigSeq& r_table) : spec_(spec) {
        if (!spec.feasible()) throw std::invalid_argument("TupleSampler: infeasible stratum");
        int need = spec.kind == StratumKind::Sum ? spec.n - spec.k + 1 : spec.n;
        if (need > kRejectionCap) throw std::invalid_argument("TupleSampler: component size exceeds cap");
        if (static_cast<int>(r_table.max_index()) < need)
            throw std::invalid_argument("TupleSampler: r table too short");
        r_.assign(r_table.values.begin(), r_table.values.begin() + need + 1);
        if (spec.kind == StratumKind::Sum) {
            // dp_[s][j][m]: multisets of j pairs, sizes in [1, s], m total carets.
            int smax = need, k = spec.k, n = spec.n;
            dp_.assign(smax + 1, std::vector<std::vector<BigInt>>(
                                     k + 1, std::vector<BigInt>(n + 1, BigInt(0))));
            dp_[0][0][0] = 1;
            for (int s = 1; s <= smax; ++s)
                for (int j = 0; j <= k; ++j)
                    for (int m = 0; m <= n; ++m) {
                        BigInt v = 0;
                        for (int t = 0; t <= j && t * s <= m; ++t)
                            v += multichoose(r_[s], static_cast<unsigned>(t)) * dp_[s - 1][j - t][m - t * s];
                        dp_[s][j][m] = std::move(v);
                    }
            sphere_ = dp_[smax][spec.k][spec.n];
        } else {
            prefix_.assign(need + 1, BigInt(0));
            for (int s = 1; s <= need; ++s) prefix_[s] = prefix_[s - 1] + r_[s];
            sphere_ = multichoose(prefix_[spec.n], static_cast<unsigned>(spec.k)) -
                      multichoose(spec.n >= 1 ? prefix_[spec.n - 1] : BigInt(0),
                                  static_cast<unsigned>(spec.k));
        }
        if (sphere_ == 0) throw std::invalid_argument("TupleSampler: empty sphere");
    }

    const BigInt& sphere_size() const { return sphere_; }
    const StratumSpec& spec() const { return spec_; }

    TupleSample draw(RngStream& rng) const {
        return spec_.kind == StratumKind::Sum ? draw_sum(rng) : draw_max(rng);
    }

private:
    TupleSample draw_sum(RngStream& rng) const {
        int smax = static_cast<int>(dp_.size()) - 1;
        std::vector<int> counts(smax + 1, 0);
        int j = spec_.k, m = spec_.n;
        for (int s = smax; s >= 1; --s) {
            BigInt total = dp_[s][j][m];
            BigInt pick = rng.below_big(total);
            for (int t = 0; t <= j && t * s <= m; ++t) {
                BigInt w = multichoose(r_[s], static_cast<unsigned>(t)) * dp_[s - 1][j - t][m - t * s];
                if (pick < w) {
                    counts[s] = t;
                    j -= t;
                    m -= t * s;
                    break;
                }
                pick -= w;
            }
        }
        std::vector<Element> out;
        out.reserve(spec_.k);
        for (int s = 1; s <= smax; ++s) {
            if (counts[s] == 0) continue;
            auto draw_one = [&, s](RngStream& r) { return random_element(s, r); };
            auto part = detail::uniform_multiset(r_[s], counts[s], draw_one, rng);
            out.insert(out.end(), part.begin(), part.end());
        }
        std::sort(out.begin(), out.end());
        return TupleSample{std::move(out), spec_};
    }

    TupleSample draw_max(RngStream& rng) const {
        // Uniform multiset over all pairs of size <= n, rejected unless the
        // max is exactly n. Acceptance >= 1/2 since r_n dominates the prefix.
        auto draw_one = [&](RngStream& rg) {
            BigInt pick = rg.below_big(prefix_[spec_.n]);
            int s = 1;
            while (pick >= r_[s]) {
                pick -= r_[s];
                ++s;
            }
            return random_element(s, rg);
        };
        for (;;) {
            auto elems = detail::uniform_multiset(prefix_[spec_.n], spec_.k, draw_one, rng);
            bool hit = false;
            for (const auto& e : elems)
                if (e.carets() == spec_.n) hit = true;
            if (hit) return TupleSample{std::move(elems), spec_};
        }
    }

    StratumSpec spec_;
    std::vector<BigInt> r_;
    std::vector<BigInt> prefix_;
    std::vector<std::vector<std::vector<BigInt>>> dp_;
    BigInt sphere_;
};

/// One-shot conveniences (build the sampler, draw once).
inline TupleSample random_sum_tuple(int k, int n, RngStream& rng, const BigSeq& r_table) {
    return TupleSampler(StratumSpec{k, n, StratumKind::Sum}, r_table).draw(rng);
}
inline TupleSample random_max_tuple(int k, int n, RngStream& rng, const BigSeq& r_table) {
    return TupleSampler(StratumSpec{k, n, StratumKind::Max}, r_table).draw(rng);
}

} // namespace thompson
