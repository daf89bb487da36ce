// Piecewise-linear homeomorphisms of [0,1] with dyadic breakpoints and
// power-of-two slopes, in exact arithmetic. This is the analytic face of a
// tree pair: leaf j of the domain tree maps its dyadic interval linearly onto
// leaf j's interval of the range tree. Conversion in both directions, exact
// composition and inversion, and support extraction live here; the PL side
// doubles as an independent oracle for the tree-pair group operations.
#pragma once

#include "numeric.hpp"
#include "treepair.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace thompson {

struct Breakpoint {
    Dyadic x, y;
    friend bool operator==(const Breakpoint& a, const Breakpoint& b) {
        return a.x == b.x && a.y == b.y;
    }
};

class PLMap {
public:
    /// Canonicalizes: validates endpoints/monotonicity/slopes, then drops
    /// every interior point where the slope does not change.
    static PLMap from_breakpoints(std::vector<Breakpoint> pts) {
        validate(pts);
        return PLMap(canonicalize(std::move(pts)));
    }

    static PLMap identity() {
        return PLMap({Breakpoint{Dyadic(0, 0), Dyadic(0, 0)}, Breakpoint{Dyadic(1, 0), Dyadic(1, 0)}});
    }

    const std::vector<Breakpoint>& breakpoints() const { return pts_; }
    std::size_t segments() const { return pts_.size() - 1; }

    bool is_identity() const { return pts_.size() == 2 && pts_[0].y.is_zero() && pts_[1].y == Dyadic(1, 0); }

    /// log2 of the slope on segment i. Exact; throws if the slope is not a
    /// power of two (cannot happen for maps built from tree pairs).
    int slope_exponent(std::size_t i) const {
        Dyadic dx = pts_[i + 1].x - pts_[i].x;
        Dyadic dy = pts_[i + 1].y - pts_[i].y;
        if (dx.num != dy.num) throw std::domain_error("slope is not a power of two");
        return dx.exp - dy.exp;
    }

    Dyadic evaluate(const Dyadic& x) const {
        std::size_t i = segment_of_x(x);
        int r = slope_exponent(i);
        return pts_[i].y + (x - pts_[i].x).times_pow2(r);
    }

    Dyadic evaluate_inverse(const Dyadic& y) const {
        std::size_t i = segment_of_y(y);
        int r = slope_exponent(i);
        return pts_[i].x + (y - pts_[i].y).times_pow2(-r);
    }

    PLMap inverse() const {
        std::vector<Breakpoint> pts;
        pts.reserve(pts_.size());
        for (const auto& p : pts_) pts.push_back(Breakpoint{p.y, p.x});
        return PLMap(std::move(pts));
    }

    /// Map applying *this first, then g.
    PLMap compose_then(const PLMap& g) const {
        std::vector<Dyadic> xs;
        for (const auto& p : pts_) xs.push_back(p.x);
        for (const auto& q : g.pts_) xs.push_back(evaluate_inverse(q.x));
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        std::vector<Breakpoint> pts;
        pts.reserve(xs.size());
        for (const auto& x : xs) pts.push_back(Breakpoint{x, g.evaluate(evaluate(x))});
        return PLMap(canonicalize(std::move(pts)));
    }

    /// Closure of {x : f(x) != x} as [inf, sup]; nullopt for the identity.
    std::optional<std::pair<Dyadic, Dyadic>> support() const {
        if (is_identity()) return std::nullopt;
        std::size_t lo = 0;
        while (lo + 1 < pts_.size() && pts_[lo].x == pts_[lo].y && slope_exponent(lo) == 0) ++lo;
        std::size_t hi = pts_.size() - 1;
        while (hi > 0 && pts_[hi].x == pts_[hi].y && slope_exponent(hi - 1) == 0) --hi;
        if (lo >= hi) return std::nullopt;
        return std::make_pair(pts_[lo].x, pts_[hi].x);
    }

    /// log2 slope immediately to the right of the support infimum.
    /// segment_of_x picks the segment whose left endpoint is the infimum.
    int first_slope_exponent() const {
        auto s = support();
        if (!s) throw std::domain_error("identity has no first slope");
        return slope_exponent(segment_of_x(s->first));
    }

    int slope_exponent_at_zero() const { return slope_exponent(0); }
    int slope_exponent_at_one() const { return slope_exponent(pts_.size() - 2); }

    friend bool operator==(const PLMap& a, const PLMap& b) { return a.pts_ == b.pts_; }
    friend bool operator!=(const PLMap& a, const PLMap& b) { return !(a.pts_ == b.pts_); }

private:
    explicit PLMap(std::vector<Breakpoint> pts) : pts_(std::move(pts)) {}

    static void validate(const std::vector<Breakpoint>& pts) {
        if (pts.size() < 2) throw std::invalid_argument("PLMap: need at least the two endpoints");
        if (!pts.front().x.is_zero() || !pts.front().y.is_zero() || pts.back().x != Dyadic(1, 0) ||
            pts.back().y != Dyadic(1, 0))
            throw std::invalid_argument("PLMap: endpoints must be (0,0) and (1,1)");
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            Dyadic dx = pts[i + 1].x - pts[i].x;
            Dyadic dy = pts[i + 1].y - pts[i].y;
            if (dx.num <= 0 || dy.num <= 0)
                throw std::invalid_argument("PLMap: breakpoints must be strictly increasing");
            if (dx.num != dy.num) throw std::invalid_argument("PLMap: slope is not a power of two");
        }
    }

    static std::vector<Breakpoint> canonicalize(std::vector<Breakpoint> pts) {
        std::vector<Breakpoint> out;
        out.reserve(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            while (out.size() >= 2) {
                // Drop the middle point of a collinear triple.
                const Breakpoint &a = out[out.size() - 2], &b = out.back(), &c = pts[i];
                Dyadic lhs = (b.y - a.y) * (c.x - a.x);
                Dyadic rhs = (c.y - a.y) * (b.x - a.x);
                if (lhs == rhs)
                    out.pop_back();
                else
                    break;
            }
            out.push_back(pts[i]);
        }
        return out;
    }

    std::size_t segment_of_x(const Dyadic& x) const {
        if (x < Dyadic(0, 0) || x > Dyadic(1, 0)) throw std::domain_error("PLMap: x outside [0,1]");
        std::size_t lo = 0, hi = pts_.size() - 1;
        while (lo + 1 < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (pts_[mid].x <= x)
                lo = mid;
            else
                hi = mid;
        }
        return lo;
    }
    std::size_t segment_of_y(const Dyadic& y) const {
        std::size_t lo = 0, hi = pts_.size() - 1;
        while (lo + 1 < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (pts_[mid].y <= y)
                lo = mid;
            else
                hi = mid;
        }
        return lo;
    }

    std::vector<Breakpoint> pts_;
};

namespace detail {

/// Leaf interval boundaries 0 = b_0 < b_1 < ... < b_{n+1} = 1 of a tree.
inline std::vector<Dyadic> leaf_boundaries(const Tree& t) {
    std::vector<Dyadic> out;
    out.push_back(Dyadic(0, 0));
    Dyadic acc(0, 0);
    int depth = 0;
    std::vector<int> stack;
    for (char c : t.code()) {
        if (c == '1') {
            stack.push_back(depth);
            ++depth;
        } else {
            acc = acc + Dyadic(1, depth);
            out.push_back(acc);
            if (!stack.empty()) {
                depth = stack.back() + 1;
                stack.pop_back();
            }
        }
    }
    return out;
}

} // namespace detail

/// The PL homeomorphism carrying the domain tree's leaf intervals onto the
/// range tree's, in order.
inline PLMap to_plmap(const TreePair& p) {
    auto bd = detail::leaf_boundaries(p.domain);
    auto br = detail::leaf_boundaries(p.range);
    std::vector<Breakpoint> pts;
    pts.reserve(bd.size());
    for (std::size_t i = 0; i < bd.size(); ++i) pts.push_back(Breakpoint{bd[i], br[i]});
    return PLMap::from_breakpoints(std::move(pts));
}

/// Reduced tree pair realizing the map. Inverse of to_plmap up to reduction;
/// the identity map yields the single-caret identity pair.
inline TreePair from_plmap(const PLMap& m) {
    std::string dom_code;
    std::vector<std::pair<Dyadic, int>> image_tiles; // (left endpoint, depth)

    int guard = 1;
    for (const auto& p : m.breakpoints()) guard = std::max(guard, std::max(p.x.exp, p.y.exp));
    for (std::size_t i = 0; i + 1 < m.breakpoints().size(); ++i)
        guard = std::max(guard, std::abs(m.slope_exponent(i)));
    const int max_depth = 4 * guard + 8;

    std::function<void(const Dyadic&, int)> build_domain = [&](const Dyadic& lo, int depth) {
        Dyadic hi = lo + Dyadic(1, depth);
        Dyadic img_lo = m.evaluate(lo), img_hi = m.evaluate(hi);
        bool linear = true;
        for (const auto& p : m.breakpoints())
            if (lo < p.x && p.x < hi) {
                linear = false;
                break;
            }
        if (linear) {
            // Image must itself be a standard dyadic interval.
            Dyadic len = img_hi - img_lo;
            bool standard = len.num == 1 && img_lo.exp <= len.exp;
            if (standard) {
                dom_code += '0';
                image_tiles.emplace_back(img_lo, len.exp);
                return;
            }
        }
        if (depth >= max_depth) throw std::invalid_argument("from_plmap: map is not realized by a tree pair");
        dom_code += '1';
        build_domain(lo, depth + 1);
        build_domain(lo + Dyadic(1, depth + 1), depth + 1);
    };
    build_domain(Dyadic(0, 0), 0);

    std::string rng_code;
    std::size_t tile = 0;
    std::function<void(const Dyadic&, int)> build_range = [&](const Dyadic& lo, int depth) {
        if (tile < image_tiles.size() && image_tiles[tile].first == lo && image_tiles[tile].second == depth) {
            rng_code += '0';
            ++tile;
            return;
        }
        if (depth >= max_depth) throw std::invalid_argument("from_plmap: image tiling is not dyadic");
        rng_code += '1';
        build_range(lo, depth + 1);
        build_range(lo + Dyadic(1, depth + 1), depth + 1);
    };
    build_range(Dyadic(0, 0), 0);
    if (tile != image_tiles.size()) throw std::logic_error("from_plmap: tiling mismatch");

    if (dom_code == "0") return identity_pair();
    return TreePair{Tree(std::move(dom_code), Tree::unchecked_tag{}),
                    Tree(std::move(rng_code), Tree::unchecked_tag{})};
}

} // namespace thompson
