// Group algebra of Thompson's group F on reduced tree pairs: the standard
// generators, multiplication via common refinement, inversion, powers, the
// two homomorphisms onto Z (+) Z, commutator-subgroup membership, support
// analysis, and the generator-normalization procedures.
//
// Conventions fixed here and enforced by the PL-map oracle tests:
//   * an element (domain, range) sends leaf j of the domain tree linearly
//     onto leaf j of the range tree;
//   * multiply(a, b) applies a first, then b;
//   * with those choices the standard generators have endpoint slopes
//     phi(x0) = (1,-1), phi(x1) = (0,-1), and x_{i+1} = x0^-1 x_i x0.
#pragma once

#include "plmap.hpp"
#include "treepair.hpp"

#include <cstdlib>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace thompson {

namespace detail {

/// Smallest common refinement of two trees.
inline void join_rec(std::string_view a, std::size_t& ia, std::string_view b, std::size_t& ib,
                     std::string& out) {
    bool ca = a[ia] == '1', cb = b[ib] == '1';
    if (ca && cb) {
        out += '1';
        ++ia;
        ++ib;
        join_rec(a, ia, b, ib, out);
        join_rec(a, ia, b, ib, out);
    } else if (ca) {
        std::size_t e = subtree_end(a, ia);
        out.append(a.substr(ia, e - ia));
        ia = e;
        ++ib;
    } else if (cb) {
        std::size_t e = subtree_end(b, ib);
        out.append(b.substr(ib, e - ib));
        ib = e;
        ++ia;
    } else {
        out += '0';
        ++ia;
        ++ib;
    }
}

inline std::string tree_join(std::string_view a, std::string_view b) {
    std::string out;
    out.reserve(a.size() + b.size());
    std::size_t ia = 0, ib = 0;
    join_rec(a, ia, b, ib, out);
    return out;
}

/// Subtrees of the refinement u hanging below each leaf of t (u must refine t).
inline void forest_rec(std::string_view t, std::size_t& it, std::string_view u, std::size_t& iu,
                       std::vector<std::string_view>& out) {
    if (t[it] == '0') {
        std::size_t e = subtree_end(u, iu);
        out.push_back(u.substr(iu, e - iu));
        ++it;
        iu = e;
        return;
    }
    ++it;
    ++iu;
    forest_rec(t, it, u, iu, out);
    forest_rec(t, it, u, iu, out);
}

/// Replace leaf j of code by pieces[j].
inline std::string splice_leaves(std::string_view code, const std::vector<std::string_view>& pieces) {
    std::size_t total = 0;
    for (auto p : pieces) total += p.size();
    std::string out;
    out.reserve(code.size() + total);
    std::size_t leaf = 0;
    for (char c : code) {
        if (c == '1')
            out += '1';
        else
            out.append(pieces[leaf++]);
    }
    return out;
}

} // namespace detail

/// Image under either homomorphism F -> Z (+) Z.
struct AbelianImage {
    long a = 0;
    long b = 0;
    friend bool operator==(const AbelianImage& x, const AbelianImage& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const AbelianImage& x, const AbelianImage& y) { return !(x == y); }
    AbelianImage operator+(const AbelianImage& o) const { return {a + o.a, b + o.b}; }
    AbelianImage operator-() const { return {-a, -b}; }
};

/// An element of F, stored as its unique reduced tree pair.
class Element {
public:
    Element() : pair_(identity_pair()) {}
    explicit Element(TreePair p) : pair_(reduce(std::move(p))) {}

    static Element identity() { return Element(); }

    static const Element& x0() {
        static const Element e{TreePair{Tree::from_code("11000"), Tree::from_code("10100")}};
        return e;
    }
    static const Element& x1() {
        static const Element e{TreePair{Tree::from_code("1011000"), Tree::from_code("1010100")}};
        return e;
    }

    const TreePair& pair() const { return pair_; }
    int carets() const { return pair_.caret_count(); }
    bool is_identity() const { return pair_.caret_count() == 1; }

    friend bool operator==(const Element& x, const Element& y) { return x.pair_ == y.pair_; }
    friend bool operator!=(const Element& x, const Element& y) { return !(x == y); }
    friend bool operator<(const Element& x, const Element& y) { return x.pair_ < y.pair_; }

private:
    TreePair pair_;
};

inline std::string to_string(const Element& e) { return pair_to_string(e.pair()); }
inline Element element_from_string(std::string_view s) { return Element(pair_from_string(s)); }

/// Apply a, then b.
inline Element multiply(const Element& a, const Element& b) {
    const std::string& t1 = a.pair().range.code();
    const std::string& s2 = b.pair().domain.code();
    if (t1 == s2)
        return Element(TreePair{a.pair().domain, b.pair().range});
    std::string u = detail::tree_join(t1, s2);
    std::vector<std::string_view> f1, f2;
    std::size_t it = 0, iu = 0;
    detail::forest_rec(t1, it, u, iu, f1);
    it = iu = 0;
    detail::forest_rec(s2, it, u, iu, f2);
    return Element(TreePair{Tree(detail::splice_leaves(a.pair().domain.code(), f1), Tree::unchecked_tag{}),
                            Tree(detail::splice_leaves(b.pair().range.code(), f2), Tree::unchecked_tag{})});
}

inline Element invert(const Element& a) {
    return Element(TreePair{a.pair().range, a.pair().domain});
}

inline Element power(const Element& a, long k) {
    Element base = k < 0 ? invert(a) : a;
    unsigned long e = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
    Element acc = Element::identity();
    while (e > 0) {
        if (e & 1) acc = multiply(acc, base);
        base = e > 1 ? multiply(base, base) : base;
        e >>= 1;
    }
    return acc;
}

/// a b a^-1 b^-1.
inline Element commutator(const Element& a, const Element& b) {
    return multiply(multiply(a, b), multiply(invert(a), invert(b)));
}

inline bool commute(const Element& a, const Element& b) {
    return multiply(a, b) == multiply(b, a);
}

/// The generator x_i of the standard infinite presentation;
/// x_{i+1} = x0^-1 x_i x0 for i >= 1.
inline Element x_generator(int i) {
    if (i < 0) throw std::invalid_argument("x_generator: negative index");
    static std::vector<Element> cache{Element::x0(), Element::x1()};
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    while (static_cast<int>(cache.size()) <= i) {
        const Element& prev = cache.back();
        cache.push_back(multiply(multiply(invert(Element::x0()), prev), Element::x0()));
    }
    return cache[i];
}

inline PLMap to_plmap(const Element& a) { return to_plmap(a.pair()); }
inline Element from_plmap_element(const PLMap& m) { return Element(from_plmap(m)); }

/// phi: (log2 slope at 0, log2 slope at 1), read off the leaf depths.
inline AbelianImage endpoint_slopes(const Element& a) {
    auto dd = a.pair().domain.leaf_depths();
    auto dr = a.pair().range.leaf_depths();
    return AbelianImage{static_cast<long>(dd.front() - dr.front()),
                        static_cast<long>(dd.back() - dr.back())};
}

/// Exponent sums (E_0, E_1) of a word in x0, x1 representing the element.
/// The linear transform from phi is forced by phi(x0) = (1,-1), phi(x1) = (0,-1).
inline AbelianImage exponent_sums(const Element& a) {
    AbelianImage phi = endpoint_slopes(a);
    return AbelianImage{phi.a, -phi.a - phi.b};
}

/// Leaf-level criterion: leaves 0 and n at equal levels in both trees.
inline bool in_commutator(const Element& a) {
    auto dd = a.pair().domain.leaf_depths();
    auto dr = a.pair().range.leaf_depths();
    return dd.front() == dr.front() && dd.back() == dr.back();
}

/// [inf, sup] of the support; nullopt for the identity.
inline std::optional<std::pair<Dyadic, Dyadic>> support_bounds(const Element& a) {
    if (a.is_identity()) return std::nullopt;
    return to_plmap(a).support();
}

/// log2 of the right derivative at the support infimum. Nonzero for a != id.
inline int first_slope_exponent(const Element& a) {
    if (a.is_identity()) throw std::domain_error("first_slope_exponent: identity input");
    return to_plmap(a).first_slope_exponent();
}

/// Conjugate a tuple of commutator-subgroup elements by the translation
/// x -> x - a (a = least support infimum), producing generators of an
/// isomorphic subgroup with some generator of nonzero slope at 0. Tuples
/// already meeting a generator outside [F,F] are returned unchanged.
inline std::vector<Element> translate_support(const std::vector<Element>& gens) {
    bool all_identity = true;
    for (const auto& g : gens)
        if (!g.is_identity()) all_identity = false;
    if (gens.empty() || all_identity)
        throw std::invalid_argument("translate_support: need a nontrivial generator");
    for (const auto& g : gens)
        if (!in_commutator(g)) return gens;

    std::optional<Dyadic> a;
    for (const auto& g : gens) {
        auto s = support_bounds(g);
        if (!s) continue;
        if (!a || s->first < *a) a = s->first;
    }
    std::vector<Element> out;
    out.reserve(gens.size());
    for (const auto& g : gens) {
        if (g.is_identity()) {
            out.push_back(g);
            continue;
        }
        PLMap m = to_plmap(g);
        std::vector<Breakpoint> pts;
        pts.push_back(Breakpoint{Dyadic(0, 0), Dyadic(0, 0)});
        for (const auto& p : m.breakpoints()) {
            if (p.x <= *a) continue; // identity up to a
            pts.push_back(Breakpoint{p.x - *a, p.y - *a});
        }
        // The map is the identity from the shifted support on; close up to 1.
        if (pts.back().x != Dyadic(1, 0)) pts.push_back(Breakpoint{Dyadic(1, 0), Dyadic(1, 0)});
        out.push_back(from_plmap_element(PLMap::from_breakpoints(std::move(pts))));
    }
    return out;
}

struct NormalizedGenerators {
    std::vector<Element> gens;
    /// words[i] spells gens[i] over the input generators: entry +j / -j means
    /// input j-1 / its inverse, applied left to right. When `reflected` is
    /// set the words refer to the reflected copies of the inputs.
    std::vector<std::vector<int>> words;
    bool reflected = false;
};

namespace detail {

inline Element evaluate_word(const std::vector<Element>& inputs, const std::vector<int>& word) {
    Element acc = Element::identity();
    for (int s : word) {
        const Element& g = inputs[static_cast<std::size_t>(std::abs(s)) - 1];
        acc = multiply(acc, s > 0 ? g : invert(g));
    }
    return acc;
}

} // namespace detail

/// Euclidean reduction on the E_0 exponents: returns generators of the same
/// subgroup with exactly one generator of nonzero E_0 (placed first). Ties on
/// the minimal positive E_0 resolve to the lowest index.
inline NormalizedGenerators normalize_exponents(const std::vector<Element>& gens_in) {
    NormalizedGenerators st;
    st.gens = gens_in;
    st.words.resize(gens_in.size());
    for (std::size_t i = 0; i < gens_in.size(); ++i) st.words[i] = {static_cast<int>(i) + 1};

    auto e0 = [](const Element& g) { return exponent_sums(g).a; };

    bool any = false;
    for (const auto& g : st.gens)
        if (e0(g) != 0) any = true;
    if (!any) {
        bool all_comm = true;
        for (const auto& g : st.gens)
            if (!in_commutator(g)) all_comm = false;
        if (all_comm)
            throw std::invalid_argument("normalize_exponents: all E_0 zero and all in [F,F]");
        // All x0-exponent sums vanish but some E_1 does not: conjugating every
        // generator by the reflection x -> 1-x swaps the endpoint roles and
        // yields an isomorphic subgroup with a nonzero E_0.
        for (std::size_t i = 0; i < st.gens.size(); ++i) {
            std::vector<Breakpoint> pts;
            auto bp = to_plmap(st.gens[i]).breakpoints();
            for (auto it = bp.rbegin(); it != bp.rend(); ++it)
                pts.push_back(Breakpoint{Dyadic(1, 0) - it->x, Dyadic(1, 0) - it->y});
            st.gens[i] = from_plmap_element(PLMap::from_breakpoints(std::move(pts)));
        }
        st.reflected = true;
    }

    // Make all E_0 nonnegative.
    for (std::size_t i = 0; i < st.gens.size(); ++i) {
        if (e0(st.gens[i]) < 0) {
            st.gens[i] = invert(st.gens[i]);
            st.words[i] = {-(static_cast<int>(i) + 1)};
        }
    }

    while (true) {
        std::size_t pivot = st.gens.size();
        for (std::size_t i = 0; i < st.gens.size(); ++i)
            if (e0(st.gens[i]) > 0 && (pivot == st.gens.size() || e0(st.gens[i]) < e0(st.gens[pivot])))
                pivot = i;
        bool others = false;
        long p = e0(st.gens[pivot]);
        for (std::size_t i = 0; i < st.gens.size(); ++i) {
            if (i == pivot) continue;
            long v = e0(st.gens[i]);
            if (v == 0) continue;
            others = true;
            long d = v / p;
            // h_i <- h_i pivot^-d, chosen so the new E_0 is minimal nonnegative.
            Element step = st.gens[i];
            std::vector<int> w = st.words[i];
            for (long t = 0; t < d; ++t) {
                step = multiply(step, invert(st.gens[pivot]));
                for (auto it = st.words[pivot].rbegin(); it != st.words[pivot].rend(); ++it)
                    w.push_back(-*it);
            }
            st.gens[i] = std::move(step);
            st.words[i] = std::move(w);
        }
        if (!others) {
            if (pivot != 0) {
                std::swap(st.gens[0], st.gens[pivot]);
                std::swap(st.words[0], st.words[pivot]);
            }
            return st;
        }
    }
}

} // namespace thompson
