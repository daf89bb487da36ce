// Programmatic builders for every explicit generator-family construction:
// Z^n on a right spine, Burillo's commuting family, the standard F x F copy,
// clone subgroups, wreath coupling, commutator wrapping, and the sized tuple
// families used by the density lower-bound arguments. Each builder runs its
// structural verifier (caret accounting, commutation patterns, support
// containment, commutator-subgroup membership) and fails hard if a check does
// not pass; a failure means the construction was transcribed wrongly.
//
// Leaf positions follow the figures' 1-based numbering in comments; code uses
// 0-based indices. Payload pairs must be nontrivial (not the 1-caret identity
// pair) wherever a trivial payload would collapse the construction under
// reduction.
#pragma once

#include "element.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace thompson {

struct GeneratorTuple {
    std::vector<Element> gens;
    std::string provenance;
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::pair<std::string, bool>> checks;

    int max_carets() const {
        int m = 0;
        for (const auto& g : gens) m = std::max(m, g.carets());
        return m;
    }
    int sum_carets() const {
        int s = 0;
        for (const auto& g : gens) s += g.carets();
        return s;
    }
};

namespace detail {

inline void check(GeneratorTuple& t, const std::string& name, bool ok) {
    t.checks.emplace_back(name, ok);
    if (!ok) throw std::logic_error("structural verifier failed: " + t.provenance + ": " + name);
}

inline void check_pairwise_commuting(GeneratorTuple& t) {
    bool ok = true;
    for (std::size_t i = 0; i < t.gens.size() && ok; ++i)
        for (std::size_t j = i + 1; j < t.gens.size() && ok; ++j)
            if (!commute(t.gens[i], t.gens[j])) ok = false;
    check(t, "pairwise commuting", ok);
}

inline void require_nontrivial_payload(const TreePair& p, const char* who) {
    if (p.caret_count() < 1) throw std::invalid_argument(std::string(who) + ": invalid payload");
    if (p.caret_count() == 1)
        throw std::invalid_argument(std::string(who) +
                                    ": the identity payload collapses under reduction");
}

/// support contained in [lo, hi]?
inline bool support_within(const Element& e, const Dyadic& lo, const Dyadic& hi) {
    auto s = support_bounds(e);
    if (!s) return true;
    return lo <= s->first && s->second <= hi;
}

/// Both defining relators of F evaluated on candidate images of (x0, x1).
inline bool relators_hold(const Element& a, const Element& b) {
    Element u = multiply(a, invert(b));
    Element v1 = multiply(multiply(invert(a), b), a);
    Element v2 = multiply(multiply(power(a, -2), b), power(a, 2));
    return commutator(u, v1).is_identity() && commutator(u, v2).is_identity();
}

} // namespace detail

/// Z^n generators h_i on the right spine T with n-1 carets: h_i is the pair
/// (T, T) with A_i / B_i attached to leaf i (1-based) of the two copies.
inline GeneratorTuple zn_generators(const std::vector<TreePair>& pairs) {
    if (pairs.empty()) throw std::invalid_argument("zn_generators: need at least one pair");
    int n = static_cast<int>(pairs.size());
    GeneratorTuple t;
    t.provenance = "zn(" + std::to_string(n) + ")";
    Tree spine = Tree::right_spine(n - 1);
    for (int i = 0; i < n; ++i) {
        const TreePair& p = pairs[i];
        if (p.domain.caret_count() != p.range.caret_count())
            throw std::invalid_argument("zn_generators: payload caret counts differ");
        t.gens.push_back(Element(TreePair{spine.attach(i, p.domain), spine.attach(i, p.range)}));
    }
    detail::check_pairwise_commuting(t);
    return t;
}

/// Burillo's commuting family {x0 x1^-1, x2 x3^-1, ...}.
inline GeneratorTuple burillo_zn(int n) {
    if (n < 1) throw std::invalid_argument("burillo_zn: n >= 1");
    GeneratorTuple t;
    t.provenance = "burillo_zn(" + std::to_string(n) + ")";
    for (int i = 0; i < n; ++i)
        t.gens.push_back(multiply(x_generator(2 * i), invert(x_generator(2 * i + 1))));
    detail::check_pairwise_commuting(t);
    return t;
}

/// Two elements generating a copy of F supported on the dyadic interval
/// addressed by the bit string: four copies of the address tree T with the
/// x0 / x1 trees grafted at the marked leaf.
inline GeneratorTuple clone_subgroup(const std::string& address) {
    if (address.empty()) throw std::invalid_argument("clone_subgroup: empty address");
    for (char c : address)
        if (c != '0' && c != '1') throw std::invalid_argument("clone_subgroup: address must be binary");

    // Path tree with |address| carets; the earlier letters steer the path,
    // the final letter marks a leaf of the innermost caret.
    Tree path = Tree::caret(Tree::leaf(), Tree::leaf());
    for (int i = static_cast<int>(address.size()) - 2; i >= 0; --i)
        path = address[static_cast<std::size_t>(i)] == '0' ? Tree::caret(path, Tree::leaf())
                                                           : Tree::caret(Tree::leaf(), path);
    // Marked leaf index: walk the address; each '1' skips the left subtree.
    int marked = 0;
    {
        Tree cur = path;
        for (char c : address) {
            if (c == '1') {
                marked += cur.left().leaf_count();
                cur = cur.right();
            } else {
                cur = cur.left();
            }
        }
    }

    GeneratorTuple t;
    t.provenance = "clone(" + address + ")";
    for (const Element* g : {&Element::x0(), &Element::x1()})
        t.gens.push_back(Element(TreePair{path.attach(marked, g->pair().domain),
                                          path.attach(marked, g->pair().range)}));

    Dyadic lo(0, 0);
    for (std::size_t i = 0; i < address.size(); ++i)
        if (address[i] == '1') lo = lo + Dyadic(1, static_cast<int>(i) + 1);
    Dyadic hi = lo + Dyadic(1, static_cast<int>(address.size()));
    detail::check(t, "supports within addressed interval",
                  detail::support_within(t.gens[0], lo, hi) && detail::support_within(t.gens[1], lo, hi));
    detail::check(t, "F relators hold", detail::relators_hold(t.gens[0], t.gens[1]));
    t.metadata.emplace_back("interval", lo.str() + ".." + hi.str());
    return t;
}

/// The four generators of the standard F x F subgroup: a clone above 1/2 and
/// a commuting clone below 1/2.
inline GeneratorTuple standard_fxf() {
    GeneratorTuple hi = clone_subgroup("1"), lo = clone_subgroup("0");
    GeneratorTuple t;
    t.provenance = "standard_fxf";
    t.gens = {hi.gens[0], hi.gens[1], lo.gens[0], lo.gens[1]};
    Dyadic half(1, 1), zero(0, 0), one(1, 0);
    detail::check(t, "first factor supported in [1/2,1]",
                  detail::support_within(t.gens[0], half, one) &&
                      detail::support_within(t.gens[1], half, one));
    detail::check(t, "second factor supported in [0,1/2]",
                  detail::support_within(t.gens[2], zero, half) &&
                      detail::support_within(t.gens[3], zero, half));
    bool cross = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 2; j < 4; ++j)
            if (!commute(t.gens[i], t.gens[j])) cross = false;
    detail::check(t, "factors commute", cross);
    detail::check(t, "relators in both factors",
                  detail::relators_hold(t.gens[0], t.gens[1]) && detail::relators_hold(t.gens[2], t.gens[3]));
    return t;
}

/// Generators {k_i} u {x0} of H wr Z: each h_i rerooted onto leaf 2 (1-based)
/// of the 2-right-caret tree.
inline GeneratorTuple wreath_with_z(const std::vector<Element>& hgens) {
    if (hgens.empty()) throw std::invalid_argument("wreath_with_z: empty input");
    GeneratorTuple t;
    t.provenance = "wreath_with_z(" + std::to_string(hgens.size()) + ")";
    Tree spine = Tree::right_spine(2);
    for (const auto& h : hgens) {
        if (h.is_identity()) throw std::invalid_argument("wreath_with_z: identity generator");
        t.gens.push_back(Element(TreePair{spine.attach(1, h.pair().domain), spine.attach(1, h.pair().range)}));
    }
    t.gens.push_back(Element::x0());
    Dyadic half(1, 1), three_q(3, 2);
    bool sup = true;
    for (std::size_t i = 0; i + 1 < t.gens.size(); ++i)
        if (!detail::support_within(t.gens[i], half, three_q)) sup = false;
    detail::check(t, "k_i supported in [1/2,3/4]", sup);
    // conjugates by x0 displace the support, so they commute with k_i
    bool conj = true;
    for (std::size_t i = 0; i + 1 < t.gens.size(); ++i) {
        Element c = multiply(multiply(invert(Element::x0()), t.gens[i]), Element::x0());
        if (!commute(c, t.gens[i])) conj = false;
    }
    detail::check(t, "x0-conjugates commute with k_i", conj);
    return t;
}

/// The representative Z wr Z pair: x0 and y = x1 x2 x1^-2.
inline GeneratorTuple zwrz_generators() {
    GeneratorTuple t;
    t.provenance = "zwrz";
    Element y = multiply(multiply(Element::x1(), x_generator(2)), power(Element::x1(), -2));
    t.gens = {Element::x0(), y};
    bool conj = true;
    for (int j = 1; j <= 2; ++j) {
        Element c = multiply(multiply(power(Element::x0(), -j), y), power(Element::x0(), j));
        if (!commute(c, y)) conj = false;
    }
    detail::check(t, "x0-conjugates of y commute", conj);
    return t;
}

/// The (n+2)-caret commutator-subgroup element wrapping a nontrivial reduced
/// pair: both trees hang the payload under the middle leaf of a 2-caret tree.
inline Element commutator_wrap(const TreePair& payload) {
    if (!is_reduced(payload)) throw std::invalid_argument("commutator_wrap: payload must be reduced");
    detail::require_nontrivial_payload(payload, "commutator_wrap");
    int n = payload.caret_count();
    Tree dom = Tree::caret(Tree::caret(Tree::leaf(), payload.domain), Tree::leaf());
    Tree rng = Tree::caret(Tree::caret(Tree::leaf(), payload.range), Tree::leaf());
    Element e{TreePair{dom, rng}};
    if (e.carets() != n + 2) throw std::logic_error("commutator_wrap: construction reduced unexpectedly");
    if (!in_commutator(e)) throw std::logic_error("commutator_wrap: element not in [F,F]");
    return e;
}

/// Sum-stratification visibility tuple: couples h_1 with the payload (A,B)
/// under a root caret, wraps h_2..h_m, and pads with identity pairs up to k.
/// hgens must be normalized: E_0(h_1) != 0 and E_0(h_i) = 0 for i > 1.
inline GeneratorTuple theorem_specs_tuple(const std::vector<Element>& hgens, int k, int n,
                                          const TreePair& payload) {
    if (hgens.empty()) throw std::invalid_argument("theorem_specs_tuple: empty hgens");
    int m = static_cast<int>(hgens.size());
    if (k < m) throw std::invalid_argument("theorem_specs_tuple: k < m");
    int s = 0;
    for (const auto& h : hgens) {
        if (h.is_identity()) throw std::invalid_argument("theorem_specs_tuple: identity generator");
        s += h.carets();
    }
    if (exponent_sums(hgens[0]).a == 0)
        throw std::invalid_argument("theorem_specs_tuple: E_0(h_1) must be nonzero");
    for (int i = 1; i < m; ++i)
        if (exponent_sums(hgens[static_cast<std::size_t>(i)]).a != 0)
            throw std::invalid_argument("theorem_specs_tuple: E_0(h_i) must vanish for i > 1");
    if (payload.caret_count() != n - s - k)
        throw std::invalid_argument("theorem_specs_tuple: payload must have n-(s+k) carets");
    detail::require_nontrivial_payload(payload, "theorem_specs_tuple");

    GeneratorTuple t;
    t.provenance = "theorem_specs(k=" + std::to_string(k) + ",n=" + std::to_string(n) + ")";
    t.gens.push_back(Element(TreePair{Tree::caret(hgens[0].pair().domain, payload.domain),
                                      Tree::caret(hgens[0].pair().range, payload.range)}));
    for (int i = 1; i < m; ++i) {
        const auto& h = hgens[static_cast<std::size_t>(i)];
        t.gens.push_back(Element(
            TreePair{Tree::caret(h.pair().domain, Tree::leaf()), Tree::caret(h.pair().range, Tree::leaf())}));
    }
    for (int i = m; i < k; ++i) t.gens.push_back(Element::identity());

    detail::check(t, "total carets = n", t.sum_carets() == n);
    detail::check(t, "first generator outside [F,F]", !in_commutator(t.gens[0]));
    t.metadata.emplace_back("density_bound", "mu^-(s-1+2k), s=" + std::to_string(s));
    return t;
}

/// Max-stratification Z^k tuple: k pairwise-commuting elements on the
/// (k-1)-right-caret spine, payload pairs of n-k+1 carets each.
inline GeneratorTuple lemma_z_tuple(int k, int n, const std::vector<TreePair>& pairs) {
    if (k < 1) throw std::invalid_argument("lemma_z_tuple: k >= 1");
    if (static_cast<int>(pairs.size()) != k) throw std::invalid_argument("lemma_z_tuple: need k pairs");
    if (n < k + 1) throw std::invalid_argument("lemma_z_tuple: need n > k");
    for (const auto& p : pairs) {
        if (p.caret_count() != n - k + 1)
            throw std::invalid_argument("lemma_z_tuple: payloads need n-k+1 carets");
        detail::require_nontrivial_payload(p, "lemma_z_tuple");
    }
    GeneratorTuple t = zn_generators(pairs);
    t.provenance = "lemma_z(k=" + std::to_string(k) + ",n=" + std::to_string(n) + ")";
    detail::check(t, "max carets = n", t.max_carets() == n);
    detail::check(t, "k-th generator keeps n carets", t.gens.back().carets() == n);
    t.metadata.emplace_back("density_bound", "(1/k) mu^-(k^2-k)");
    return t;
}

/// Max 2-spectrum tuple: h_1, h_2 coupled with independent payloads on the
/// 2-right-caret tree; generates H or H x Z.
inline GeneratorTuple prop_spec2_tuple(const Element& h1, const Element& h2, int n,
                                       const TreePair& ab, const TreePair& cd) {
    int n1 = h1.carets(), n2 = h2.carets();
    if (exponent_sums(h1).a == 0 || exponent_sums(h2).a != 0)
        throw std::invalid_argument("prop_spec2_tuple: need E_0(h1) != 0 and E_0(h2) = 0");
    if (n <= std::max(n1, n2) + 4)
        throw std::invalid_argument("prop_spec2_tuple: need n > max(N(h_i)) + 4");
    if (ab.caret_count() != n - n1 - 2 || cd.caret_count() != n - n2 - 2)
        throw std::invalid_argument("prop_spec2_tuple: payload sizes must be n-N(h_i)-2");

    Tree spine = Tree::right_spine(2);
    auto couple = [&](const Tree& head, const Tree& tail, int tail_leaf) {
        return spine.attach(tail_leaf, tail).attach(0, head);
    };
    GeneratorTuple t;
    t.provenance = "prop_spec2(n=" + std::to_string(n) + ")";
    t.gens.push_back(Element(TreePair{couple(h1.pair().domain, ab.domain, 1),
                                      couple(h1.pair().range, ab.range, 1)}));
    t.gens.push_back(Element(TreePair{couple(h2.pair().domain, cd.domain, 2),
                                      couple(h2.pair().range, cd.range, 2)}));

    detail::check(t, "both generators have n carets",
                  t.gens[0].carets() == n && t.gens[1].carets() == n);
    detail::check(t, "leaf-1 subtrees reproduce h1",
                  t.gens[0].pair().domain.left() == h1.pair().domain &&
                      t.gens[0].pair().range.left() == h1.pair().range);
    detail::check(t, "leaf-1 subtrees reproduce h2",
                  t.gens[1].pair().domain.left() == h2.pair().domain &&
                      t.gens[1].pair().range.left() == h2.pair().range);
    t.metadata.emplace_back("density_bound",
                            "(1/2) mu^-(" + std::to_string(n1) + "+" + std::to_string(n2) + "+4)");
    return t;
}

/// Persistence tuple for F itself: x0 and x1 coupled with Z payloads, plus
/// k-2 wrapped commutator-subgroup elements.
inline GeneratorTuple fpersis_tuple(int k, int n, const TreePair& c1d1, const TreePair& c2d2,
                                    const std::vector<TreePair>& abs) {
    if (k < 2) throw std::invalid_argument("fpersis_tuple: k >= 2");
    if (n < 8) throw std::invalid_argument("fpersis_tuple: need n >= 8");
    if (c1d1.caret_count() != n - 4 || c2d2.caret_count() != n - 5)
        throw std::invalid_argument("fpersis_tuple: payload sizes must be n-4 and n-5");
    if (static_cast<int>(abs.size()) != k - 2)
        throw std::invalid_argument("fpersis_tuple: need k-2 commutator payloads");
    for (const auto& p : abs)
        if (p.caret_count() != n - 3)
            throw std::invalid_argument("fpersis_tuple: commutator payloads need n-3 carets");

    Tree spine = Tree::right_spine(2);
    GeneratorTuple t;
    t.provenance = "fpersis(k=" + std::to_string(k) + ",n=" + std::to_string(n) + ")";
    const auto& x0 = Element::x0();
    const auto& x1 = Element::x1();
    t.gens.push_back(Element(TreePair{spine.attach(1, c1d1.domain).attach(0, x0.pair().domain),
                                      spine.attach(1, c1d1.range).attach(0, x0.pair().range)}));
    t.gens.push_back(Element(TreePair{spine.attach(2, c2d2.domain).attach(0, x1.pair().domain),
                                      spine.attach(2, c2d2.range).attach(0, x1.pair().range)}));
    bool wrapped_ok = true;
    for (const auto& p : abs) {
        Element w = commutator_wrap(p);
        if (!in_commutator(w) || w.carets() != n - 1) wrapped_ok = false;
        t.gens.push_back(Element(TreePair{Tree::caret(w.pair().domain, Tree::leaf()),
                                          Tree::caret(w.pair().range, Tree::leaf())}));
    }
    detail::check(t, "wrapped payloads are (n-1)-caret [F,F] elements", wrapped_ok);
    bool sizes = true;
    for (const auto& g : t.gens)
        if (g.carets() != n) sizes = false;
    detail::check(t, "all generators have n carets", sizes);
    t.metadata.emplace_back("density_bound", "(1/k) mu^-9 mu^-3(k-2)");
    return t;
}

/// H x Z generators: left-rooted copies of hgens plus a right-rooted payload.
inline GeneratorTuple product_with_z_tuple(const std::vector<Element>& hgens, const TreePair& ab) {
    detail::require_nontrivial_payload(ab, "product_with_z_tuple");
    GeneratorTuple t;
    t.provenance = "product_with_z(k=" + std::to_string(hgens.size()) + ")";
    for (const auto& h : hgens) {
        if (h.is_identity()) throw std::invalid_argument("product_with_z_tuple: identity generator");
        t.gens.push_back(Element(
            TreePair{Tree::caret(h.pair().domain, Tree::leaf()), Tree::caret(h.pair().range, Tree::leaf())}));
    }
    t.gens.push_back(Element(
        TreePair{Tree::caret(Tree::leaf(), ab.domain), Tree::caret(Tree::leaf(), ab.range)}));

    bool cross = true;
    for (std::size_t i = 0; i + 1 < t.gens.size(); ++i)
        if (!commute(t.gens[i], t.gens.back())) cross = false;
    detail::check(t, "Z factor commutes with the rest", cross);
    bool extract = true;
    for (std::size_t i = 0; i + 1 < t.gens.size(); ++i)
        if (t.gens[i].pair().domain.left() != hgens[i].pair().domain ||
            t.gens[i].pair().range.left() != hgens[i].pair().range)
            extract = false;
    detail::check(t, "left subtrees reproduce hgens", extract);
    return t;
}

/// H wr Z generators: hgens rerooted under leaf 2 (1-based) of the hook tree,
/// plus x0 coupled with the payload under a root caret.
inline GeneratorTuple wreath_tuple(const std::vector<Element>& hgens, const TreePair& ab, int n) {
    if (ab.caret_count() != n - 3) throw std::invalid_argument("wreath_tuple: payload needs n-3 carets");
    detail::require_nontrivial_payload(ab, "wreath_tuple");
    // two left carets with an interior caret on the right leaf of the lower one
    Tree hook = Tree::caret(Tree::caret(Tree::leaf(), Tree::caret(Tree::leaf(), Tree::leaf())), Tree::leaf());
    GeneratorTuple t;
    t.provenance = "wreath(k=" + std::to_string(hgens.size()) + ",n=" + std::to_string(n) + ")";
    for (const auto& h : hgens) {
        if (h.is_identity()) throw std::invalid_argument("wreath_tuple: identity generator");
        if (h.carets() > n - 3) throw std::invalid_argument("wreath_tuple: component exceeds n-3 carets");
        t.gens.push_back(
            Element(TreePair{hook.attach(1, h.pair().domain), hook.attach(1, h.pair().range)}));
    }
    const auto& x0 = Element::x0();
    t.gens.push_back(Element(TreePair{Tree::caret(x0.pair().domain, ab.domain),
                                      Tree::caret(x0.pair().range, ab.range)}));

    detail::check(t, "count = k+1", t.gens.size() == hgens.size() + 1);
    detail::check(t, "coupler has n carets", t.gens.back().carets() == n);
    detail::check(t, "coupler left subtree is the x0 tree",
                  t.gens.back().pair().domain.left() == x0.pair().domain &&
                      t.gens.back().pair().range.left() == x0.pair().range);
    bool sup = true;
    Dyadic lo(1, 2), hi(3, 3); // leaf 2 of the hook covers [1/4, 3/8]
    for (std::size_t i = 0; i + 1 < t.gens.size(); ++i)
        if (!detail::support_within(t.gens[i], lo, hi)) sup = false;
    detail::check(t, "h_i supported in leaf-2 interval", sup);
    return t;
}

/// H x K generators inside the standard F x F: left-rooted hgens followed by
/// right-rooted kgens.
inline GeneratorTuple product_tuple(const std::vector<Element>& hgens, const std::vector<Element>& kgens) {
    GeneratorTuple t;
    t.provenance = "product(k=" + std::to_string(hgens.size()) + ",l=" + std::to_string(kgens.size()) + ")";
    for (const auto& h : hgens) {
        if (h.is_identity()) throw std::invalid_argument("product_tuple: identity generator");
        t.gens.push_back(Element(
            TreePair{Tree::caret(h.pair().domain, Tree::leaf()), Tree::caret(h.pair().range, Tree::leaf())}));
    }
    for (const auto& g : kgens) {
        if (g.is_identity()) throw std::invalid_argument("product_tuple: identity generator");
        t.gens.push_back(Element(
            TreePair{Tree::caret(Tree::leaf(), g.pair().domain), Tree::caret(Tree::leaf(), g.pair().range)}));
    }
    bool cross = true;
    for (std::size_t i = 0; i < hgens.size(); ++i)
        for (std::size_t j = hgens.size(); j < t.gens.size(); ++j)
            if (!commutator(t.gens[i], t.gens[j]).is_identity()) cross = false;
    detail::check(t, "all cross-commutators vanish", cross);
    bool extract = true;
    for (std::size_t i = 0; i < hgens.size(); ++i)
        if (t.gens[i].pair().domain.left() != hgens[i].pair().domain) extract = false;
    for (std::size_t j = 0; j < kgens.size(); ++j)
        if (t.gens[hgens.size() + j].pair().domain.right() != kgens[j].pair().domain) extract = false;
    detail::check(t, "subtree extraction round-trips", extract);
    return t;
}

} // namespace thompson
