// Tree pair diagrams, the reduction/decoration pair of algorithms, and the
// brute-force enumerator for reduced pairs. A pair of equal-caret-count trees
// represents an element of Thompson's group F; the reduced pair is the
// canonical representative. The single-caret pair is reduced by convention
// and represents the identity.
#pragma once

#include "tree.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace thompson {

struct TreePair {
    Tree domain;
    Tree range;

    int caret_count() const { return domain.caret_count(); }

    friend bool operator==(const TreePair& a, const TreePair& b) {
        return a.domain == b.domain && a.range == b.range;
    }
    friend bool operator!=(const TreePair& a, const TreePair& b) { return !(a == b); }
    friend bool operator<(const TreePair& a, const TreePair& b) {
        if (a.domain != b.domain) return a.domain < b.domain;
        return a.range < b.range;
    }
};

inline TreePair make_pair_checked(Tree domain, Tree range) {
    if (domain.caret_count() != range.caret_count())
        throw std::invalid_argument("tree pair: unequal caret counts");
    if (domain.caret_count() < 1) throw std::invalid_argument("tree pair: trees must be nonempty");
    return TreePair{std::move(domain), std::move(range)};
}

inline TreePair identity_pair() {
    return TreePair{Tree::caret(Tree::leaf(), Tree::leaf()), Tree::caret(Tree::leaf(), Tree::leaf())};
}

namespace detail {

/// Exposed carets (both children leaves) as (first leaf number, code position),
/// ascending in leaf number.
inline void exposed_carets(std::string_view code, std::vector<std::pair<int, std::size_t>>& out) {
    out.clear();
    int zeros = 0;
    for (std::size_t i = 0; i + 2 < code.size(); ++i) {
        if (code[i] == '1' && code[i + 1] == '0' && code[i + 2] == '0')
            out.emplace_back(zeros, i);
        if (code[i] == '0') ++zeros;
    }
}

/// Lowest leaf number carrying an exposed caret in both codes, or -1.
inline int first_common_exposed(std::string_view dom, std::string_view rng, std::size_t& pos_dom,
                                std::size_t& pos_rng) {
    static thread_local std::vector<std::pair<int, std::size_t>> ed, er;
    exposed_carets(dom, ed);
    exposed_carets(rng, er);
    std::size_t i = 0, j = 0;
    while (i < ed.size() && j < er.size()) {
        if (ed[i].first == er[j].first) {
            pos_dom = ed[i].second;
            pos_rng = er[j].second;
            return ed[i].first;
        }
        if (ed[i].first < er[j].first)
            ++i;
        else
            ++j;
    }
    return -1;
}

} // namespace detail

/// True iff no caret with identical adjacent leaf numbers appears in both
/// trees. The single-caret pair is reduced by convention.
inline bool is_reduced(const TreePair& p) {
    if (p.caret_count() <= 1) return true;
    std::size_t a, b;
    return detail::first_common_exposed(p.domain.code(), p.range.code(), a, b) < 0;
}

/// Repeatedly remove the lowest-numbered common exposed caret until none is
/// left. Total, deterministic; fixes the identity convention at one caret.
inline TreePair reduce(TreePair p) {
    std::string dom = p.domain.code(), rng = p.range.code();
    while (dom.size() > 3) {
        std::size_t pd, pr;
        if (detail::first_common_exposed(dom, rng, pd, pr) < 0) break;
        dom.replace(pd, 3, "0");
        rng.replace(pr, 3, "0");
    }
    return TreePair{Tree(std::move(dom), Tree::unchecked_tag{}), Tree(std::move(rng), Tree::unchecked_tag{})};
}

/// Append tree j of the forest to leaf j of both trees (the inverse of
/// reduction). The forest must have exactly leaf_count trees.
inline TreePair decorate(const TreePair& p, const Forest& f) {
    if (static_cast<int>(f.trees.size()) != p.domain.leaf_count())
        throw std::invalid_argument("decorate: forest size must equal leaf count");
    auto splice = [&](const std::string& code) {
        std::string out;
        out.reserve(code.size() + 2 * f.total_carets());
        int leaf = 0;
        for (char c : code) {
            if (c == '1')
                out += '1';
            else
                out += f.trees[leaf++].code();
        }
        return Tree(std::move(out), Tree::unchecked_tag{});
    };
    return TreePair{splice(p.domain.code()), splice(p.range.code())};
}

inline std::string pair_to_string(const TreePair& p) {
    return p.domain.code() + "|" + p.range.code();
}

inline TreePair pair_from_string(std::string_view s) {
    auto bar = s.find('|');
    if (bar == std::string_view::npos) throw TreeParseError("missing '|' separator", s.size());
    return make_pair_checked(Tree::from_code(s.substr(0, bar)), Tree::from_code(s.substr(bar + 1)));
}

inline constexpr int kPairEnumerationCap = 8;

/// All reduced pairs with n carets (r_n of them). Brute-force oracle; capped.
inline std::vector<TreePair> enumerate_reduced_pairs(int n, int cap = kPairEnumerationCap) {
    if (n < 1) throw std::invalid_argument("enumerate_reduced_pairs: n must be >= 1");
    if (n > cap) throw std::invalid_argument("enumerate_reduced_pairs: n exceeds brute-force cap");
    std::vector<TreePair> out;
    const auto& trees = enumerate_trees(n);
    for (const auto& d : trees)
        for (const auto& r : trees) {
            TreePair p{d, r};
            if (is_reduced(p)) out.push_back(std::move(p));
        }
    return out;
}

/// |enumerate_reduced_pairs(n)| without materializing the pairs.
inline long count_reduced_pairs_brute(int n) {
    const auto& trees = enumerate_trees(n);
    long count = 0;
    for (const auto& d : trees)
        for (const auto& r : trees)
            if (is_reduced(TreePair{d, r})) ++count;
    return count;
}

} // namespace thompson

template <>
struct std::hash<thompson::TreePair> {
    std::size_t operator()(const thompson::TreePair& p) const noexcept {
        std::size_t h = std::hash<std::string>{}(p.domain.code());
        return h ^ (std::hash<std::string>{}(p.range.code()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
};
