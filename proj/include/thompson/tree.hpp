// Rooted binary trees of carets, stored as their canonical preorder encoding:
// '1' for a caret, '0' for a leaf, so a tree with n carets is a string of n
// ones and n+1 zeros. The encoding is a bijection onto balanced strings and
// doubles as the value representation (equality, ordering, hashing are string
// operations).
#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace thompson {

struct TreeParseError : std::runtime_error {
    std::size_t position;
    TreeParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

namespace detail {

/// End index (one past) of the subtree starting at pos.
inline std::size_t subtree_end(std::string_view code, std::size_t pos) {
    int need = 1;
    while (need > 0) {
        need += code[pos] == '1' ? 1 : -1;
        ++pos;
    }
    return pos;
}

inline void validate_code(std::string_view code) {
    if (code.empty()) throw TreeParseError("empty encoding", 0);
    int need = 1;
    for (std::size_t i = 0; i < code.size(); ++i) {
        char c = code[i];
        if (c != '0' && c != '1') throw TreeParseError("expected '0' or '1'", i);
        need += c == '1' ? 1 : -1;
        if (need == 0 && i + 1 < code.size()) throw TreeParseError("trailing input after complete tree", i + 1);
    }
    if (need != 0) throw TreeParseError("unexpected end of input", code.size());
}

} // namespace detail

class Tree {
public:
    Tree() : code_("0") {}

    static Tree leaf() { return Tree(); }

    static Tree caret(const Tree& left, const Tree& right) {
        std::string c;
        c.reserve(1 + left.code_.size() + right.code_.size());
        c += '1';
        c += left.code_;
        c += right.code_;
        return Tree(std::move(c), unchecked_tag{});
    }

    static Tree from_code(std::string_view code) {
        detail::validate_code(code);
        return Tree(std::string(code), unchecked_tag{});
    }

    /// Internal fast path; code must already be well formed.
    struct unchecked_tag {};
    Tree(std::string code, unchecked_tag) : code_(std::move(code)) {}

    /// Chain of n carets, each the right child of its parent. n = 0 gives a leaf.
    static Tree right_spine(int n) {
        std::string c;
        for (int i = 0; i < n; ++i) c += "10";
        c += '0';
        return Tree(std::move(c), unchecked_tag{});
    }

    /// Chain of n carets, each the left child of its parent.
    static Tree left_spine(int n) {
        std::string c(n, '1');
        c.append(n + 1, '0');
        return Tree(std::move(c), unchecked_tag{});
    }

    const std::string& code() const { return code_; }
    int caret_count() const { return static_cast<int>(code_.size() / 2); }
    int leaf_count() const { return caret_count() + 1; }
    bool is_leaf() const { return code_.size() == 1; }

    Tree left() const {
        require_caret();
        return Tree(code_.substr(1, detail::subtree_end(code_, 1) - 1), unchecked_tag{});
    }
    Tree right() const {
        require_caret();
        std::size_t mid = detail::subtree_end(code_, 1);
        return Tree(code_.substr(mid), unchecked_tag{});
    }

    /// Depth of every leaf, left to right (root depth 0).
    std::vector<int> leaf_depths() const {
        std::vector<int> out;
        out.reserve(leaf_count());
        int depth = 0;
        std::vector<int> stack;
        for (char c : code_) {
            if (c == '1') {
                stack.push_back(depth);
                ++depth;
            } else {
                out.push_back(depth);
                if (!stack.empty()) {
                    depth = stack.back() + 1;
                    stack.pop_back();
                }
            }
        }
        return out;
    }

    /// Replace leaf number `leaf_index` (0-based, left to right) by `t`.
    Tree attach(int leaf_index, const Tree& t) const {
        int seen = 0;
        for (std::size_t i = 0; i < code_.size(); ++i) {
            if (code_[i] == '0') {
                if (seen == leaf_index) {
                    std::string c = code_;
                    c.replace(i, 1, t.code_);
                    return Tree(std::move(c), unchecked_tag{});
                }
                ++seen;
            }
        }
        throw std::out_of_range("Tree::attach: leaf index " + std::to_string(leaf_index));
    }

    /// Subtree rooted at leaf position of a refinement; identity if this is a leaf.
    friend bool operator==(const Tree& a, const Tree& b) { return a.code_ == b.code_; }
    friend bool operator!=(const Tree& a, const Tree& b) { return a.code_ != b.code_; }
    friend bool operator<(const Tree& a, const Tree& b) {
        if (a.code_.size() != b.code_.size()) return a.code_.size() < b.code_.size();
        return a.code_ < b.code_;
    }

private:
    void require_caret() const {
        if (is_leaf()) throw std::logic_error("leaf has no children");
    }
    explicit Tree(std::string code) : code_(std::move(code)) {}
    std::string code_;
};

/// Ordered tuple of (possibly 0-caret) trees.
struct Forest {
    std::vector<Tree> trees;

    int total_carets() const {
        int s = 0;
        for (const auto& t : trees) s += t.caret_count();
        return s;
    }
    static Forest empty_of_size(int k) { return Forest{std::vector<Tree>(static_cast<std::size_t>(k))}; }
};

inline constexpr int kTreeEnumerationCap = 10;

/// All trees with exactly n carets (c_n of them), lexicographically ordered
/// within each split. Brute-force oracle; capped.
inline const std::vector<Tree>& enumerate_trees(int n, int cap = kTreeEnumerationCap) {
    if (n < 0) throw std::invalid_argument("enumerate_trees: negative n");
    if (n > cap) throw std::invalid_argument("enumerate_trees: n exceeds brute-force cap");
    static std::vector<std::vector<Tree>> memo = {{Tree::leaf()}};
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    while (static_cast<int>(memo.size()) <= n) {
        int sz = static_cast<int>(memo.size());
        std::vector<Tree> level;
        for (int i = 0; i < sz; ++i)
            for (const auto& l : memo[i])
                for (const auto& r : memo[sz - 1 - i]) level.push_back(Tree::caret(l, r));
        memo.push_back(std::move(level));
    }
    return memo[n];
}

/// All forests of k trees with m total carets (f(k, m) of them).
inline std::vector<Forest> enumerate_forests(int k, int m) {
    if (k < 1) throw std::invalid_argument("enumerate_forests: k must be >= 1");
    std::vector<Forest> out;
    std::vector<Tree> current(static_cast<std::size_t>(k));
    std::function<void(int, int)> rec = [&](int idx, int left) {
        if (idx == k - 1) {
            for (const auto& t : enumerate_trees(left)) {
                current[idx] = t;
                out.push_back(Forest{current});
            }
            return;
        }
        for (int use = 0; use <= left; ++use)
            for (const auto& t : enumerate_trees(use)) {
                current[idx] = t;
                rec(idx + 1, left - use);
            }
    };
    rec(0, m);
    return out;
}

} // namespace thompson

template <>
struct std::hash<thompson::Tree> {
    std::size_t operator()(const thompson::Tree& t) const noexcept {
        return std::hash<std::string>{}(t.code());
    }
};
