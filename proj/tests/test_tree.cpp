#include "thompson/tree.hpp"
#include "thompson/rng.hpp"

#include <catch_amalgamated.hpp>

#include <set>

using namespace thompson;

TEST_CASE("encoding base cases") {
    CHECK(Tree::leaf().code() == "0");
    CHECK(Tree::caret(Tree::leaf(), Tree::leaf()).code() == "100");
    CHECK(Tree::right_spine(2).code() == "10100");
    CHECK(Tree::left_spine(2).code() == "11000");
}

TEST_CASE("decode rejects malformed strings with a position") {
    CHECK_THROWS_AS(Tree::from_code(""), TreeParseError);
    CHECK_THROWS_AS(Tree::from_code("10"), TreeParseError);
    CHECK_THROWS_AS(Tree::from_code("1002"), TreeParseError);
    CHECK_THROWS_AS(Tree::from_code("0 "), TreeParseError);
    try {
        Tree::from_code("10x");
    } catch (const TreeParseError& e) {
        CHECK(e.position == 2);
    }
}

TEST_CASE("round trip is the identity on all 3-caret trees") {
    const auto& trees = enumerate_trees(3);
    REQUIRE(trees.size() == 5);
    for (const auto& t : trees) CHECK(Tree::from_code(t.code()) == t);
}

TEST_CASE("enumeration matches the Catalan numbers and stays duplicate-free") {
    std::size_t expected[] = {1, 1, 2, 5, 14, 42, 132};
    for (int n = 0; n <= 6; ++n) {
        const auto& trees = enumerate_trees(n);
        CHECK(trees.size() == expected[n]);
        std::set<std::string> codes;
        for (const auto& t : trees) codes.insert(t.code());
        CHECK(codes.size() == trees.size());
        for (const auto& t : trees) {
            CHECK(t.caret_count() == n);
            CHECK(t.leaf_count() == n + 1);
        }
    }
    CHECK_THROWS(enumerate_trees(11));
}

TEST_CASE("leaf depths and attachment") {
    Tree t = Tree::right_spine(2); // leaves at depths 1,2,2
    auto d = t.leaf_depths();
    REQUIRE(d.size() == 3);
    CHECK(d[0] == 1);
    CHECK(d[1] == 2);
    CHECK(d[2] == 2);
    Tree u = t.attach(1, Tree::caret(Tree::leaf(), Tree::leaf()));
    CHECK(u.code() == "1011000");
    CHECK_THROWS_AS(t.attach(3, Tree::leaf()), std::out_of_range);
}

TEST_CASE("forest enumeration counts f(3,2) = 9") {
    CHECK(enumerate_forests(3, 2).size() == 9);
    CHECK(enumerate_forests(1, 0).size() == 1);
    for (const auto& f : enumerate_forests(3, 2)) CHECK(f.total_carets() == 2);
}

TEST_CASE("random codes survive the parser") {
    RngStream rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        // build a random tree by repeated leaf attachment
        Tree t = Tree::leaf();
        int n = 1 + static_cast<int>(rng.below(12));
        for (int i = 0; i < n; ++i) {
            int leaf = static_cast<int>(rng.below(static_cast<std::uint64_t>(t.leaf_count())));
            t = t.attach(leaf, Tree::caret(Tree::leaf(), Tree::leaf()));
        }
        CHECK(Tree::from_code(t.code()) == t);
        CHECK(t.caret_count() == n);
    }
}
