#include "thompson/treepair.hpp"
#include "thompson/enumeration.hpp"
#include "thompson/rng.hpp"

#include <catch_amalgamated.hpp>

#include <functional>
#include <set>

using namespace thompson;

namespace {

// Reduce with an arbitrary choice of common exposed caret at every step.
TreePair reduce_random_order(TreePair p, RngStream& rng) {
    for (;;) {
        if (p.caret_count() <= 1) return p;
        std::vector<std::pair<int, std::size_t>> ed, er;
        detail::exposed_carets(p.domain.code(), ed);
        detail::exposed_carets(p.range.code(), er);
        std::vector<std::pair<std::size_t, std::size_t>> common;
        for (const auto& [ld, pd] : ed)
            for (const auto& [lr, pr] : er)
                if (ld == lr) common.emplace_back(pd, pr);
        if (common.empty()) return p;
        auto [pd, pr] = common[rng.below(common.size())];
        std::string d = p.domain.code(), r = p.range.code();
        d.replace(pd, 3, "0");
        r.replace(pr, 3, "0");
        p = TreePair{Tree(std::move(d), Tree::unchecked_tag{}), Tree(std::move(r), Tree::unchecked_tag{})};
    }
}

// Explore every reduction order; insert each terminal pair into out.
void all_reduction_orders(const TreePair& p, std::set<std::string>& out) {
    if (p.caret_count() > 1) {
        std::vector<std::pair<int, std::size_t>> ed, er;
        detail::exposed_carets(p.domain.code(), ed);
        detail::exposed_carets(p.range.code(), er);
        std::vector<std::pair<std::size_t, std::size_t>> common;
        for (const auto& [ld, pd] : ed)
            for (const auto& [lr, pr] : er)
                if (ld == lr) common.emplace_back(pd, pr);
        if (!common.empty()) {
            for (auto [pd, pr] : common) {
                std::string d = p.domain.code(), r = p.range.code();
                d.replace(pd, 3, "0");
                r.replace(pr, 3, "0");
                all_reduction_orders(TreePair{Tree(std::move(d), Tree::unchecked_tag{}),
                                              Tree(std::move(r), Tree::unchecked_tag{})},
                                     out);
            }
            return;
        }
    }
    out.insert(pair_to_string(p));
}

} // namespace

TEST_CASE("every reduction order reaches the same reduced pair (exhaustive to 4 carets)") {
    for (int n = 2; n <= 4; ++n)
        for (const auto& d : enumerate_trees(n))
            for (const auto& r : enumerate_trees(n)) {
                TreePair p{d, r};
                std::set<std::string> outcomes;
                all_reduction_orders(p, outcomes);
                REQUIRE(outcomes.size() == 1);
                CHECK(*outcomes.begin() == pair_to_string(reduce(p)));
            }
}

TEST_CASE("single caret pair is reduced and stays put") {
    TreePair id = identity_pair();
    CHECK(is_reduced(id));
    CHECK(reduce(id) == id);
}

TEST_CASE("a five caret pair with a common exposed caret at leaves 1,2 reduces by one caret") {
    // decorate a reduced 4-caret pair with a single caret at leaf 1 of both trees
    auto pairs4 = enumerate_reduced_pairs(4);
    const TreePair& q = pairs4.front();
    Forest f = Forest::empty_of_size(5);
    f.trees[1] = Tree::caret(Tree::leaf(), Tree::leaf());
    TreePair p = decorate(q, f);
    CHECK(p.caret_count() == 5);
    CHECK_FALSE(is_reduced(p));
    CHECK(reduce(p) == q);
}

TEST_CASE("reduced pair counts at small sizes") {
    CHECK(enumerate_reduced_pairs(1).size() == 1);
    CHECK(enumerate_reduced_pairs(2).size() == 2);
    auto pairs = enumerate_reduced_pairs(3);
    CHECK(pairs.size() == 14);
    // exactly 14 of the 25 three-caret pairs are reduced
    int reduced = 0;
    for (const auto& d : enumerate_trees(3))
        for (const auto& r : enumerate_trees(3))
            if (is_reduced(TreePair{d, r})) ++reduced;
    CHECK(reduced == 14);
    CHECK_THROWS(enumerate_reduced_pairs(9));
}

TEST_CASE("decorate with the empty forest is the identity") {
    for (const auto& p : enumerate_reduced_pairs(3))
        CHECK(decorate(p, Forest::empty_of_size(4)) == p);
    CHECK_THROWS_AS(decorate(identity_pair(), Forest::empty_of_size(3)), std::invalid_argument);
}

TEST_CASE("decorations of the 2-caret pairs: 9 forests of two carets, 28 of three") {
    // Fig. 2 pins f(3,2) = 9; the decoration family for a 2-caret base uses
    // three trees, giving 9 four-caret pairs and f(3,3) = 28 five-caret pairs.
    for (const auto& base : enumerate_reduced_pairs(2)) {
        std::set<std::string> four, five;
        for (const auto& f : enumerate_forests(3, 2)) {
            TreePair p = decorate(base, f);
            CHECK(reduce(p) == base);
            four.insert(pair_to_string(p));
        }
        CHECK(four.size() == 9);
        for (const auto& f : enumerate_forests(3, 3)) {
            TreePair p = decorate(base, f);
            CHECK(p.caret_count() == 5);
            CHECK(reduce(p) == base);
            five.insert(pair_to_string(p));
        }
        CHECK(five.size() == 28);
    }
}

TEST_CASE("decoration is a bijection onto all 5-caret pairs") {
    std::set<std::string> seen;
    BigInt total = 0;
    for (int i = 1; i <= 5; ++i) {
        for (const auto& base : enumerate_reduced_pairs(i)) {
            for (const auto& f : enumerate_forests(i + 1, 5 - i)) {
                TreePair p = decorate(base, f);
                CHECK(p.caret_count() == 5);
                CHECK(reduce(p) == base);
                bool fresh = seen.insert(pair_to_string(p)).second;
                CHECK(fresh);
                ++total;
            }
        }
    }
    BigSeq cat = catalan(5);
    CHECK(BigInt(seen.size()) == cat.at(5) * cat.at(5));
    CHECK(total == cat.at(5) * cat.at(5));
}

TEST_CASE("decorate-then-reduce returns the base for all small cases") {
    for (int i = 1; i <= 3; ++i)
        for (const auto& base : enumerate_reduced_pairs(i))
            for (int m = 0; m <= 3; ++m)
                for (const auto& f : enumerate_forests(i + 1, m)) CHECK(reduce(decorate(base, f)) == base);
}

TEST_CASE("reduction is confluent and idempotent") {
    RngStream rng(17);
    for (int n = 2; n <= 4; ++n)
        for (const auto& d : enumerate_trees(n))
            for (const auto& r : enumerate_trees(n)) {
                TreePair p{d, r};
                TreePair canonical = reduce(p);
                CHECK(reduce(canonical) == canonical);
                for (int trial = 0; trial < 4; ++trial) CHECK(reduce_random_order(p, rng) == canonical);
            }
    // spot checks at 6 carets
    const auto& trees6 = enumerate_trees(6);
    for (int trial = 0; trial < 3000; ++trial) {
        TreePair p{trees6[rng.below(trees6.size())], trees6[rng.below(trees6.size())]};
        CHECK(reduce_random_order(p, rng) == reduce(p));
    }
}

TEST_CASE("caret bookkeeping: decorate adds, reduce never increases") {
    RngStream rng(23);
    const auto& trees5 = enumerate_trees(5);
    for (int trial = 0; trial < 2000; ++trial) {
        TreePair p{trees5[rng.below(trees5.size())], trees5[rng.below(trees5.size())]};
        TreePair q = reduce(p);
        CHECK(q.caret_count() <= p.caret_count());
        CHECK((q.caret_count() == p.caret_count()) == is_reduced(p));
    }
    for (const auto& base : enumerate_reduced_pairs(2))
        for (const auto& f : enumerate_forests(3, 3))
            CHECK(decorate(base, f).caret_count() == base.caret_count() + f.total_carets());
}

TEST_CASE("pair serialization round-trips and validates") {
    for (const auto& p : enumerate_reduced_pairs(3)) CHECK(pair_from_string(pair_to_string(p)) == p);
    CHECK_THROWS_AS(pair_from_string("100"), TreeParseError);
    CHECK_THROWS_AS(pair_from_string("100|10100"), std::invalid_argument);
    CHECK_THROWS_AS(pair_from_string("0|0"), std::invalid_argument);
}
