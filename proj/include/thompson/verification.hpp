// Aggregated verification suites behind the CLI `verify` subcommand: the
// four-way r_n agreement, the brute-force oracles, the sphere bound lemmas,
// the group-algebra identities and the sampler goodness-of-fit checks. Each
// suite returns a named pass/fail result; a false result makes the CLI exit
// nonzero.
#pragma once

#include "constructions.hpp"
#include "density.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace thompson {

struct VerifyResult {
    std::string name;
    bool ok = false;
    std::string detail;
};

/// Four-way agreement of the r_n pipelines up to max_n, with exact divisions.
inline VerifyResult verify_rn_methods(int max_n) {
    VerifyResult res{"rn four-method agreement", false, ""};
    BigSeq conv = rn_by_convolution(max_n);
    BigSeq cat = catalan(max_n);
    std::vector<BigInt> seeds(conv.values.begin() + 1, conv.values.begin() + 7);
    BigSeq rec = rn_by_recurrence(max_n, seeds);
    for (int n = 1; n <= max_n; ++n) {
        if (rec.at(n) != conv.at(n)) {
            res.detail = "recurrence disagrees at n=" + std::to_string(n);
            return res;
        }
        if (rn_by_formula(n, cat) != conv.at(n)) {
            res.detail = "closed formula disagrees at n=" + std::to_string(n);
            return res;
        }
        if (n >= 2 && rn_by_woodruff(n, cat) != conv.at(n)) {
            res.detail = "Woodruff formula disagrees at n=" + std::to_string(n);
            return res;
        }
    }
    res.ok = true;
    res.detail = "OK: 4 methods agree";
    return res;
}

/// Brute-force enumeration oracles at small sizes.
inline VerifyResult verify_oracles(int pair_max = 6, int tree_max = 8) {
    VerifyResult res{"enumeration oracles", false, ""};
    BigSeq cat = catalan(tree_max);
    for (int n = 0; n <= tree_max; ++n)
        if (BigInt(enumerate_trees(n).size()) != cat.at(n)) {
            res.detail = "tree count mismatch at n=" + std::to_string(n);
            return res;
        }
    BigSeq r = rn_by_convolution(pair_max);
    for (int n = 1; n <= pair_max; ++n)
        if (BigInt(count_reduced_pairs_brute(n)) != r.at(n)) {
            res.detail = "reduced pair count mismatch at n=" + std::to_string(n);
            return res;
        }
    for (int k = 1; k <= 4; ++k)
        for (int m = 0; m <= 5; ++m)
            if (BigInt(enumerate_forests(k, m).size()) != forest_count(k, m)) {
                res.detail = "forest count mismatch at k=" + std::to_string(k) + " m=" + std::to_string(m);
                return res;
            }
    res.ok = true;
    res.detail = "OK: counts match brute force";
    return res;
}

/// Sphere size bound lemmas on exact values.
inline VerifyResult verify_sphere_bounds(int k_max, int n_max) {
    VerifyResult res{"sphere bounds", false, ""};
    try {
        BigSeq r = rn_table(n_max + k_max);
        check_sum_bounds(k_max, n_max, r);
        check_max_bounds(k_max, n_max, r);
        res.ok = true;
        res.detail = "OK: bounds hold to k=" + std::to_string(k_max) + ", n=" + std::to_string(n_max);
    } catch (const std::exception& e) {
        res.detail = e.what();
    }
    return res;
}

/// Presentation relators, homomorphism laws and the three commutator
/// membership routes.
inline VerifyResult verify_algebra(int membership_max_carets = 5, int random_products = 2000,
                                   std::uint64_t seed = 1) {
    VerifyResult res{"group algebra", false, ""};
    Element u = multiply(Element::x0(), invert(Element::x1()));
    Element v1 = multiply(multiply(invert(Element::x0()), Element::x1()), Element::x0());
    Element v2 = multiply(multiply(power(Element::x0(), -2), Element::x1()), power(Element::x0(), 2));
    if (!commutator(u, v1).is_identity() || !commutator(u, v2).is_identity()) {
        res.detail = "a presentation relator is nontrivial";
        return res;
    }
    AbelianImage p0 = endpoint_slopes(Element::x0()), p1 = endpoint_slopes(Element::x1());
    if (!(p0 == AbelianImage{1, -1} && p1 == AbelianImage{0, -1})) {
        res.detail = "generator slope images are wrong";
        return res;
    }
    RngStream rng(seed, 77);
    for (int i = 0; i < random_products; ++i) {
        Element f = random_element(1 + static_cast<int>(rng.below(8)), rng);
        Element g = random_element(1 + static_cast<int>(rng.below(8)), rng);
        AbelianImage sum = endpoint_slopes(f) + endpoint_slopes(g);
        if (!(endpoint_slopes(multiply(f, g)) == sum)) {
            res.detail = "slope homomorphism not additive";
            return res;
        }
    }
    for (int n = 1; n <= membership_max_carets; ++n)
        for (const auto& p : enumerate_reduced_pairs(n)) {
            Element e(p);
            PLMap m = to_plmap(e);
            bool leaf_level = in_commutator(e);
            bool slopes = m.slope_exponent_at_zero() == 0 && m.slope_exponent_at_one() == 0;
            bool kernel = exponent_sums(e) == AbelianImage{0, 0};
            if (leaf_level != slopes || slopes != kernel) {
                res.detail = "commutator membership routes disagree at " + to_string(e);
                return res;
            }
        }
    res.ok = true;
    res.detail = "OK: relators, homomorphisms and membership routes agree";
    return res;
}

/// Chi-square goodness of fit of the samplers against small enumerations.
inline VerifyResult verify_samplers(std::uint64_t draws = 20000, std::uint64_t seed = 1) {
    VerifyResult res{"sampler uniformity", false, ""};
    RngStream rng(seed, 101);
    {
        const auto& trees = enumerate_trees(3);
        std::map<std::string, std::uint64_t> seen;
        for (std::uint64_t i = 0; i < draws; ++i) ++seen[random_tree(3, rng).code()];
        std::vector<std::uint64_t> counts;
        for (const auto& t : trees) counts.push_back(seen[t.code()]);
        double p = chi_square_uniform_pvalue(counts);
        if (p <= 1e-3) {
            res.detail = "random_tree(3) rejected, p=" + std::to_string(p);
            return res;
        }
    }
    {
        auto pairs = enumerate_reduced_pairs(3);
        std::map<std::string, std::uint64_t> seen;
        for (std::uint64_t i = 0; i < draws; ++i) ++seen[pair_to_string(random_reduced_pair(3, rng))];
        std::vector<std::uint64_t> counts;
        for (const auto& q : pairs) counts.push_back(seen[pair_to_string(q)]);
        double p = chi_square_uniform_pvalue(counts);
        if (p <= 1e-3) {
            res.detail = "random_reduced_pair(3) rejected, p=" + std::to_string(p);
            return res;
        }
    }
    res.ok = true;
    res.detail = "OK: chi-square accepts the samplers";
    return res;
}

} // namespace thompson
