#include "thompson/enumeration.hpp"
#include "thompson/treepair.hpp"

#include <catch_amalgamated.hpp>

using namespace thompson;

TEST_CASE("catalan numbers and their recurrence") {
    BigSeq c = catalan(30);
    CHECK(c.at(0) == 1);
    CHECK(c.at(3) == 5);
    CHECK(c.at(4) == 14);
    CHECK(c.at(10) == 16796);
    for (int n = 0; n < 30; ++n) CHECK((n + 2) * c.at(n + 1) == 2 * (2 * n + 1) * c.at(n));
}

TEST_CASE("forest counts") {
    CHECK(forest_count(3, 2) == 9);
    CHECK(forest_count(2, 2) == 5);
    for (int k = 1; k <= 6; ++k) CHECK(forest_count(k, 0) == 1);
    CHECK_THROWS_AS(forest_count(0, 3), std::invalid_argument);
    // brute-force agreement
    for (int k = 1; k <= 4; ++k)
        for (int m = 0; m <= 6; ++m) CHECK(BigInt(enumerate_forests(k, m).size()) == forest_count(k, m));
    // f(k,n) equals the coefficient of x^n in C(x)^k: convolution check
    BigSeq c = catalan(12);
    for (int k = 2; k <= 4; ++k)
        for (int n = 0; n <= 8; ++n) {
            BigInt conv = 0;
            for (int i = 0; i <= n; ++i) conv += forest_count(k - 1, i) * c.at(n - i);
            CHECK(conv == forest_count(k, n));
        }
}

TEST_CASE("the four r_n pipelines agree (small scale; acceptance covers 500)") {
    const int N = 120;
    BigSeq conv = rn_by_convolution(N);
    CHECK(conv.at(1) == 1);
    CHECK(conv.at(2) == 2);
    CHECK(conv.at(3) == 14);
    BigSeq cat = catalan(N);
    std::vector<BigInt> seeds(conv.values.begin() + 1, conv.values.begin() + 7);
    BigSeq rec = rn_by_recurrence(N, seeds);
    for (int n = 1; n <= N; ++n) {
        CHECK(rec.at(n) == conv.at(n));
        CHECK(rn_by_formula(n, cat) == conv.at(n));
        if (n >= 2) CHECK(rn_by_woodruff(n, cat) == conv.at(n));
    }
}

TEST_CASE("closed formula term values spelled out") {
    // r_2 = -2 + 4, r_3 = 1 - 12 + 25
    BigSeq cat = catalan(3);
    CHECK(rn_by_formula(2, cat) == 2);
    CHECK(rn_by_formula(3, cat) == 14);
    CHECK(rn_by_woodruff(2, cat) == 2);
    CHECK(rn_by_woodruff(3, cat) == 14);
}

TEST_CASE("counts match the brute-force enumerators") {
    BigSeq r = rn_by_convolution(6);
    for (int n = 1; n <= 6; ++n) CHECK(BigInt(count_reduced_pairs_brute(n)) == r.at(n));
}

TEST_CASE("recurrence divisions stay exact and the anchor matters") {
    // the printed relation only holds from n = 2 on; residuals at 0 and 1 are
    // 320 and -128 against the independently computed table
    BigSeq conv = rn_by_convolution(8);
    auto residual = [&](long n) {
        auto spec = rn_recurrence_spec(
            std::vector<BigInt>(conv.values.begin() + 1, conv.values.begin() + 7));
        BigInt acc = 0;
        for (int j = 0; j <= 5; ++j) acc += spec.poly_at(j, n) * conv.at(n + j);
        return acc;
    };
    CHECK(residual(0) == 320);
    CHECK(residual(1) == -128);
    CHECK(residual(2) == 0);
    CHECK(residual(3) == 0);
}

TEST_CASE("generic recurrence evaluator reproduces squared Catalan numbers") {
    // (n+2)^2 c_{n+1}^2 - 4 (2n+1)^2 c_n^2 = 0
    RecurrenceSpec spec;
    spec.order = 1;
    spec.coeff_polys = {{-4, -16, -16}, {4, 4, 1}};
    spec.initial = {1};
    spec.offset = 0;
    spec.anchor_start = 0;
    auto vals = spec.evaluate(12);
    BigSeq c = catalan(12);
    for (int n = 0; n <= 12; ++n) CHECK(vals[static_cast<std::size_t>(n)] == c.at(n) * c.at(n));
}

TEST_CASE("substitution identity at the coefficient level") {
    // coefficients of (1-z) P(z(1-z)) match r_n for n <= 40
    const int N = 40;
    BigSeq cat = catalan(N);
    BigSeq r = rn_by_convolution(N);
    std::vector<BigInt> acc(N + 1, BigInt(0));
    // w^k where w = z(1-z): contributes c_k^2 * (-1)^j C(k, j) to z^{k+j}
    for (int k = 1; k <= N; ++k) {
        BigInt ck2 = cat.at(k) * cat.at(k);
        for (int j = 0; k + j <= N; ++j) {
            BigInt term = ck2 * binomial(k, j);
            acc[static_cast<std::size_t>(k + j)] += (j % 2 == 0) ? term : -term;
        }
    }
    // multiply by (1-z)
    std::vector<BigInt> res(N + 1, BigInt(0));
    for (int n = 0; n <= N; ++n) {
        res[static_cast<std::size_t>(n)] = acc[static_cast<std::size_t>(n)];
        if (n > 0) res[static_cast<std::size_t>(n)] -= acc[static_cast<std::size_t>(n - 1)];
    }
    for (int n = 1; n <= N; ++n) CHECK(res[static_cast<std::size_t>(n)] == r.at(n));
}

TEST_CASE("r_n sits between c_n and c_n^2") {
    BigSeq r = rn_by_convolution(60);
    BigSeq c = catalan(60);
    for (int n = 1; n <= 60; ++n) {
        CHECK(c.at(n) <= r.at(n));
        CHECK(r.at(n) <= c.at(n) * c.at(n));
    }
}

TEST_CASE("partial sums stay below the next term") {
    BigSeq r = rn_table(1000);
    CHECK(partial_sum_check(r, 1000));
    CHECK(r.at(1) + r.at(2) <= r.at(3));
}

TEST_CASE("quotients approach mu^-k") {
    BigSeq r = rn_table(1000);
    auto d0 = quotient_limit_check(r, 0, 900);
    CHECK(d0.observed == 1);
    auto d1 = quotient_limit_check(r, 1, 1000);
    CHECK(d1.rel_error < Real(1) / 200);
    auto d3 = quotient_limit_check(r, 3, 1000);
    CHECK(d3.rel_error < Real(1) / 50);
    CHECK_THROWS_AS(quotient_limit_check(r, 11, 100), std::invalid_argument);
}

TEST_CASE("asymptotic diagnostics at reduced scale") {
    BigSeq r = rn_table(800);
    auto rep = asymptotic_report(r, 400, 800);
    // mu to 10 places
    CHECK(abs(rep.mu - Real("14.9282032303")) < Real("5e-11"));
    CHECK(rep.ratio_deviation < Real(1) / 75); // dominated by 3/n at n = 400
    CHECK(rep.constant_rel_error < Real(1) / 50);
    CHECK(rep.correction_checked);
}
