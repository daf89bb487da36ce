// Exact integer tables for the Catalan numbers c_n, the squared Catalan
// numbers, forest counts f(k,m) and the reduced-pair counts r_n, computed by
// four independent routes that must agree:
//   * convolution against c_n^2 through the decoration identity,
//   * the alternating binomial closed form,
//   * the 5-term polynomial recurrence (valid from anchor n = 2 on; the two
//     earlier instances do not annihilate the sequence, so the evaluator
//     seeds r_1..r_6 and checks every division for exactness),
//   * Woodruff's double sum.
// Asymptotic diagnostics against A mu^n / n^3 with mu = 8 + 4 sqrt(3) round
// out the module.
#pragma once

#include "numeric.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace thompson {

/// Named table of exact integers indexed from 0.
struct BigSeq {
    std::string name;
    std::vector<BigInt> values;

    const BigInt& at(std::size_t n) const { return values.at(n); }
    std::size_t max_index() const { return values.size() - 1; }
};

/// c_0..c_N via the exact recurrence (n+2) c_{n+1} = 2(2n+1) c_n.
inline BigSeq catalan(int N) {
    BigSeq seq{"catalan", {}};
    seq.values.reserve(N + 1);
    seq.values.push_back(1);
    for (int n = 0; n < N; ++n)
        seq.values.push_back(divide_exact(2 * (2 * n + 1) * seq.values.back(), BigInt(n + 2), "catalan"));
    return seq;
}

/// f(k, n) = k/(2n+k) * C(2n+k, n): forests of k trees with n total carets.
inline BigInt forest_count(int k, int n) {
    if (k < 1) throw std::invalid_argument("forest_count: k must be >= 1");
    if (n < 0) throw std::invalid_argument("forest_count: n must be >= 0");
    return divide_exact(BigInt(k) * binomial(2 * n + k, n), BigInt(2 * n + k), "forest_count");
}

/// r_1..r_N from c_n^2 = sum_i r_i f(i+1, n-i); r_0 = 0.
inline BigSeq rn_by_convolution(int N) {
    BigSeq cat = catalan(N);
    BigSeq seq{"rn_convolution", {0}};
    seq.values.reserve(N + 1);
    for (int n = 1; n <= N; ++n) {
        BigInt v = cat.at(n) * cat.at(n);
        for (int i = 1; i < n; ++i) v -= seq.at(i) * forest_count(i + 1, n - i);
        seq.values.push_back(v);
    }
    return seq;
}

/// r_n = sum_{k=1}^n (-1)^{n-k} C(k+1, n-k) c_k^2.
inline BigInt rn_by_formula(int n, const BigSeq& cat) {
    if (n < 1) throw std::invalid_argument("rn_by_formula: n must be >= 1");
    BigInt v = 0;
    for (int k = 1; k <= n; ++k) {
        if (n - k > k + 1) continue;
        BigInt term = binomial(k + 1, n - k) * cat.at(k) * cat.at(k);
        v += ((n - k) % 2 == 0) ? term : -term;
    }
    return v;
}

inline BigInt rn_by_formula(int n) { return rn_by_formula(n, catalan(n)); }

/// A P-recursive specification sum_j p_j(n) a_{n+j} = 0 of order `order`,
/// with integer polynomial coefficients listed low to high degree.
struct RecurrenceSpec {
    int order = 0;
    std::vector<std::vector<BigInt>> coeff_polys; // coeff_polys[j] multiplies a_{n+j}
    std::vector<BigInt> initial;                  // a_{offset} .. a_{offset+m-1}
    int offset = 0;                               // index of initial[0]
    int anchor_start = 0;                         // least n at which the relation holds

    BigInt poly_at(int j, long n) const {
        BigInt v = 0, x = 1;
        for (const auto& c : coeff_polys[static_cast<std::size_t>(j)]) {
            v += c * x;
            x *= n;
        }
        return v;
    }

    /// Evaluate values index offset..N; each step divides by the leading
    /// polynomial and fails hard when the division is not exact.
    std::vector<BigInt> evaluate(int N) const {
        std::vector<BigInt> a(initial);
        for (long idx = offset + static_cast<long>(a.size()); idx <= N; ++idx) {
            long n = idx - order;
            if (n < anchor_start) throw std::logic_error("RecurrenceSpec: not enough initial values");
            BigInt num = 0;
            for (int j = 0; j < order; ++j)
                num -= poly_at(j, n) * a.at(static_cast<std::size_t>(n + j - offset));
            a.push_back(divide_exact(num, poly_at(order, n), "RecurrenceSpec::evaluate"));
        }
        return a;
    }
};

/// The 5-term recurrence satisfied by r_n, anchored at n = 2. The relation
/// fails at n = 0 and n = 1 (residuals 320 and -128 against the convolution
/// values), so six seeds r_1..r_6 are required.
inline RecurrenceSpec rn_recurrence_spec(const std::vector<BigInt>& seeds_r1_to_r6) {
    if (seeds_r1_to_r6.size() != 6) throw std::invalid_argument("rn recurrence needs seeds r_1..r_6");
    RecurrenceSpec spec;
    spec.order = 5;
    spec.coeff_polys = {
        {0, 0, -64, -64},                  // -64 n^2 (n+1)
        {320, 864, 736, 192},              // 32 (6n+5)(n+2)(n+1)
        {-2340, -3276, -1468, -212},       // -4 (n+3)(53 n^2 + 208 n + 195)
        {3960, 3606, 1070, 104},           // 2 (4n+15)(n+4)(13n+33)
        {-2020, -1329, -290, -21},         // -(n+5)(n+4)(21n+101)
        {180, 96, 17, 1},                  // (n+5)(n+6)^2
    };
    spec.initial = seeds_r1_to_r6;
    spec.offset = 1;
    spec.anchor_start = 2;
    return spec;
}

/// r_1..r_N from the hardcoded recurrence, seeded by the convolution values.
inline BigSeq rn_by_recurrence(int N, const std::vector<BigInt>& seeds_r1_to_r6) {
    auto values = rn_recurrence_spec(seeds_r1_to_r6).evaluate(N);
    BigSeq seq{"rn_recurrence", {0}};
    seq.values.insert(seq.values.end(), values.begin(), values.end());
    return seq;
}

inline BigSeq rn_by_recurrence(int N) {
    BigSeq conv = rn_by_convolution(std::min(N, 6));
    std::vector<BigInt> seeds(conv.values.begin() + 1, conv.values.end());
    seeds.resize(6, BigInt(0));
    if (N < 6) { // degenerate: no recurrence step needed
        BigSeq seq{"rn_recurrence", {0}};
        for (int i = 1; i <= N; ++i) seq.values.push_back(conv.at(i));
        return seq;
    }
    return rn_by_recurrence(N, seeds);
}

/// Woodruff's double-sum formula, defined for n >= 2.
inline BigInt rn_by_woodruff(int n, const BigSeq& cat) {
    if (n < 2) throw std::invalid_argument("rn_by_woodruff: defined for n >= 2");
    BigInt total = 0;
    for (int k = 1; 2 * k <= n + 1; ++k) {
        BigInt inner = 0;
        for (int i = 0; i <= k; ++i) {
            BigInt term = binomial(k, i) * cat.at(n - i);
            inner += (i % 2 == 0) ? term : -term;
        }
        BigInt outer = (BigInt(1) << (n - 2 * k + 1)) * binomial(n - 1, n - 2 * k + 1) * cat.at(k - 1);
        total += outer * inner;
    }
    return total;
}

inline BigInt rn_by_woodruff(int n) { return rn_by_woodruff(n, catalan(n)); }

/// Reference table: convolution seeds extended by the recurrence (the cheap
/// route to large n; agreement of all four methods is checked in the tests).
inline BigSeq rn_table(int N) {
    if (N <= 64) return rn_by_convolution(N);
    BigSeq conv = rn_by_convolution(6);
    std::vector<BigInt> seeds(conv.values.begin() + 1, conv.values.end());
    return rn_by_recurrence(N, seeds);
}

struct AsymptoticReport {
    Real mu;                  // 8 + 4 sqrt(3)
    Real a_estimate;          // (6 - 3 sqrt(3)) / pi
    Real ratio_deviation;     // |r_{n+1}/r_n / mu - 1| at n = ratio_n
    int ratio_n = 0;
    Real constant_at_n;       // n^3 r_n / mu^n at n = const_n
    Real constant_rel_error;  // relative to a_estimate
    int const_n = 0;
    Real correction_fit;      // fitted 1/n coefficient
    Real correction_target;   // 33/2 - 11 sqrt(3)
    Real correction_rel_error;
    bool correction_checked = false;
};

inline Real scaled_rn(const BigSeq& r, int n, const Real& mu) {
    return Real(r.at(n)) * pow(Real(n), 3) / pow(mu, n);
}

/// Diagnostics of r_n ~ A mu^n / n^3 (1 + beta/n + ...). The 1/n coefficient
/// is fitted by solving for (A, A beta, A gamma) from three scaled values.
inline AsymptoticReport asymptotic_report(const BigSeq& r, int ratio_n = 1000, int const_n = 2000) {
    if (static_cast<int>(r.max_index()) < const_n || const_n < 4 * 1 || ratio_n < 2)
        throw std::invalid_argument("asymptotic_report: table too short");
    AsymptoticReport rep;
    rep.mu = growth_mu();
    rep.a_estimate = (6 - 3 * real_sqrt3()) / real_pi();
    rep.ratio_n = ratio_n;
    rep.ratio_deviation = abs(Real(r.at(ratio_n + 1)) / Real(r.at(ratio_n)) / rep.mu - 1);
    rep.const_n = const_n;
    rep.constant_at_n = scaled_rn(r, const_n, rep.mu);
    rep.constant_rel_error = abs(rep.constant_at_n / rep.a_estimate - 1);

    // Fit b_n = A (1 + beta/n + gamma/n^2) at n, n/2, n/4.
    int n1 = const_n, n2 = const_n / 2, n3 = const_n / 4;
    Real b1 = scaled_rn(r, n1, rep.mu), b2 = scaled_rn(r, n2, rep.mu), b3 = scaled_rn(r, n3, rep.mu);
    Real x1 = Real(1) / n1, x2 = Real(1) / n2, x3 = Real(1) / n3;
    // Lagrange solve for the linear coefficient of b(x) = A + (A beta) x + (A gamma) x^2.
    Real denom12 = x1 - x2, denom13 = x1 - x3, denom23 = x2 - x3;
    Real A = b1 * x2 * x3 / (denom12 * denom13) - b2 * x1 * x3 / (denom12 * denom23) +
             b3 * x1 * x2 / (denom13 * denom23);
    Real Abeta = -b1 * (x2 + x3) / (denom12 * denom13) + b2 * (x1 + x3) / (denom12 * denom23) -
                 b3 * (x1 + x2) / (denom13 * denom23);
    rep.correction_fit = Abeta / A;
    rep.correction_target = Real(33) / 2 - 11 * real_sqrt3();
    rep.correction_rel_error = abs((rep.correction_fit - rep.correction_target) / rep.correction_target);
    rep.correction_checked = rep.correction_rel_error < Real(1) / 10;
    return rep;
}

/// sum_{i<n} r_i <= r_n for all 2 <= n <= N.
inline bool partial_sum_check(const BigSeq& r, int N) {
    BigInt acc = r.at(1);
    for (int n = 2; n <= N; ++n) {
        if (acc > r.at(n)) return false;
        acc += r.at(n);
    }
    return true;
}

struct QuotientDiagnostics {
    int k = 0;
    int N = 0;
    Real observed;   // r_{N-k} / r_N
    Real expected;   // mu^{-k}
    Real rel_error;
};

inline QuotientDiagnostics quotient_limit_check(const BigSeq& r, int k, int N) {
    if (std::abs(k) > 10) throw std::invalid_argument("quotient_limit_check: |k| <= 10");
    QuotientDiagnostics d;
    d.k = k;
    d.N = N;
    d.observed = Real(r.at(N - k)) / Real(r.at(N));
    d.expected = pow(growth_mu(), -k);
    d.rel_error = abs(d.observed / d.expected - 1);
    return d;
}

} // namespace thompson
