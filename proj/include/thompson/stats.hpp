// Small statistics toolbox for the experiment pipelines: chi-square
// goodness-of-fit p-values and Wilson score intervals.
#pragma once

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace thompson {

inline double chi_square_pvalue(double statistic, unsigned degrees_of_freedom) {
    if (degrees_of_freedom == 0) throw std::invalid_argument("chi_square_pvalue: zero df");
    boost::math::chi_squared_distribution<double> dist(degrees_of_freedom);
    return cdf(complement(dist, statistic));
}

/// Goodness-of-fit of observed counts against uniform cell probabilities.
inline double chi_square_uniform_pvalue(const std::vector<std::uint64_t>& observed) {
    double total = 0;
    for (auto o : observed) total += static_cast<double>(o);
    double expected = total / static_cast<double>(observed.size());
    double stat = 0;
    for (auto o : observed) {
        double d = static_cast<double>(o) - expected;
        stat += d * d / expected;
    }
    return chi_square_pvalue(stat, static_cast<unsigned>(observed.size()) - 1);
}

struct WilsonInterval {
    double low = 0;
    double high = 0;
};

/// 95% Wilson score interval for a binomial proportion.
inline WilsonInterval wilson_interval(std::uint64_t hits, std::uint64_t samples, double z = 1.959963984540054) {
    if (samples == 0) return {0.0, 1.0};
    double n = static_cast<double>(samples);
    double p = static_cast<double>(hits) / n;
    double z2 = z * z;
    double denom = 1 + z2 / n;
    double center = (p + z2 / (2 * n)) / denom;
    double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
    WilsonInterval w{std::max(0.0, center - half), std::min(1.0, center + half)};
    if (hits == 0) w.low = 0.0;
    if (hits == samples) w.high = 1.0;
    return w;
}

} // namespace thompson
