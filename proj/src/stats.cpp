#include "gevtrend/stats.hpp"

#include "gevtrend/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gevtrend {

double mean(std::span<const double> x) {
    if (x.empty()) throw InvalidInput("mean: empty sample");
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double sample_sd(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    const double m = mean(x);
    double ss = 0.0;
    for (const double v : x) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

double median(std::vector<double> x) {
    if (x.empty()) throw InvalidInput("median: empty sample");
    const std::size_t n = x.size();
    const auto mid = x.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(x.begin(), mid, x.end());
    if (n % 2 == 1) return *mid;
    const double upper = *mid;
    const double lower = *std::max_element(x.begin(), mid);
    return 0.5 * (lower + upper);
}

double empirical_quantile(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw InvalidInput("empirical_quantile: empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("empirical_quantile: p must lie in [0, 1]");
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = h - static_cast<double>(lo);
    if (frac == 0.0) return sorted[lo];
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double chi2_sf1(double x) {
    if (std::isnan(x) || x < 0.0) throw InvalidInput("chi2_sf1: x must be non-negative");
    return std::erfc(std::sqrt(0.5 * x));
}

double chi2_cdf1(double x) {
    if (!(x > 0.0)) return 0.0;
    return std::erf(std::sqrt(0.5 * x));
}

}  // namespace gevtrend
