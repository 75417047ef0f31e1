#pragma once

#include <span>
#include <vector>

namespace gevtrend {

[[nodiscard]] double mean(std::span<const double> x);

/// Sample standard deviation (n - 1 denominator). Zero for a single value.
[[nodiscard]] double sample_sd(std::span<const double> x);

/// Median; the midpoint of the two central order statistics for even counts.
[[nodiscard]] double median(std::vector<double> x);

/**
 * Empirical quantile with linear interpolation between order statistics
 * (Hyndman-Fan type 7): position h = (n - 1) p in the sorted sample.
 * p = 0.5 reproduces median().
 */
[[nodiscard]] double empirical_quantile(std::span<const double> sorted, double p);

/// Survival function of the chi-square distribution with one degree of freedom.
[[nodiscard]] double chi2_sf1(double x);

/// CDF of chi-square(1): erf(sqrt(x / 2)).
[[nodiscard]] double chi2_cdf1(double x);

/// Kolmogorov-Smirnov sup-distance between a sample and a continuous CDF.
template <class Cdf>
[[nodiscard]] double ks_distance(std::vector<double> sample, Cdf&& cdf);

}  // namespace gevtrend

#include <algorithm>
#include <cmath>

template <class Cdf>
double gevtrend::ks_distance(std::vector<double> sample, Cdf&& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}
