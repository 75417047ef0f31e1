#pragma once

#include "gevtrend/random.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace gevtrend {

/// Below this |xi| every GEV function switches to the Gumbel limit.
inline constexpr double kXiSwitch = 1e-6;

/// Log-density value returned outside the support.
inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

/// Stationary GEV parameters. F(x) = exp(-(1 + xi (x - mu) / sigma)^(-1/xi)).
struct GevParams {
    double mu = 0.0;     ///< location
    double sigma = 1.0;  ///< scale, > 0
    double xi = 0.0;     ///< shape

    friend bool operator==(const GevParams&, const GevParams&) = default;
};

/// Per-observation location and scale with one shared shape.
struct NsGevPath {
    std::vector<double> mu_t;
    std::vector<double> sigma_t;
    double xi = 0.0;

    [[nodiscard]] std::size_t size() const noexcept { return mu_t.size(); }
    [[nodiscard]] GevParams at(std::size_t i) const { return {mu_t[i], sigma_t[i], xi}; }

    /// Path with the same parameters at each of `n` observations.
    [[nodiscard]] static NsGevPath constant(const GevParams& p, std::size_t n);

    /// Throws InvalidInput unless lengths match, n >= 1 and every sigma is positive.
    void validate() const;
};

[[nodiscard]] double gev_cdf(double x, const GevParams& p);
[[nodiscard]] double gev_log_pdf(double x, const GevParams& p);
[[nodiscard]] double gev_quantile(double q, const GevParams& p);

/// `n` draws by inversion of uniforms from `rng`.
[[nodiscard]] std::vector<double> gev_sample(const GevParams& p, std::size_t n, Rng& rng);

/// Y_i = log(1 + xi (x_i - mu_i) / sigma_i) / xi; throws SupportViolation naming the index.
[[nodiscard]] std::vector<double> to_std_gumbel(std::span<const double> x, const NsGevPath& path);

/// X_i = mu_i + sigma_i (exp(xi Y_i) - 1) / xi; exact inverse of to_std_gumbel.
[[nodiscard]] std::vector<double> from_std_gumbel(std::span<const double> y,
                                                  const NsGevPath& path);

/// Sum of per-observation log-densities; -inf if any observation is outside its support.
[[nodiscard]] double ns_log_likelihood(std::span<const double> x, const NsGevPath& path);

namespace detail {

/// log f(z) for the standardised variable z = (x - mu) / sigma, excluding -log(sigma).
inline double std_log_density(double z, double xi) noexcept {
    if (std::fabs(xi) < kXiSwitch) return -z - std::exp(-z);
    const double xz = xi * z;
    if (!(xz > -1.0)) return kLogZero;
    const double lt = std::log1p(xz);
    return -(1.0 + 1.0 / xi) * lt - std::exp(-lt / xi);
}

}  // namespace detail

}  // namespace gevtrend
