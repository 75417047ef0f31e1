#pragma once

#include "gevtrend/bootstrap.hpp"
#include "gevtrend/model_fit.hpp"
#include "gevtrend/random.hpp"

#include <cstddef>

namespace gevtrend {

/**
 * k-year return level y under a location trend: the value with
 *
 *     prod_{j=1..k} F(y; mu0 + j mu1, sigma, xi)^d = 1/2,
 *
 * where d = draws_per_year and mu1 is the per-year slope. The root is found by bisection
 * in the log domain inside [min_j q_j - sigma, max_j q_j + sigma], with q_j the
 * 0.5^(1/(k d)) quantile of year j. Throws InfeasibleReturnLevel when the bracket holds
 * no root.
 */
[[nodiscard]] double solve_return_level(double mu0, double mu1, double sigma, double xi,
                                        std::size_t k, std::size_t draws_per_year = 1);

/// log of the product above; exposed for re-evaluation checks.
[[nodiscard]] double return_level_log_product(double y, double mu0, double mu1, double sigma,
                                              double xi, std::size_t k,
                                              std::size_t draws_per_year = 1);

struct ReturnLevelOptions {
    double observations_per_year = 12.0;  ///< converts the fitted slope to a per-year slope
    std::size_t draws_per_year = 1;
    ResampleMode mode{ResampleMode::Kind::WithReplacement, 0};
    FitOptions fit{};
};

struct ReturnLevelResult {
    std::size_t k = 0;
    double level = 0.0;     ///< mean of the replicate return levels
    double analytic = 0.0;  ///< return level at the fitted parameters
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::size_t n_reps = 0;
    std::size_t n_failures = 0;
};

/**
 * Fit M1mu, then bootstrap the k-year return level. mu0 is anchored at the fitted location
 * of the last observed time. Each replicate is refit and solved; the point value is the
 * replicate mean and the interval uses the ((1 - level)/2, (1 + level)/2) quantiles.
 */
[[nodiscard]] ReturnLevelResult return_level_ci(const StationSeries& series, std::size_t k,
                                                std::size_t n_reps, double level, const Rng& rng,
                                                const ReturnLevelOptions& options = {});

}  // namespace gevtrend
