#pragma once

#include "gevtrend/lr_tests.hpp"
#include "gevtrend/model_fit.hpp"
#include "gevtrend/random.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace gevtrend {

/**
 * How a bootstrap replicate is drawn from the standard-Gumbel image of a series.
 * - PermuteNoReplace: shuffle the transformed values (same length only)
 * - WithReplacement: draw transformed values with replacement
 * - FreshGumbel: ignore the data and draw new standard Gumbel variates
 *
 * target_size 0 means the original length. A different size places the replicate on
 * the grid t_first, t_first + 1, ..., t_first + target_size - 1.
 */
struct ResampleMode {
    enum class Kind { PermuteNoReplace, WithReplacement, FreshGumbel };
    Kind kind = Kind::WithReplacement;
    std::size_t target_size = 0;
};

[[nodiscard]] std::string_view to_string(ResampleMode::Kind k) noexcept;
/// Accepts "permute", "replace", "fresh".
[[nodiscard]] ResampleMode::Kind parse_resample_kind(std::string_view name);

struct BootSummary {
    std::size_t n_reps = 0;
    std::size_t n_failures = 0;
    std::optional<double> rejection_rate;  ///< rejections / (n_reps - n_failures)
    std::optional<double> quantile_lo;
    std::optional<double> quantile_hi;
    std::uint64_t seed = 0;                ///< key of the stream the replicates were split from
    std::optional<double> critical_value;  ///< set when a modified test was used
    std::vector<double> values;            ///< per-replicate estimates kept for interval summaries
};

/// Options shared by the rejection-rate estimators.
struct BootOptions {
    TestMode mode = TestMode::Asymptotic;
    std::size_t nsim = 2000;  ///< null simulations for the modified critical value
    /// Modified mode only: use this critical value instead of simulating one.
    std::optional<double> critical_value;
    FitOptions fit{};
};

/// Time grid a replicate of `series` lives on under `mode`.
[[nodiscard]] std::vector<double> target_times(const StationSeries& series, const ResampleMode& mode);

/**
 * One replicate: transform the series to standard Gumbel through `fit`, resample, and map
 * back through the fitted path on the target grid. Under a stationary fit the transform is
 * monotone, so permutation and with-replacement draws reuse the raw values exactly.
 * Throws SupportViolation if an observation lies outside the fitted support.
 */
[[nodiscard]] StationSeries gumbel_resample(const StationSeries& series, const TrendFit& fit,
                                            const ResampleMode& mode, Rng& rng);

/// With-replacement replicate using the given 0-based draw indices instead of random ones.
[[nodiscard]] StationSeries gumbel_resample(const StationSeries& series, const TrendFit& fit,
                                            std::span<const std::size_t> draws);

/**
 * Empirical type-1 error: resample under the stationary fit of the series, which removes
 * any trend, and count rejections of `variant` at level alpha.
 */
[[nodiscard]] BootSummary permutation_type1(const StationSeries& series, LrVariant variant,
                                            std::size_t n_reps, double alpha,
                                            const ResampleMode& mode, const Rng& rng,
                                            const BootOptions& options = {});

/**
 * Bootstrap power: fit `model`, resample through its trended path, count rejections.
 * In modified mode one critical value is simulated under the stationary fit of the series
 * on the target grid and applied to every replicate.
 */
[[nodiscard]] BootSummary parametric_power(const StationSeries& series, TrendModel model,
                                           LrVariant variant, std::size_t n_reps, double alpha,
                                           const ResampleMode& mode, const Rng& rng,
                                           const BootOptions& options = {});

/// As above with the generating fit supplied by the caller.
[[nodiscard]] BootSummary parametric_power(const StationSeries& series, const TrendFit& generator,
                                           LrVariant variant, std::size_t n_reps, double alpha,
                                           const ResampleMode& mode, const Rng& rng,
                                           const BootOptions& options = {});

/**
 * Percentile interval for the location trend mu1 of `model` (M1mu or M2). Each replicate is
 * refit from the original estimate. Failed refits are excluded and counted.
 */
[[nodiscard]] BootSummary trend_ci(const StationSeries& series, TrendModel model, std::size_t n_reps,
                                   double level, const Rng& rng,
                                   ResampleMode mode = {ResampleMode::Kind::WithReplacement, 0},
                                   const FitOptions& options = {});

/// Trend model behind gev_residual_ci.
enum class ResidualMethod { LS, TS, M2 };

[[nodiscard]] std::string_view to_string(ResidualMethod m) noexcept;

/**
 * Percentile interval for the trend coefficient under a regression-plus-GEV-residual model
 * (LS or TS) or under M2. Regression replicates transform through the line plus residual
 * GEV path and re-estimate the slope; M2 replicates transform through both trended paths.
 */
[[nodiscard]] BootSummary gev_residual_ci(const StationSeries& series, ResidualMethod method,
                                          std::size_t n_reps, double level, const Rng& rng,
                                          ResampleMode mode = {ResampleMode::Kind::WithReplacement, 0},
                                          const FitOptions& options = {});

}  // namespace gevtrend
