#pragma once

#include "gevtrend/gev.hpp"
#include "gevtrend/optimize.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gevtrend {

/// Maxima of one station, indexed by a numeric time (e.g. months since start).
struct StationSeries {
    std::string station_id;
    std::vector<double> times;
    std::vector<double> values;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }

    /// Equal lengths, at least `min_length` points, strictly increasing finite times.
    void validate(std::size_t min_length = 5) const;
};

/**
 * Nested GEV trend models:
 * - M0: iid GEV(mu, sigma, xi)
 * - M1mu: location mu0 + mu1 t
 * - M1sigma: scale sigma0 + sigma1 t
 * - M2: both trends
 */
enum class TrendModel { M0, M1mu, M1sigma, M2 };

[[nodiscard]] constexpr std::size_t parameter_count(TrendModel m) noexcept {
    switch (m) {
        case TrendModel::M0: return 3;
        case TrendModel::M1mu: return 4;
        case TrendModel::M1sigma: return 4;
        case TrendModel::M2: return 5;
    }
    return 0;
}
[[nodiscard]] constexpr bool has_location_trend(TrendModel m) noexcept {
    return m == TrendModel::M1mu || m == TrendModel::M2;
}
[[nodiscard]] constexpr bool has_scale_trend(TrendModel m) noexcept {
    return m == TrendModel::M1sigma || m == TrendModel::M2;
}
/// Smallest series length accepted by fit() for this model.
[[nodiscard]] constexpr std::size_t min_series_length(TrendModel m) noexcept {
    return m == TrendModel::M0 ? 5 : parameter_count(m) + 2;
}

[[nodiscard]] std::string_view to_string(TrendModel m) noexcept;
/// Accepts "m0", "m1mu", "m1sigma", "m2" (case-insensitive); throws InvalidInput otherwise.
[[nodiscard]] TrendModel parse_trend_model(std::string_view name);

/// Maximum-likelihood fit of one trend model. Coefficients are in the caller's time units.
struct TrendFit {
    TrendModel model = TrendModel::M0;
    double mu0 = 0.0;
    double mu1 = 0.0;     ///< 0 unless the model has a location trend
    double sigma0 = 1.0;
    double sigma1 = 0.0;  ///< 0 unless the model has a scale trend
    double xi = 0.0;
    double max_loglik = kLogZero;
    bool converged = false;
    std::size_t n_evals = 0;
    bool xi_warning = false;  ///< xi <= -0.5: chi-square asymptotics of LR tests do not apply
    bool degenerate = false;  ///< scale collapsed onto the floor at some observed time

    [[nodiscard]] double location_at(double t) const noexcept { return mu0 + mu1 * t; }
    [[nodiscard]] double scale_at(double t) const noexcept { return sigma0 + sigma1 * t; }

    friend bool operator==(const TrendFit&, const TrendFit&) = default;
};

struct FitOptions {
    NelderMeadOptions optimizer{};
    /// Shape values at or below this are treated as infeasible. Below -1 the GEV density
    /// is unbounded at the upper endpoint and the likelihood has no maximum.
    double xi_lower = -1.0;
    /// Proposals with 1 + xi z below this margin count as outside the support, so the
    /// returned parameters stay feasible after conversion back to data units.
    double support_margin = 1e-10;
    /// Scales below this fraction of the sample standard deviation are infeasible. A linear
    /// scale trend can drive sigma_t to zero at one observation, where the likelihood is
    /// unbounded; fits that end on this floor are reported as degenerate.
    double scale_floor = 1e-6;
};

/**
 * Starting values for the stationary fit: the Gumbel moment seed
 * sigma = sqrt(6) sd / pi, mu = mean - gamma sigma, xi = 0.1, refined by one
 * stationary maximum-likelihood solve. Falls back to the seed if the solve does not
 * converge. Throws DegenerateSample if all values are equal.
 */
[[nodiscard]] GevParams initial_params(const StationSeries& series, const FitOptions& options = {});

/// Moment seed alone, without refinement.
[[nodiscard]] GevParams moment_seed(const StationSeries& series);

/**
 * Fit `model` by Nelder-Mead on the negative log-likelihood. Trend models start from
 * the M0 fit with zero trend; M2 starts from the better of the M1mu/M1sigma fits.
 * Infeasible parameters (non-positive scale at any time, an observation outside its
 * support) are penalised with the log-zero value.
 *
 * A fit that fails to converge is returned with `converged == false` and the best
 * parameters found.
 */
[[nodiscard]] TrendFit fit(const StationSeries& series, TrendModel model,
                           const FitOptions& options = {});

/// Fit `model` starting from the parameters of `seed` (missing coefficients set to 0).
[[nodiscard]] TrendFit fit_from(const StationSeries& series, TrendModel model,
                                const TrendFit& seed, const FitOptions& options = {});

/// All four nested fits, sharing the M0 solve as seed.
struct NestedFits {
    TrendFit m0, m1mu, m1sigma, m2;
};
[[nodiscard]] NestedFits fit_nested(const StationSeries& series, const FitOptions& options = {});

/// Location/scale path of `fit` at `times`; throws InvalidInput if any scale is <= 0.
[[nodiscard]] NsGevPath fitted_path(const TrendFit& fit, std::span<const double> times);

/// TrendFit holding fixed stationary parameters (e.g. a known simulation null).
[[nodiscard]] TrendFit stationary_fit(const GevParams& p);

}  // namespace gevtrend
