#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace gevtrend {

enum class LineMethod { LS, TS };

[[nodiscard]] std::string_view to_string(LineMethod m) noexcept;

/// Straight line value = intercept + slope * time.
struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    LineMethod method = LineMethod::LS;

    [[nodiscard]] double at(double t) const noexcept { return intercept + slope * t; }

    friend bool operator==(const LineFit&, const LineFit&) = default;
};

/// Ordinary least squares. Throws DegenerateDesign if all times are equal.
[[nodiscard]] LineFit ols_fit(std::span<const double> times, std::span<const double> values);

/**
 * Theil-Sen fit: slope is the median of all pairwise slopes
 * (y_j - y_i) / (x_j - x_i), i < j, enumerated exactly; intercept is the median of
 * y_i - slope * x_i. Times must be strictly increasing (DegenerateDesign otherwise).
 */
[[nodiscard]] LineFit theil_sen_fit(std::span<const double> times, std::span<const double> values);

[[nodiscard]] LineFit line_fit(LineMethod method, std::span<const double> times,
                               std::span<const double> values);

/// values[i] - intercept - slope * times[i]
[[nodiscard]] std::vector<double> residuals(const LineFit& fit, std::span<const double> times,
                                            std::span<const double> values);

}  // namespace gevtrend
