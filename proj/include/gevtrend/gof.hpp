#pragma once

#include "gevtrend/gev.hpp"
#include "gevtrend/random.hpp"

#include <cstddef>
#include <span>
#include <string_view>

namespace gevtrend {

enum class GofMethod { AD, CvM };

[[nodiscard]] std::string_view to_string(GofMethod m) noexcept;
/// Accepts "ad" and "cvm" (case-insensitive).
[[nodiscard]] GofMethod parse_gof_method(std::string_view name);

struct GofResult {
    double statistic = 0.0;
    double p_value = 1.0;
    GofMethod method = GofMethod::AD;
    std::size_t n_sim = 0;
};

/// CDF values are clipped to [kGofClip, 1 - kGofClip] before computing a statistic.
inline constexpr double kGofClip = 1e-12;

/**
 * Anderson-Darling A^2 = -n - (1/n) sum (2i - 1)(ln u_(i) + ln(1 - u_(n+1-i))).
 * Input order does not matter. Throws InvalidInput for values outside (0, 1).
 */
[[nodiscard]] double ad_statistic(std::span<const double> u);

/// Cramer-von Mises W^2 = 1/(12n) + sum (u_(i) - (2i - 1)/(2n))^2.
[[nodiscard]] double cvm_statistic(std::span<const double> u);

/**
 * Test x against the fully specified GEV `p`. The p-value is (1 + #{T* >= T}) / (n_sim + 1)
 * over n_sim samples of size |x| drawn from `p`; sample i uses rng.split(i).
 */
[[nodiscard]] GofResult gof_test(std::span<const double> x, const GevParams& p, GofMethod method,
                                 std::size_t n_sim, const Rng& rng);

}  // namespace gevtrend
