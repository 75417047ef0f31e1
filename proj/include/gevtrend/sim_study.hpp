#pragma once

#include "gevtrend/lr_tests.hpp"
#include "gevtrend/model_fit.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace gevtrend {

/// Grid of a Monte Carlo study of LR test rejection rates on GEV(mu0 + mu1 t, sigma, xi), t = 1..n.
struct StudyConfig {
    std::vector<double> xi_grid{0.0};
    std::vector<double> mu1_grid{0.0};
    std::vector<std::size_t> size_grid{40};
    double mu0 = 22.0;
    double sigma = 10.0;
    std::size_t n_reps = 1000;
    double alpha = 0.05;
    std::vector<LrVariant> variants{LrVariant::LR1, LrVariant::LR2, LrVariant::LR3, LrVariant::LR4};
    bool modified = false;      ///< also report modified tests with simulated critical values
    std::size_t nsim = 2000;    ///< null simulations per critical value
    std::uint64_t seed = 1;

    /// Sizes >= 10, n_reps >= 100, alpha in (0, 1), non-empty grids, sigma > 0.
    void validate() const;
};

struct StudyCell {
    double xi = 0.0;
    double mu1 = 0.0;
    std::size_t n = 0;
    LrVariant variant = LrVariant::LR1;
    bool modified = false;
    double rejection_rate = 0.0;
    std::size_t n_reps = 0;
    std::size_t n_failures = 0;
    double mc_stderr = 0.0;  ///< sqrt(r (1 - r) / (n_reps - n_failures))
    std::optional<double> critical_value;

    friend bool operator==(const StudyCell&, const StudyCell&) = default;
};

/**
 * Rejection rate of every (xi, mu1, n, variant) cell, asymptotic first and, when
 * cfg.modified is set, modified against a critical value simulated under GEV(mu0, sigma, xi).
 *
 * Replicate r of a data cell is drawn from a stream keyed by the cell's coordinate values,
 * so results do not depend on grid order and one cell can be rerun alone. All variants see
 * the same replicate samples. Output order follows xi, mu1, n, variant, then mode.
 */
[[nodiscard]] std::vector<StudyCell> run_study(const StudyConfig& cfg, const FitOptions& options = {});

/// Rate curves over `size_range` for every variant (the size grid of cfg is replaced).
[[nodiscard]] std::vector<StudyCell> comparison_curves(StudyConfig cfg,
                                                       const std::vector<std::size_t>& size_range,
                                                       const FitOptions& options = {});

struct MinimalSize {
    double xi = 0.0;
    double mu1 = 0.0;
    LrVariant variant = LrVariant::LR1;
    bool modified = false;
    std::optional<std::size_t> n;  ///< absent when no grid size qualifies
};

/**
 * Smallest grid n whose rejection rate reaches target_power while the matching mu1 = 0 cell
 * stays at or below target_alpha + 3 mc_stderr. Cells with mu1 = 0 never qualify.
 */
[[nodiscard]] std::vector<MinimalSize> minimal_sample_size(const std::vector<StudyCell>& cells,
                                                           double target_power, double target_alpha);

/// Runs the study (adding mu1 = 0 to the grid when missing) and evaluates the cells.
[[nodiscard]] std::vector<MinimalSize> minimal_sample_size(StudyConfig cfg, double target_power,
                                                           double target_alpha,
                                                           const FitOptions& options = {});

/// Grids of the two published tables: "type1" (mu1 = 0) and "power" (mu1 in {-0.5, -0.1, 0.1, 0.5}).
[[nodiscard]] StudyConfig table_config(std::string_view table);

}  // namespace gevtrend
