#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace gevtrend {

struct NelderMeadOptions {
    double ftol = 1e-8;             ///< stop when max f - min f over the simplex drops below this
    double restart_tol = 1e-6;      ///< a restart improving less than this confirms convergence
    int max_restarts = 3;           ///< re-seeds of the simplex at the incumbent
    std::size_t max_evals_per_run = 0;  ///< 0 selects 400 * dimension
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    bool converged = false;
    std::size_t n_evals = 0;
    int restarts = 0;
};

using Objective = std::function<double(std::span<const double>)>;

/**
 * @brief Minimise `f` by the Nelder-Mead simplex method.
 *
 * Coefficients are the standard ones (reflection 1, expansion 2, contraction 0.5,
 * shrink 0.5). The initial simplex is `x0` plus one vertex per coordinate, offset by
 * `steps[j]`. NaN and +inf objective values are treated as infeasible and never
 * accepted over a finite vertex, so constraints can be imposed by returning +inf.
 *
 * After a run meets the tolerance the simplex is rebuilt around the incumbent; the fit
 * counts as converged once such a restart fails to improve by more than `restart_tol`.
 * If `max_restarts` re-seeds pass without that confirmation the best point found is
 * returned with `converged == false`.
 */
[[nodiscard]] NelderMeadResult nelder_mead(const Objective& f, std::span<const double> x0,
                                           std::span<const double> steps,
                                           const NelderMeadOptions& options = {});

}  // namespace gevtrend
