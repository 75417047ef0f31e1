#include "gevtrend/optimize.hpp"

#include "gevtrend/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace gevtrend {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

struct RunResult {
    std::vector<double> x;
    double value;
    bool met_tolerance;
    std::size_t evals;
};

double safe_eval(const Objective& f, std::span<const double> x) {
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

RunResult run_once(const Objective& f, std::span<const double> x0, std::span<const double> steps,
                   double ftol, std::size_t max_evals) {
    const std::size_t dim = x0.size();
    const std::size_t nv = dim + 1;
    std::vector<std::vector<double>> simplex(nv, std::vector<double>(x0.begin(), x0.end()));
    std::vector<double> fv(nv);
    for (std::size_t j = 0; j < dim; ++j) simplex[j + 1][j] += steps[j];

    std::size_t evals = 0;
    for (std::size_t v = 0; v < nv; ++v) {
        fv[v] = safe_eval(f, simplex[v]);
        ++evals;
    }

    std::vector<std::size_t> order(nv);
    std::vector<double> centroid(dim), xr(dim), xe(dim), xc(dim);
    bool met = false;

    for (;;) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[nv - 2];

        const double spread = fv[worst] - fv[best];
        if (std::isfinite(fv[worst]) && spread < ftol) {
            met = true;
            break;
        }
        if (evals >= max_evals) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t v = 0; v < nv; ++v) {
            if (v == worst) continue;
            for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[v][j];
        }
        for (auto& c : centroid) c /= static_cast<double>(dim);

        // Collapsed simplex: nothing left to explore at machine precision.
        double diameter = 0.0;
        for (std::size_t j = 0; j < dim; ++j)
            diameter = std::max(diameter, std::fabs(simplex[worst][j] - simplex[best][j]) /
                                              (1.0 + std::fabs(simplex[best][j])));
        if (diameter < 1e-15) break;

        for (std::size_t j = 0; j < dim; ++j)
            xr[j] = centroid[j] + kReflect * (centroid[j] - simplex[worst][j]);
        const double fr = safe_eval(f, xr);
        ++evals;

        if (fr < fv[best]) {
            for (std::size_t j = 0; j < dim; ++j)
                xe[j] = centroid[j] + kExpand * (xr[j] - centroid[j]);
            const double fe = safe_eval(f, xe);
            ++evals;
            if (fe < fr) {
                simplex[worst] = xe;
                fv[worst] = fe;
            } else {
                simplex[worst] = xr;
                fv[worst] = fr;
            }
            continue;
        }
        if (fr < fv[second_worst]) {
            simplex[worst] = xr;
            fv[worst] = fr;
            continue;
        }

        const bool outside = fr < fv[worst];
        const auto& towards = outside ? xr : simplex[worst];
        for (std::size_t j = 0; j < dim; ++j)
            xc[j] = centroid[j] + kContract * (towards[j] - centroid[j]);
        const double fc = safe_eval(f, xc);
        ++evals;
        if (outside ? fc <= fr : fc < fv[worst]) {
            simplex[worst] = xc;
            fv[worst] = fc;
            continue;
        }

        for (std::size_t v = 0; v < nv; ++v) {
            if (v == best) continue;
            for (std::size_t j = 0; j < dim; ++j)
                simplex[v][j] = simplex[best][j] + kShrink * (simplex[v][j] - simplex[best][j]);
            fv[v] = safe_eval(f, simplex[v]);
            ++evals;
        }
    }

    const auto best = static_cast<std::size_t>(
        std::min_element(fv.begin(), fv.end()) - fv.begin());
    return {simplex[best], fv[best], met, evals};
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::span<const double> x0,
                             std::span<const double> steps, const NelderMeadOptions& options) {
    if (x0.empty()) throw InvalidInput("nelder_mead: empty starting point");
    if (steps.size() != x0.size()) throw InvalidInput("nelder_mead: steps/x0 size mismatch");
    const std::size_t max_evals =
        options.max_evals_per_run ? options.max_evals_per_run : 400 * x0.size();

    RunResult incumbent = run_once(f, x0, steps, options.ftol, max_evals);
    NelderMeadResult out;
    out.n_evals = incumbent.evals;

    for (int r = 0; r < options.max_restarts; ++r) {
        const bool was_met = incumbent.met_tolerance;
        RunResult next = run_once(f, incumbent.x, steps, options.ftol, max_evals);
        out.n_evals += next.evals;
        out.restarts = r + 1;
        const double gain = incumbent.value - next.value;
        if (next.value < incumbent.value) incumbent = std::move(next);
        else incumbent.met_tolerance = incumbent.met_tolerance && next.met_tolerance;
        if (was_met && incumbent.met_tolerance && std::isfinite(incumbent.value) &&
            gain < options.restart_tol) {
            out.converged = true;
            break;
        }
    }
    if (options.max_restarts == 0) out.converged = incumbent.met_tolerance;

    out.x = std::move(incumbent.x);
    out.value = incumbent.value;
    return out;
}

}  // namespace gevtrend
