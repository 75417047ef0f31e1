#include "gevtrend/return_level.hpp"

#include "gevtrend/errors.hpp"
#include "gevtrend/gev.hpp"
#include "gevtrend/parallel.hpp"
#include "gevtrend/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace gevtrend {

namespace {

double per_year_log_cdf(double y, const GevParams& p) {
    const double f = gev_cdf(y, p);
    return f > 0.0 ? std::log(f) : kLogZero;
}

}  // namespace

double return_level_log_product(double y, double mu0, double mu1, double sigma, double xi,
                                std::size_t k, std::size_t draws_per_year) {
    double sum = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
        const double lf = per_year_log_cdf(y, {mu0 + static_cast<double>(j) * mu1, sigma, xi});
        if (lf == kLogZero) return kLogZero;
        sum += lf;
    }
    return static_cast<double>(draws_per_year) * sum;
}

double solve_return_level(double mu0, double mu1, double sigma, double xi, std::size_t k,
                          std::size_t draws_per_year) {
    if (!(sigma > 0.0)) throw InvalidInput("solve_return_level: sigma must be positive");
    if (k == 0 || draws_per_year == 0)
        throw InvalidInput("solve_return_level: k and draws_per_year must be positive");
    if (!std::isfinite(mu0) || !std::isfinite(mu1) || !std::isfinite(xi))
        throw InvalidInput("solve_return_level: non-finite parameter");

    const double factors = static_cast<double>(k * draws_per_year);
    const double q = std::pow(0.5, 1.0 / factors);
    double qmin = std::numeric_limits<double>::infinity();
    double qmax = -qmin;
    for (std::size_t j = 1; j <= k; ++j) {
        const double v = gev_quantile(q, {mu0 + static_cast<double>(j) * mu1, sigma, xi});
        qmin = std::min(qmin, v);
        qmax = std::max(qmax, v);
    }
    double lo = qmin - sigma;
    double hi = qmax + sigma;
    const double target = std::log(0.5);
    const auto g = [&](double y) {
        return return_level_log_product(y, mu0, mu1, sigma, xi, k, draws_per_year);
    };
    if (!(g(lo) <= target) || !(g(hi) >= target))
        throw InfeasibleReturnLevel("solve_return_level: no root inside the bracket");

    for (int iter = 0; iter < 400; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (g(mid) < target) lo = mid;
        else hi = mid;
        if (hi - lo < 1e-10 * std::max(1.0, std::fabs(mid))) break;
    }
    return 0.5 * (lo + hi);
}

ReturnLevelResult return_level_ci(const StationSeries& series, std::size_t k, std::size_t n_reps,
                                  double level, const Rng& rng, const ReturnLevelOptions& options) {
    if (n_reps == 0) throw InvalidInput("return_level_ci: n_reps must be positive");
    if (!(level >= 0.0 && level < 1.0)) throw InvalidInput("return_level_ci: level must lie in [0, 1)");
    if (!(options.observations_per_year > 0.0))
        throw InvalidInput("return_level_ci: observations_per_year must be positive");

    const TrendFit original = fit(series, TrendModel::M1mu, options.fit);
    if (!original.converged) throw InvalidInput("return_level_ci: M1mu fit did not converge");
    const double t_last = series.times.back();
    const auto solve = [&](const TrendFit& f) {
        return solve_return_level(f.location_at(t_last), f.mu1 * options.observations_per_year,
                                  f.sigma0, f.xi, k, options.draws_per_year);
    };

    ReturnLevelResult out;
    out.k = k;
    out.n_reps = n_reps;
    out.analytic = solve(original);

    std::vector<std::optional<double>> est(n_reps);
    parallel_for(n_reps, [&](std::size_t i) {
        Rng sub = rng.split(i);
        try {
            const StationSeries rep = gumbel_resample(series, original, options.mode, sub);
            const TrendFit f = fit_from(rep, TrendModel::M1mu, original, options.fit);
            if (f.converged) est[i] = solve(f);
        } catch (const InvalidInput&) {
        } catch (const InfeasibleReturnLevel&) {
        }
    });

    std::vector<double> values;
    for (const auto& e : est) {
        if (e) values.push_back(*e);
        else ++out.n_failures;
    }
    if (values.empty()) throw InvalidInput("return_level_ci: every replicate failed");
    out.level = mean(values);
    std::sort(values.begin(), values.end());
    out.ci_lo = empirical_quantile(values, (1.0 - level) / 2.0);
    out.ci_hi = empirical_quantile(values, (1.0 + level) / 2.0);
    return out;
}

}  // namespace gevtrend
