#include "gevtrend/bootstrap.hpp"

#include "gevtrend/errors.hpp"
#include "gevtrend/parallel.hpp"
#include "gevtrend/regression.hpp"
#include "gevtrend/stats.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace gevtrend {

namespace {

// Calibration draws come from a child stream that replicate indices never reach.
constexpr std::uint64_t kCalibrationKey = std::numeric_limits<std::uint64_t>::max();

void check_reps(std::size_t n_reps, const char* who) {
    if (n_reps == 0) throw InvalidInput(std::string(who) + ": n_reps must be positive");
}

void check_alpha(double alpha, const char* who) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput(std::string(who) + ": alpha must lie in (0, 1)");
}

void check_level(double level, const char* who) {
    if (!(level >= 0.0 && level < 1.0)) throw InvalidInput(std::string(who) + ": level must lie in [0, 1)");
}

bool is_stationary(const TrendFit& f) { return f.mu1 == 0.0 && f.sigma1 == 0.0; }

StationSeries assemble(const StationSeries& series, std::vector<double> times,
                       std::vector<double> values) {
    return {series.station_id, std::move(times), std::move(values)};
}

StationSeries resample_from_indices(const StationSeries& series, const TrendFit& fit,
                                    std::vector<double> times, std::span<const std::size_t> idx) {
    std::vector<double> out(idx.size());
    const std::vector<double> y = to_std_gumbel(series.values, fitted_path(fit, series.times));
    if (is_stationary(fit)) {
        for (std::size_t i = 0; i < idx.size(); ++i) out[i] = series.values[idx[i]];
        return assemble(series, std::move(times), std::move(out));
    }
    for (std::size_t i = 0; i < idx.size(); ++i) out[i] = y[idx[i]];
    out = from_std_gumbel(out, fitted_path(fit, times));
    return assemble(series, std::move(times), std::move(out));
}

/// Count rejections over replicates drawn by `draw` from sub-streams of `rng`.
template <class Draw>
BootSummary rejection_rate(std::size_t n_reps, const Rng& rng, LrVariant variant, double alpha,
                           std::optional<double> critical_value, const FitOptions& fit_options,
                           Draw&& draw) {
    std::vector<Decision> decisions(n_reps, Decision::Failed);
    parallel_for(n_reps, [&](std::size_t i) {
        Rng sub = rng.split(i);
        try {
            const StationSeries rep = draw(sub);
            decisions[i] = decide(rep, variant, alpha, critical_value, fit_options);
        } catch (const InvalidInput&) {
            decisions[i] = Decision::Failed;
        }
    });
    BootSummary out;
    out.n_reps = n_reps;
    out.seed = rng.key();
    out.critical_value = critical_value;
    std::size_t rejections = 0;
    for (const Decision d : decisions) {
        if (d == Decision::Failed) ++out.n_failures;
        else if (d == Decision::Reject) ++rejections;
    }
    if (out.n_failures < n_reps)
        out.rejection_rate =
            static_cast<double>(rejections) / static_cast<double>(n_reps - out.n_failures);
    return out;
}

std::optional<double> modified_critical_value(const StationSeries& series, LrVariant variant,
                                              double alpha, const ResampleMode& mode,
                                              const Rng& rng, const BootOptions& options) {
    if (options.mode == TestMode::Asymptotic) return std::nullopt;
    if (options.critical_value) return options.critical_value;
    const TrendFit null = fit(series, TrendModel::M0, options.fit);
    const NullDistribution d = simulate_null_distribution(
        null, target_times(series, mode), variant, options.nsim, rng.split(kCalibrationKey),
        options.fit);
    return empirical_quantile(d.statistics, 1.0 - alpha);
}

/// Percentile interval of per-replicate estimates; nullopt entries are failures.
BootSummary interval_summary(std::vector<std::optional<double>> estimates, double level,
                             const Rng& rng) {
    BootSummary out;
    out.n_reps = estimates.size();
    out.seed = rng.key();
    for (const auto& e : estimates) {
        if (e) out.values.push_back(*e);
        else ++out.n_failures;
    }
    if (!out.values.empty()) {
        std::vector<double> sorted = out.values;
        std::sort(sorted.begin(), sorted.end());
        out.quantile_lo = empirical_quantile(sorted, (1.0 - level) / 2.0);
        out.quantile_hi = empirical_quantile(sorted, (1.0 + level) / 2.0);
    }
    return out;
}

}  // namespace

std::string_view to_string(ResampleMode::Kind k) noexcept {
    switch (k) {
        case ResampleMode::Kind::PermuteNoReplace: return "permute";
        case ResampleMode::Kind::WithReplacement: return "replace";
        case ResampleMode::Kind::FreshGumbel: return "fresh";
    }
    return "?";
}

ResampleMode::Kind parse_resample_kind(std::string_view name) {
    if (name == "permute") return ResampleMode::Kind::PermuteNoReplace;
    if (name == "replace") return ResampleMode::Kind::WithReplacement;
    if (name == "fresh") return ResampleMode::Kind::FreshGumbel;
    throw InvalidInput("unknown resample mode '" + std::string(name) + "'");
}

std::string_view to_string(ResidualMethod m) noexcept {
    switch (m) {
        case ResidualMethod::LS: return "LS";
        case ResidualMethod::TS: return "TS";
        case ResidualMethod::M2: return "M2";
    }
    return "?";
}

std::vector<double> target_times(const StationSeries& series, const ResampleMode& mode) {
    if (series.size() == 0) throw InvalidInput("target_times: empty series");
    if (mode.target_size == 0 || mode.target_size == series.size()) return series.times;
    if (mode.kind == ResampleMode::Kind::PermuteNoReplace)
        throw InvalidInput("PermuteNoReplace requires target_size equal to the series length");
    std::vector<double> t(mode.target_size);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = series.times.front() + static_cast<double>(i);
    return t;
}

StationSeries gumbel_resample(const StationSeries& series, const TrendFit& fit,
                              const ResampleMode& mode, Rng& rng) {
    std::vector<double> times = target_times(series, mode);
    const std::size_t n = series.size();
    const std::size_t m = times.size();
    switch (mode.kind) {
        case ResampleMode::Kind::PermuteNoReplace: {
            std::vector<std::size_t> idx(n);
            std::iota(idx.begin(), idx.end(), std::size_t{0});
            rng.shuffle(std::span<std::size_t>(idx));
            return resample_from_indices(series, fit, std::move(times), idx);
        }
        case ResampleMode::Kind::WithReplacement: {
            std::vector<std::size_t> idx(m);
            for (auto& i : idx) i = rng.below(n);
            return resample_from_indices(series, fit, std::move(times), idx);
        }
        case ResampleMode::Kind::FreshGumbel: {
            std::vector<double> y(m);
            for (auto& v : y) v = rng.std_gumbel();
            std::vector<double> x = from_std_gumbel(y, fitted_path(fit, times));
            return assemble(series, std::move(times), std::move(x));
        }
    }
    throw InvalidInput("gumbel_resample: unknown mode");
}

StationSeries gumbel_resample(const StationSeries& series, const TrendFit& fit,
                              std::span<const std::size_t> draws) {
    for (const std::size_t i : draws)
        if (i >= series.size()) throw InvalidInput("gumbel_resample: draw index out of range");
    const ResampleMode mode{ResampleMode::Kind::WithReplacement, draws.size()};
    return resample_from_indices(series, fit, target_times(series, mode), draws);
}

BootSummary permutation_type1(const StationSeries& series, LrVariant variant, std::size_t n_reps,
                              double alpha, const ResampleMode& mode, const Rng& rng,
                              const BootOptions& options) {
    check_reps(n_reps, "permutation_type1");
    check_alpha(alpha, "permutation_type1");
    const TrendFit null = fit(series, TrendModel::M0, options.fit);
    if (!null.converged && mode.kind == ResampleMode::Kind::FreshGumbel)
        throw InvalidInput("permutation_type1: stationary fit did not converge");
    const auto crit = modified_critical_value(series, variant, alpha, mode, rng, options);
    return rejection_rate(n_reps, rng, variant, alpha, crit, options.fit,
                          [&](Rng& sub) { return gumbel_resample(series, null, mode, sub); });
}

BootSummary parametric_power(const StationSeries& series, const TrendFit& generator,
                             LrVariant variant, std::size_t n_reps, double alpha,
                             const ResampleMode& mode, const Rng& rng, const BootOptions& options) {
    check_reps(n_reps, "parametric_power");
    check_alpha(alpha, "parametric_power");
    // Validate the generating path on the target grid once, before spawning replicates.
    (void)fitted_path(generator, target_times(series, mode));
    const auto crit = modified_critical_value(series, variant, alpha, mode, rng, options);
    return rejection_rate(n_reps, rng, variant, alpha, crit, options.fit,
                          [&](Rng& sub) { return gumbel_resample(series, generator, mode, sub); });
}

BootSummary parametric_power(const StationSeries& series, TrendModel model, LrVariant variant,
                             std::size_t n_reps, double alpha, const ResampleMode& mode,
                             const Rng& rng, const BootOptions& options) {
    if (model != TrendModel::M1mu && model != TrendModel::M2)
        throw InvalidInput("parametric_power: generating model must be M1mu or M2");
    const TrendFit generator = fit(series, model, options.fit);
    if (!generator.converged)
        throw InvalidInput("parametric_power: " + std::string(to_string(model)) +
                           " fit did not converge");
    return parametric_power(series, generator, variant, n_reps, alpha, mode, rng, options);
}

BootSummary trend_ci(const StationSeries& series, TrendModel model, std::size_t n_reps,
                     double level, const Rng& rng, ResampleMode mode, const FitOptions& options) {
    check_reps(n_reps, "trend_ci");
    check_level(level, "trend_ci");
    if (!has_location_trend(model))
        throw InvalidInput("trend_ci: model must carry a location trend (M1mu or M2)");
    const TrendFit original = fit(series, model, options);
    if (!original.converged)
        throw InvalidInput("trend_ci: " + std::string(to_string(model)) + " fit did not converge");
    std::vector<std::optional<double>> est(n_reps);
    parallel_for(n_reps, [&](std::size_t i) {
        Rng sub = rng.split(i);
        try {
            const StationSeries rep = gumbel_resample(series, original, mode, sub);
            const TrendFit f = fit_from(rep, model, original, options);
            if (f.converged) est[i] = f.mu1;
        } catch (const InvalidInput&) {
        }
    });
    return interval_summary(std::move(est), level, rng);
}

BootSummary gev_residual_ci(const StationSeries& series, ResidualMethod method, std::size_t n_reps,
                            double level, const Rng& rng, ResampleMode mode,
                            const FitOptions& options) {
    if (method == ResidualMethod::M2)
        return trend_ci(series, TrendModel::M2, n_reps, level, rng, mode, options);
    check_reps(n_reps, "gev_residual_ci");
    check_level(level, "gev_residual_ci");
    const LineMethod line = method == ResidualMethod::LS ? LineMethod::LS : LineMethod::TS;
    const ResidualModel model = fit_residual_model(series, line, options);
    if (!model.residual_fit.converged)
        throw InvalidInput("gev_residual_ci: residual GEV fit did not converge");
    const TrendFit path = model.as_trend_fit();
    std::vector<std::optional<double>> est(n_reps);
    parallel_for(n_reps, [&](std::size_t i) {
        Rng sub = rng.split(i);
        try {
            const StationSeries rep = gumbel_resample(series, path, mode, sub);
            est[i] = line_fit(line, rep.times, rep.values).slope;
        } catch (const InvalidInput&) {
        }
    });
    return interval_summary(std::move(est), level, rng);
}

}  // namespace gevtrend
