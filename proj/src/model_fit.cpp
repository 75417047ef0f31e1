#include "gevtrend/model_fit.hpp"

#include "gevtrend/errors.hpp"
#include "gevtrend/stats.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>

namespace gevtrend {

void StationSeries::validate(std::size_t min_length) const {
    if (times.size() != values.size())
        throw InvalidInput("series '" + station_id + "': times/values length mismatch");
    if (values.size() < min_length)
        throw InvalidInput("series '" + station_id + "': " + std::to_string(values.size()) +
                           " observations, need at least " + std::to_string(min_length));
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(times[i]) || !std::isfinite(values[i]))
            throw InvalidInput("series '" + station_id + "': non-finite entry at index " +
                               std::to_string(i));
        if (i > 0 && !(times[i] > times[i - 1]))
            throw InvalidInput("series '" + station_id + "': times not strictly increasing");
    }
}

std::string_view to_string(TrendModel m) noexcept {
    switch (m) {
        case TrendModel::M0: return "M0";
        case TrendModel::M1mu: return "M1mu";
        case TrendModel::M1sigma: return "M1sigma";
        case TrendModel::M2: return "M2";
    }
    return "?";
}

TrendModel parse_trend_model(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "m0") return TrendModel::M0;
    if (lower == "m1mu" || lower == "m1.mu") return TrendModel::M1mu;
    if (lower == "m1sigma" || lower == "m1.sigma") return TrendModel::M1sigma;
    if (lower == "m2") return TrendModel::M2;
    throw InvalidInput("unknown trend model '" + std::string(name) + "'");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Data standardised to unit spread with centred, unit-spread times. The optimiser works
/// on coefficients in these units, which puts every parameter on a comparable scale.
class StandardProblem {
public:
    StandardProblem(const StationSeries& s, TrendModel model, const FitOptions& options)
        : model_(model),
          xi_lower_(options.xi_lower),
          margin_(options.support_margin),
          floor_(options.scale_floor) {
        center_ = mean(s.values);
        scale_ = sample_sd(s.values);
        if (!(scale_ > 1e-12 * std::max(1.0, std::fabs(center_))))
            throw DegenerateSample("series '" + s.station_id + "': values have no spread");
        t_center_ = mean(s.times);
        t_scale_ = sample_sd(s.times);
        if (!(t_scale_ > 0.0)) t_scale_ = 1.0;
        x_.resize(s.size());
        t_.resize(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            x_[i] = (s.values[i] - center_) / scale_;
            t_[i] = (s.times[i] - t_center_) / t_scale_;
        }
    }

    [[nodiscard]] std::size_t dim() const noexcept { return parameter_count(model_); }

    /// True when the scale at some observed time sits within a factor 10 of the floor.
    [[nodiscard]] bool on_scale_floor(std::span<const double> v) const {
        const Coef c = unpack(v);
        for (const double t : t_)
            if (c.b0 + c.b1 * t < 10.0 * floor_) return true;
        return false;
    }

    /// Negative log-likelihood in standardised units; +inf when infeasible.
    [[nodiscard]] double nll(std::span<const double> v) const {
        const Coef c = unpack(v);
        if (!(c.xi > xi_lower_)) return kInf;
        const bool scale_trend = has_scale_trend(model_);
        if (!scale_trend && !(c.b0 > floor_)) return kInf;
        const bool gumbel = std::fabs(c.xi) < kXiSwitch;
        const double log_b0 = scale_trend ? 0.0 : std::log(c.b0);
        double sum = 0.0;
        for (std::size_t i = 0; i < x_.size(); ++i) {
            const double sig = c.b0 + c.b1 * t_[i];
            if (!(sig > floor_)) return kInf;
            const double z = (x_[i] - c.a0 - c.a1 * t_[i]) / sig;
            if (!gumbel && !(c.xi * z > margin_ - 1.0)) return kInf;
            const double ld = detail::std_log_density(z, c.xi);
            if (ld == kLogZero) return kInf;
            sum -= ld - (scale_trend ? std::log(sig) : log_b0);
        }
        return sum;
    }

    [[nodiscard]] std::vector<double> pack(const TrendFit& f) const {
        const Coef c{(f.mu0 + f.mu1 * t_center_ - center_) / scale_,
                     has_location_trend(model_) ? f.mu1 * t_scale_ / scale_ : 0.0,
                     (f.sigma0 + f.sigma1 * t_center_) / scale_,
                     has_scale_trend(model_) ? f.sigma1 * t_scale_ / scale_ : 0.0, f.xi};
        return pack(c);
    }

    [[nodiscard]] std::vector<double> pack_stationary(const GevParams& p) const {
        return pack(Coef{(p.mu - center_) / scale_, 0.0, p.sigma / scale_, 0.0, p.xi});
    }

    [[nodiscard]] TrendFit unpack_fit(std::span<const double> v) const {
        const Coef c = unpack(v);
        TrendFit f;
        f.model = model_;
        f.mu1 = c.a1 * scale_ / t_scale_;
        f.mu0 = center_ + scale_ * c.a0 - f.mu1 * t_center_;
        f.sigma1 = c.b1 * scale_ / t_scale_;
        f.sigma0 = scale_ * c.b0 - f.sigma1 * t_center_;
        f.xi = c.xi;
        return f;
    }

    [[nodiscard]] std::vector<double> steps() const {
        std::vector<double> s;
        s.push_back(0.1);                                 // a0
        if (has_location_trend(model_)) s.push_back(0.1);  // a1
        s.push_back(0.1);                                 // b0
        if (has_scale_trend(model_)) s.push_back(0.05);    // b1
        s.push_back(0.1);                                 // xi
        return s;
    }

private:
    struct Coef {
        double a0, a1, b0, b1, xi;
    };

    [[nodiscard]] Coef unpack(std::span<const double> v) const {
        Coef c{v[0], 0.0, 0.0, 0.0, v.back()};
        std::size_t k = 1;
        if (has_location_trend(model_)) c.a1 = v[k++];
        c.b0 = v[k++];
        if (has_scale_trend(model_)) c.b1 = v[k++];
        return c;
    }

    [[nodiscard]] std::vector<double> pack(const Coef& c) const {
        std::vector<double> v{c.a0};
        if (has_location_trend(model_)) v.push_back(c.a1);
        v.push_back(c.b0);
        if (has_scale_trend(model_)) v.push_back(c.b1);
        v.push_back(c.xi);
        return v;
    }

    TrendModel model_;
    double xi_lower_ = -1.0;
    double margin_ = 0.0;
    double floor_ = 0.0;
    double center_ = 0.0, scale_ = 1.0, t_center_ = 0.0, t_scale_ = 1.0;
    std::vector<double> x_, t_;
};

/// Re-evaluate the objective in data units so max_loglik matches ns_log_likelihood exactly.
void finalize(TrendFit& f, const StationSeries& s, bool converged, std::size_t evals) {
    f.n_evals = evals;
    f.converged = converged;
    try {
        f.max_loglik = ns_log_likelihood(s.values, fitted_path(f, s.times));
    } catch (const InvalidInput&) {
        f.max_loglik = kLogZero;
    }
    if (!std::isfinite(f.max_loglik)) f.converged = false;
    f.xi_warning = f.xi <= -0.5;
}

TrendFit optimize(const StationSeries& s, TrendModel model, const StandardProblem& problem,
                  const std::vector<double>& start, const FitOptions& options) {
    const Objective objective = [&problem](std::span<const double> v) { return problem.nll(v); };
    const auto steps = problem.steps();
    const NelderMeadResult r = nelder_mead(objective, start, steps, options.optimizer);
    TrendFit f = problem.unpack_fit(r.x);
    f.model = model;
    f.degenerate = problem.on_scale_floor(r.x);
    finalize(f, s, r.converged && std::isfinite(r.value) && !f.degenerate, r.n_evals);
    return f;
}

TrendFit fit_stationary(const StationSeries& s, const FitOptions& options) {
    s.validate(min_series_length(TrendModel::M0));
    const StandardProblem problem(s, TrendModel::M0, options);
    constexpr double kGamma = std::numbers::egamma;
    const double sig = std::sqrt(6.0) / std::numbers::pi;  // standardised sd is 1
    std::vector<double> start = problem.pack_stationary({-kGamma * sig, sig, 0.1});
    if (!std::isfinite(problem.nll(start))) start.back() = 0.0;
    if (!std::isfinite(problem.nll(start)))
        throw InvalidInput("series '" + s.station_id + "': no feasible starting point");
    return optimize(s, TrendModel::M0, problem, start, options);
}

}  // namespace

GevParams moment_seed(const StationSeries& series) {
    series.validate(min_series_length(TrendModel::M0));
    const double m = mean(series.values);
    const double sd = sample_sd(series.values);
    if (!(sd > 1e-12 * std::max(1.0, std::fabs(m))))
        throw DegenerateSample("series '" + series.station_id + "': values have no spread");
    const double sig = std::sqrt(6.0) * sd / std::numbers::pi;
    return {m - std::numbers::egamma * sig, sig, 0.1};
}

GevParams initial_params(const StationSeries& series, const FitOptions& options) {
    const GevParams seed = moment_seed(series);
    const TrendFit f = fit_stationary(series, options);
    if (!f.converged) return seed;
    return {f.mu0, f.sigma0, f.xi};
}

TrendFit fit_from(const StationSeries& series, TrendModel model, const TrendFit& seed,
                  const FitOptions& options) {
    series.validate(min_series_length(model));
    const StandardProblem problem(series, model, options);
    std::vector<double> start = problem.pack(seed);
    if (!std::isfinite(problem.nll(start))) {
        // Seed infeasible for this series (e.g. a bootstrap replicate): restart from the
        // stationary solution of the series itself.
        const TrendFit base = fit_stationary(series, options);
        if (model == TrendModel::M0) return base;
        start = problem.pack(base);
    }
    return optimize(series, model, problem, start, options);
}

TrendFit fit(const StationSeries& series, TrendModel model, const FitOptions& options) {
    switch (model) {
        case TrendModel::M0: return fit_stationary(series, options);
        case TrendModel::M1mu:
        case TrendModel::M1sigma:
            return fit_from(series, model, fit_stationary(series, options), options);
        case TrendModel::M2: return fit_nested(series, options).m2;
    }
    throw InvalidInput("fit: unknown model");
}

NestedFits fit_nested(const StationSeries& series, const FitOptions& options) {
    NestedFits out;
    out.m0 = fit_stationary(series, options);
    out.m1mu = fit_from(series, TrendModel::M1mu, out.m0, options);
    out.m1sigma = fit_from(series, TrendModel::M1sigma, out.m0, options);
    const TrendFit& better =
        out.m1mu.max_loglik >= out.m1sigma.max_loglik ? out.m1mu : out.m1sigma;
    out.m2 = fit_from(series, TrendModel::M2, better, options);
    return out;
}

NsGevPath fitted_path(const TrendFit& fit, std::span<const double> times) {
    NsGevPath path;
    path.xi = fit.xi;
    path.mu_t.resize(times.size());
    path.sigma_t.resize(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        path.mu_t[i] = fit.location_at(times[i]);
        path.sigma_t[i] = fit.scale_at(times[i]);
        if (!(path.sigma_t[i] > 0.0))
            throw InvalidInput("fitted_path: non-positive scale at index " + std::to_string(i));
    }
    return path;
}

TrendFit stationary_fit(const GevParams& p) {
    TrendFit f;
    f.model = TrendModel::M0;
    f.mu0 = p.mu;
    f.sigma0 = p.sigma;
    f.xi = p.xi;
    f.converged = true;
    f.xi_warning = p.xi <= -0.5;
    return f;
}

}  // namespace gevtrend
