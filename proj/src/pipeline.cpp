#include "gevtrend/pipeline.hpp"

#include "gevtrend/errors.hpp"
#include "gevtrend/parallel.hpp"
#include "gevtrend/return_level.hpp"
#include "gevtrend/sim_study.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace gevtrend {

namespace {

constexpr const char* kVersion = "1.0.0";

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string str(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

FitRecord record_of(const TrendFit& f, std::string_view name) {
    return {std::string(name), f.mu0,        f.mu1,       f.sigma0,    f.sigma1,
            f.xi,              f.max_loglik, f.converged, f.xi_warning, f.degenerate};
}

FitRecord record_of(const ResidualModel& m, std::string_view name) {
    FitRecord r = record_of(m.as_trend_fit(), name);
    r.converged = m.residual_fit.converged;
    return r;
}

std::string significance(double p, double alpha) {
    if (p < alpha) return "significant";
    if (p < 2.0 * alpha) return "potential";
    return "";
}

TestRecord record_of(const LrResult& r, TestMode mode, double alpha) {
    TestRecord t;
    t.variant = std::string(to_string(r.variant));
    t.mode = std::string(to_string(mode));
    t.statistic = r.statistic;
    t.trend = r.trend();
    t.p_asymptotic = r.p_asymptotic;
    t.p_modified = r.p_modified;
    t.critical_value = r.critical_value;
    t.n_sim = r.n_sim;
    t.n_sim_failures = r.n_sim_failures;
    t.significance = significance(r.p_modified.value_or(r.p_asymptotic), alpha);
    return t;
}

TestRecord failed_test(LrVariant v, TestMode mode, const std::string& why) {
    TestRecord t;
    t.variant = std::string(to_string(v));
    t.mode = std::string(to_string(mode));
    t.error = why;
    return t;
}

BootRecord record_of(const BootSummary& b, std::string kind, LrVariant v, TestMode mode,
                     const ResampleMode& rm) {
    return {std::move(kind),
            std::string(to_string(v)),
            std::string(to_string(mode)),
            std::string(to_string(rm.kind)),
            rm.target_size,
            b.n_reps,
            b.n_failures,
            b.rejection_rate,
            b.critical_value};
}

LrVariant variant_or_lr1(const PipelineOptions& o) { return o.variant.value_or(LrVariant::LR1); }

ResampleMode resample_for(const PipelineOptions& o, ResampleMode::Kind fallback) {
    return {o.resample.value_or(fallback), o.target_size};
}

Rng station_stream(const PipelineOptions& o, const StationSeries& s) {
    return Rng(o.seed).split(fnv1a(s.station_id));
}

std::vector<LrVariant> test_variants(const PipelineOptions& o) {
    if (o.variant) return {*o.variant};
    return {std::begin(kAllVariants), std::end(kAllVariants)};
}

/// Runs one variant and records either the result or the reason it failed.
TestRecord run_one_test(const StationSeries& s, LrVariant v, TestMode mode,
                        const PipelineOptions& o, const Rng& rng, LrResult* out = nullptr) {
    try {
        LrResult r = run_test(s, v, mode, o.nsim, o.alpha, rng);
        TestRecord t = record_of(r, mode, o.alpha);
        if (out) *out = std::move(r);
        return t;
    } catch (const TestFailure& e) {
        TestRecord t = record_of(e.partial(), mode, o.alpha);
        t.significance.clear();
        t.error = e.what();
        return t;
    } catch (const InvalidInput& e) {
        return failed_test(v, mode, e.what());
    } catch (const CalibrationFailure& e) {
        return failed_test(v, mode, e.what());
    }
}

void do_fit(StationRecord& rec, const StationSeries& s, const PipelineOptions& o) {
    const auto add_trend = [&](TrendModel m, const TrendFit& f) {
        rec.fits.push_back(record_of(f, to_string(m)));
    };
    if (!o.model) {
        const NestedFits f = fit_nested(s);
        add_trend(TrendModel::M0, f.m0);
        add_trend(TrendModel::M1mu, f.m1mu);
        add_trend(TrendModel::M1sigma, f.m1sigma);
        add_trend(TrendModel::M2, f.m2);
        return;
    }
    switch (*o.model) {
        case AnyModel::M3: rec.fits.push_back(record_of(fit_residual_model(s, LineMethod::LS), "M3")); return;
        case AnyModel::M4: rec.fits.push_back(record_of(fit_residual_model(s, LineMethod::TS), "M4")); return;
        case AnyModel::M0: add_trend(TrendModel::M0, fit(s, TrendModel::M0)); return;
        case AnyModel::M1mu: add_trend(TrendModel::M1mu, fit(s, TrendModel::M1mu)); return;
        case AnyModel::M1sigma: add_trend(TrendModel::M1sigma, fit(s, TrendModel::M1sigma)); return;
        case AnyModel::M2: add_trend(TrendModel::M2, fit(s, TrendModel::M2)); return;
    }
}

void do_test(StationRecord& rec, const StationSeries& s, const PipelineOptions& o, const Rng& rng) {
    for (const LrVariant v : test_variants(o))
        rec.tests.push_back(run_one_test(s, v, o.mode, o, rng.split(static_cast<std::uint64_t>(v))));
}

void do_calibrate(StationRecord& rec, const StationSeries& s, const PipelineOptions& o,
                  const Rng& rng) {
    const LrVariant v = variant_or_lr1(o);
    rec.tests.push_back(run_one_test(s, v, TestMode::Modified, o, rng.split(1)));

    const ResampleMode rm = resample_for(o, ResampleMode::Kind::PermuteNoReplace);
    BootOptions asym;
    asym.nsim = o.nsim;
    const BootSummary type1 = permutation_type1(s, v, o.nreps, o.alpha, rm, rng.split(2), asym);
    rec.bootstrap.push_back(record_of(type1, "type1", v, TestMode::Asymptotic, rm));

    const BootSummary power =
        parametric_power(s, TrendModel::M1mu, v, o.nreps, o.alpha, rm, rng.split(3), asym);
    rec.bootstrap.push_back(record_of(power, "power", v, TestMode::Asymptotic, rm));

    BootOptions modified = asym;
    modified.mode = TestMode::Modified;
    const BootSummary mpower =
        parametric_power(s, TrendModel::M1mu, v, o.nreps, o.alpha, rm, rng.split(4), modified);
    rec.bootstrap.push_back(record_of(mpower, "power", v, TestMode::Modified, rm));
}

void do_ci(StationRecord& rec, const StationSeries& s, const PipelineOptions& o, const Rng& rng) {
    std::vector<AnyModel> models{AnyModel::M1mu, AnyModel::M2, AnyModel::M3, AnyModel::M4};
    if (o.model) models = {*o.model};
    const ResampleMode rm = resample_for(o, ResampleMode::Kind::WithReplacement);
    for (const AnyModel m : models) {
        IntervalRecord r;
        r.model = std::string(to_string(m));
        r.level = o.level;
        r.n_reps = o.nreps;
        const Rng sub = rng.split(static_cast<std::uint64_t>(m));
        try {
            BootSummary b;
            switch (m) {
                case AnyModel::M1mu:
                    r.estimate = fit(s, TrendModel::M1mu).mu1;
                    b = trend_ci(s, TrendModel::M1mu, o.nreps, o.level, sub, rm);
                    break;
                case AnyModel::M2:
                    r.estimate = fit(s, TrendModel::M2).mu1;
                    b = gev_residual_ci(s, ResidualMethod::M2, o.nreps, o.level, sub, rm);
                    break;
                case AnyModel::M3:
                    r.estimate = ols_fit(s.times, s.values).slope;
                    b = gev_residual_ci(s, ResidualMethod::LS, o.nreps, o.level, sub, rm);
                    break;
                case AnyModel::M4:
                    r.estimate = theil_sen_fit(s.times, s.values).slope;
                    b = gev_residual_ci(s, ResidualMethod::TS, o.nreps, o.level, sub, rm);
                    break;
                default:
                    throw InvalidInput("ci: model must be one of m1mu, m2, m3, m4");
            }
            r.lo = b.quantile_lo;
            r.hi = b.quantile_hi;
            r.n_failures = b.n_failures;
        } catch (const InvalidInput& e) {
            r.error = e.what();
        }
        rec.intervals.push_back(r);
    }
}

void do_return_level(StationRecord& rec, const StationSeries& s, const PipelineOptions& o,
                     const Dataset& data, const Rng& rng) {
    ReturnLevelOptions ro;
    ro.observations_per_year = o.per_year.value_or(data.observations_per_year);
    ro.draws_per_year = o.draws_per_year;
    ro.mode = resample_for(o, ResampleMode::Kind::WithReplacement);
    const ReturnLevelResult r = return_level_ci(s, o.k, o.nreps, o.level, rng, ro);
    rec.return_level = ReturnLevelRecord{r.k,     r.analytic, r.level,  r.ci_lo,
                                         r.ci_hi, o.level,    r.n_reps, r.n_failures};
}

void do_gof(StationRecord& rec, const StationSeries& s, const PipelineOptions& o, const Rng& rng) {
    AnyModel am = o.model.value_or(AnyModel::M1mu);
    TrendFit f;
    switch (am) {
        case AnyModel::M0: f = fit(s, TrendModel::M0); break;
        case AnyModel::M1mu: f = fit(s, TrendModel::M1mu); break;
        case AnyModel::M1sigma: f = fit(s, TrendModel::M1sigma); break;
        case AnyModel::M2: f = fit(s, TrendModel::M2); break;
        case AnyModel::M3: f = fit_residual_model(s, LineMethod::LS).as_trend_fit(); break;
        case AnyModel::M4: f = fit_residual_model(s, LineMethod::TS).as_trend_fit(); break;
    }
    rec.fits.push_back(record_of(f, to_string(am)));
    const std::vector<double> y = to_std_gumbel(s.values, fitted_path(f, s.times));
    for (const GofMethod m : {GofMethod::AD, GofMethod::CvM}) {
        const GofResult g = gof_test(y, {0.0, 1.0, 0.0}, m, o.nsim,
                                     rng.split(static_cast<std::uint64_t>(m)));
        rec.gof.push_back({std::string(to_string(m)), std::string(to_string(am)), g.statistic,
                           g.p_value, g.n_sim});
    }
}

void do_screen(StationRecord& rec, const StationSeries& s, const PipelineOptions& o, const Rng& rng) {
    rec.flagged = false;
    if (s.size() < o.min_n) {
        rec.skip_reason = "n=" + std::to_string(s.size()) + " below the screening minimum of " +
                          std::to_string(o.min_n);
        return;
    }
    const LrVariant v = variant_or_lr1(o);
    LrResult result;
    TestRecord t = run_one_test(s, v, TestMode::Modified, o, rng.split(1), &result);
    rec.tests.push_back(t);
    if (t.error || !t.p_modified || !(*t.p_modified < o.alpha)) return;

    const ResampleMode rm{ResampleMode::Kind::PermuteNoReplace, 0};
    BootOptions bo;
    bo.mode = TestMode::Modified;
    bo.critical_value = t.critical_value;
    try {
        const BootSummary power =
            parametric_power(s, TrendModel::M1mu, v, o.nreps, o.alpha, rm, rng.split(2), bo);
        rec.bootstrap.push_back(record_of(power, "power", v, TestMode::Modified, rm));
        rec.flagged = power.rejection_rate && *power.rejection_rate >= o.target_power;
    } catch (const InvalidInput& e) {
        rec.skip_reason = std::string("power bootstrap failed: ") + e.what();
    }
}

}  // namespace

std::string_view to_string(Command c) noexcept {
    switch (c) {
        case Command::Fit: return "fit";
        case Command::Test: return "test";
        case Command::Calibrate: return "calibrate";
        case Command::Ci: return "ci";
        case Command::ReturnLevel: return "return-level";
        case Command::Gof: return "gof";
        case Command::Simulate: return "simulate";
        case Command::Screen: return "screen";
    }
    return "?";
}

Command parse_command(std::string_view name) {
    for (const Command c : {Command::Fit, Command::Test, Command::Calibrate, Command::Ci,
                            Command::ReturnLevel, Command::Gof, Command::Simulate, Command::Screen})
        if (to_string(c) == name) return c;
    throw InvalidInput("unknown command '" + std::string(name) + "'");
}

std::string_view to_string(AnyModel m) noexcept {
    switch (m) {
        case AnyModel::M0: return "M0";
        case AnyModel::M1mu: return "M1mu";
        case AnyModel::M1sigma: return "M1sigma";
        case AnyModel::M2: return "M2";
        case AnyModel::M3: return "M3";
        case AnyModel::M4: return "M4";
    }
    return "?";
}

AnyModel parse_any_model(std::string_view name) {
    const std::string s = lower(name);
    if (s == "m3") return AnyModel::M3;
    if (s == "m4") return AnyModel::M4;
    switch (parse_trend_model(s)) {
        case TrendModel::M0: return AnyModel::M0;
        case TrendModel::M1mu: return AnyModel::M1mu;
        case TrendModel::M1sigma: return AnyModel::M1sigma;
        case TrendModel::M2: return AnyModel::M2;
    }
    throw InvalidInput("unknown model '" + std::string(name) + "'");
}

std::uint64_t fnv1a(std::string_view text) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::map<std::string, std::string> describe(const PipelineOptions& o, Command command,
                                            const Dataset& data) {
    std::map<std::string, std::string> m;
    m["command"] = std::string(to_string(command));
    m["variant"] = o.variant ? std::string(to_string(*o.variant)) : "all";
    m["mode"] = std::string(to_string(o.mode));
    m["model"] = o.model ? std::string(to_string(*o.model)) : "default";
    m["nsim"] = std::to_string(o.nsim != 0 ? o.nsim : command == Command::Gof ? 9999 : 2000);
    m["nreps"] = std::to_string(o.nreps);
    m["alpha"] = str(o.alpha);
    m["level"] = str(o.level);
    m["k"] = std::to_string(o.k);
    m["seed"] = std::to_string(o.seed);
    m["per_year"] = str(o.per_year.value_or(data.observations_per_year));
    m["draws_per_year"] = std::to_string(o.draws_per_year);
    m["table"] = o.table;
    m["resample"] = o.resample ? std::string(to_string(*o.resample)) : "default";
    m["target_size"] = std::to_string(o.target_size);
    m["min_n"] = std::to_string(o.min_n);
    m["target_power"] = str(o.target_power);
    m["threads"] = std::to_string(o.threads == 0 ? thread_count() : o.threads);
    return m;
}

AnalysisReport run_pipeline(const Dataset& data, Command command, const PipelineOptions& options) {
    PipelineOptions o = options;
    if (o.nsim == 0) o.nsim = command == Command::Gof ? 9999 : 2000;
    if (!(o.alpha > 0.0 && o.alpha < 1.0)) throw InvalidInput("--alpha must lie in (0, 1)");
    if (!(o.level >= 0.0 && o.level < 1.0)) throw InvalidInput("--level must lie in [0, 1)");
    if (o.nreps == 0) throw InvalidInput("--nreps must be positive");
    if (o.k == 0) throw InvalidInput("--k must be positive");
    if (o.per_year && !(*o.per_year > 0.0)) throw InvalidInput("--per-year must be positive");
    if (o.threads != 0) set_thread_count(o.threads);

    AnalysisReport report;
    report.command = std::string(to_string(command));
    report.seed = o.seed;
    report.version = kVersion;
    report.options = describe(o, command, data);

    if (command == Command::Simulate) {
        StudyConfig cfg = table_config(o.table);
        cfg.n_reps = o.nreps;
        cfg.alpha = o.alpha;
        cfg.seed = o.seed;
        cfg.nsim = o.nsim;
        cfg.modified = o.mode == TestMode::Modified;
        if (o.variant) cfg.variants = {*o.variant};
        report.cells = run_study(cfg);
        return report;
    }

    for (const StationSeries& s : data.stations) {
        StationRecord rec;
        rec.station_id = s.station_id;
        rec.n = s.size();
        const Rng rng = station_stream(o, s);
        try {
            s.validate(min_series_length(TrendModel::M0));
            switch (command) {
                case Command::Fit: do_fit(rec, s, o); break;
                case Command::Test: do_test(rec, s, o, rng); break;
                case Command::Calibrate: do_calibrate(rec, s, o, rng); break;
                case Command::Ci: do_ci(rec, s, o, rng); break;
                case Command::ReturnLevel: do_return_level(rec, s, o, data, rng); break;
                case Command::Gof: do_gof(rec, s, o, rng); break;
                case Command::Screen: do_screen(rec, s, o, rng); break;
                case Command::Simulate: break;
            }
        } catch (const InvalidInput& e) {
            rec.skip_reason = e.what();
        } catch (const CalibrationFailure& e) {
            rec.skip_reason = e.what();
        } catch (const InfeasibleReturnLevel& e) {
            rec.skip_reason = e.what();
        }
        report.stations.push_back(std::move(rec));
    }
    return report;
}

const std::vector<SyntheticStation>& synthetic_layout() {
    static const std::vector<SyntheticStation> layout{
        {"S01", 45, 0.0, 0.1},   {"S02", 60, 0.5, 0.1},  {"S03", 35, 0.0, -0.1},
        {"S04", 41, 0.0, 0.2},   {"S05", 45, 0.0, 0.0},  {"S06", 29, 0.0, 0.15},
        {"S07", 70, -0.45, 0.0}, {"S08", 21, 0.0, -0.05}, {"S09", 19, 0.0, 0.1},
        {"S10", 17, 0.0, 0.05},  {"S11", 80, 0.35, 0.2}, {"S12", 14, 0.0, 0.2},
        {"S13", 11, 0.0, 0.0},
    };
    return layout;
}

Dataset synthetic_dataset(std::uint64_t seed) {
    Dataset d;
    const Rng root(seed);
    for (const auto& st : synthetic_layout()) {
        Rng rng = root.split(fnv1a(st.id));
        StationSeries s{st.id, std::vector<double>(st.n), gev_sample({22.0, 10.0, st.xi}, st.n, rng)};
        std::iota(s.times.begin(), s.times.end(), 1.0);
        for (std::size_t i = 0; i < st.n; ++i) s.values[i] += st.mu1 * s.times[i];
        d.stations.push_back(std::move(s));
    }
    return d;
}

}  // namespace gevtrend
