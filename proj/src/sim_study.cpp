#include "gevtrend/sim_study.hpp"

#include "gevtrend/errors.hpp"
#include "gevtrend/parallel.hpp"
#include "gevtrend/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <tuple>

namespace gevtrend {

namespace {

// Distinct first-level keys for data streams and calibration streams.
constexpr std::uint64_t kDataDomain = 0x64617461;   // "data"
constexpr std::uint64_t kCalibDomain = 0x63616c69;  // "cali"

std::uint64_t variant_key(LrVariant v) { return static_cast<std::uint64_t>(v) + 1; }

Rng data_stream(const StudyConfig& cfg, double xi, double mu1, std::size_t n) {
    return Rng(cfg.seed).split({kDataDomain, key_of(xi), key_of(mu1), n});
}

Rng calibration_stream(const StudyConfig& cfg, double xi, std::size_t n, LrVariant v) {
    return Rng(cfg.seed).split({kCalibDomain, key_of(xi), n, variant_key(v)});
}

StudyCell make_cell(double xi, double mu1, std::size_t n, LrVariant v, bool modified,
                    std::size_t n_reps, std::size_t rejections, std::size_t failures,
                    std::optional<double> crit) {
    StudyCell c;
    c.xi = xi;
    c.mu1 = mu1;
    c.n = n;
    c.variant = v;
    c.modified = modified;
    c.n_reps = n_reps;
    c.n_failures = failures;
    c.critical_value = crit;
    const std::size_t used = n_reps - failures;
    if (used > 0) {
        c.rejection_rate = static_cast<double>(rejections) / static_cast<double>(used);
        c.mc_stderr =
            std::sqrt(c.rejection_rate * (1.0 - c.rejection_rate) / static_cast<double>(used));
    } else {
        c.rejection_rate = std::nan("");
        c.mc_stderr = std::nan("");
    }
    return c;
}

}  // namespace

void StudyConfig::validate() const {
    if (xi_grid.empty() || mu1_grid.empty() || size_grid.empty() || variants.empty())
        throw InvalidInput("study config: grids and variants must be non-empty");
    for (const std::size_t n : size_grid)
        if (n < 10) throw InvalidInput("study config: sample sizes must be at least 10");
    if (n_reps < 100) throw InvalidInput("study config: n_reps must be at least 100");
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("study config: alpha must lie in (0, 1)");
    if (!(sigma > 0.0)) throw InvalidInput("study config: sigma must be positive");
    if (modified && nsim == 0) throw InvalidInput("study config: nsim must be positive");
    for (const double v : xi_grid)
        if (!std::isfinite(v)) throw InvalidInput("study config: non-finite xi");
    for (const double v : mu1_grid)
        if (!std::isfinite(v)) throw InvalidInput("study config: non-finite mu1");
}

std::vector<StudyCell> run_study(const StudyConfig& cfg, const FitOptions& options) {
    cfg.validate();
    const std::size_t nv = cfg.variants.size();

    // Critical values depend on (xi, n, variant) only; share them across mu1.
    std::map<std::tuple<double, std::size_t, LrVariant>, double> crit;
    if (cfg.modified) {
        for (const double xi : cfg.xi_grid)
            for (const std::size_t n : cfg.size_grid)
                for (const LrVariant v : cfg.variants) {
                    const auto key = std::make_tuple(xi, n, v);
                    if (crit.count(key)) continue;
                    crit[key] = simulate_critical_value(stationary_fit({cfg.mu0, cfg.sigma, xi}), n,
                                                        v, cfg.nsim, cfg.alpha,
                                                        calibration_stream(cfg, xi, n, v), options);
                }
    }

    std::vector<StudyCell> cells;
    for (const double xi : cfg.xi_grid) {
        for (const double mu1 : cfg.mu1_grid) {
            for (const std::size_t n : cfg.size_grid) {
                const Rng stream = data_stream(cfg, xi, mu1, n);
                std::vector<double> times(n);
                std::iota(times.begin(), times.end(), 1.0);
                std::vector<std::optional<double>> cv(nv);
                for (std::size_t k = 0; k < nv; ++k)
                    if (cfg.modified) cv[k] = crit.at(std::make_tuple(xi, n, cfg.variants[k]));

                // decisions[r * nv * 2 + k * 2 + mode]
                std::vector<Decision> decisions(cfg.n_reps * nv * 2, Decision::Failed);
                parallel_for(cfg.n_reps, [&](std::size_t r) {
                    Rng sub = stream.split(r);
                    std::vector<double> x = gev_sample({cfg.mu0, cfg.sigma, xi}, n, sub);
                    for (std::size_t i = 0; i < n; ++i) x[i] += mu1 * times[i];
                    const StationSeries s{"sim", times, std::move(x)};
                    for (std::size_t k = 0; k < nv; ++k) {
                        const StatisticOutcome o = evaluate_statistic(s, cfg.variants[k], options);
                        decisions[(r * nv + k) * 2] = decide(o, cfg.alpha);
                        if (cfg.modified) decisions[(r * nv + k) * 2 + 1] = decide(o, cfg.alpha, cv[k]);
                    }
                });

                for (std::size_t k = 0; k < nv; ++k) {
                    for (int mode = 0; mode < (cfg.modified ? 2 : 1); ++mode) {
                        std::size_t rej = 0, fail = 0;
                        for (std::size_t r = 0; r < cfg.n_reps; ++r) {
                            const Decision d = decisions[(r * nv + k) * 2 + mode];
                            if (d == Decision::Reject) ++rej;
                            else if (d == Decision::Failed) ++fail;
                        }
                        cells.push_back(make_cell(xi, mu1, n, cfg.variants[k], mode == 1,
                                                  cfg.n_reps, rej, fail,
                                                  mode == 1 ? cv[k] : std::nullopt));
                    }
                }
            }
        }
    }
    return cells;
}

std::vector<StudyCell> comparison_curves(StudyConfig cfg, const std::vector<std::size_t>& size_range,
                                         const FitOptions& options) {
    cfg.size_grid = size_range;
    return run_study(cfg, options);
}

std::vector<MinimalSize> minimal_sample_size(const std::vector<StudyCell>& cells,
                                             double target_power, double target_alpha) {
    using Key = std::tuple<double, double, LrVariant, bool>;
    std::map<Key, std::vector<const StudyCell*>> groups;
    std::vector<Key> order;
    for (const StudyCell& c : cells) {
        const Key key{c.xi, c.mu1, c.variant, c.modified};
        if (!groups.count(key)) order.push_back(key);
        groups[key].push_back(&c);
    }
    const auto null_cell = [&](const StudyCell& c) -> const StudyCell* {
        const auto it = groups.find(Key{c.xi, 0.0, c.variant, c.modified});
        if (it == groups.end()) return nullptr;
        for (const StudyCell* p : it->second)
            if (p->n == c.n) return p;
        return nullptr;
    };

    std::vector<MinimalSize> out;
    for (const Key& key : order) {
        MinimalSize m{std::get<0>(key), std::get<1>(key), std::get<2>(key), std::get<3>(key), {}};
        if (m.mu1 != 0.0) {
            auto members = groups[key];
            std::sort(members.begin(), members.end(),
                      [](const StudyCell* a, const StudyCell* b) { return a->n < b->n; });
            for (const StudyCell* c : members) {
                const StudyCell* h0 = null_cell(*c);
                if (h0 == nullptr || std::isnan(c->rejection_rate)) continue;
                const bool powered = c->rejection_rate >= target_power;
                const bool sized = h0->rejection_rate <= target_alpha + 3.0 * h0->mc_stderr;
                if (powered && sized) {
                    m.n = c->n;
                    break;
                }
            }
        }
        out.push_back(m);
    }
    return out;
}

std::vector<MinimalSize> minimal_sample_size(StudyConfig cfg, double target_power,
                                             double target_alpha, const FitOptions& options) {
    if (std::find(cfg.mu1_grid.begin(), cfg.mu1_grid.end(), 0.0) == cfg.mu1_grid.end())
        cfg.mu1_grid.insert(cfg.mu1_grid.begin(), 0.0);
    return minimal_sample_size(run_study(cfg, options), target_power, target_alpha);
}

StudyConfig table_config(std::string_view table) {
    StudyConfig cfg;
    cfg.xi_grid = {-0.5, -0.25, 0.0, 0.25, 0.5};
    cfg.size_grid = {20, 40, 80};
    if (table == "type1") {
        cfg.mu1_grid = {0.0};
    } else if (table == "power") {
        cfg.xi_grid = {-0.5, 0.0, 0.5};
        cfg.mu1_grid = {-0.5, -0.1, 0.1, 0.5};
    } else {
        throw InvalidInput("unknown table '" + std::string(table) + "' (expected type1 or power)");
    }
    return cfg;
}

}  // namespace gevtrend
