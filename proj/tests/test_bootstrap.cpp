#include "doctest.h"

#include "gevtrend/bootstrap.hpp"
#include "gevtrend/errors.hpp"
#include "gevtrend/gev.hpp"
#include "gevtrend/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

using namespace gevtrend;

namespace {

StationSeries draw(std::size_t n, double mu1, double xi, std::uint64_t seed) {
    Rng rng(seed);
    StationSeries s{"b", {}, {}};
    for (std::size_t i = 1; i <= n; ++i) {
        s.times.push_back(static_cast<double>(i));
        s.values.push_back(gev_sample({22 + mu1 * static_cast<double>(i), 10, xi}, 1, rng)[0]);
    }
    return s;
}

std::vector<double> sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("resample mode names") {
    for (auto k : {ResampleMode::Kind::PermuteNoReplace, ResampleMode::Kind::WithReplacement,
                   ResampleMode::Kind::FreshGumbel})
        CHECK(parse_resample_kind(to_string(k)) == k);
    CHECK_THROWS_AS((void)parse_resample_kind("jackknife"), InvalidInput);
}

TEST_CASE("target grids") {
    const StationSeries s = draw(10, 0, 0, 1);
    CHECK(target_times(s, {ResampleMode::Kind::WithReplacement, 0}) == s.times);
    const auto t = target_times(s, {ResampleMode::Kind::FreshGumbel, 15});
    REQUIRE(t.size() == 15);
    CHECK(t.front() == 1.0);
    CHECK(t.back() == 15.0);
    CHECK_THROWS_AS((void)target_times(s, {ResampleMode::Kind::PermuteNoReplace, 12}), InvalidInput);
}

TEST_CASE("permutation under a stationary fit reuses the values") {
    const StationSeries s = draw(30, 0, 0.2, 2);
    const TrendFit null = fit(s, TrendModel::M0);
    Rng rng(5);
    const StationSeries p = gumbel_resample(s, null, {ResampleMode::Kind::PermuteNoReplace, 0}, rng);
    CHECK(sorted(p.values) == sorted(s.values));
    CHECK(p.times == s.times);
    CHECK(p.values != s.values);

    Rng rng2(6);
    const StationSeries w = gumbel_resample(s, null, {ResampleMode::Kind::WithReplacement, 50}, rng2);
    CHECK(w.size() == 50);
    for (double v : w.values) CHECK(std::find(s.values.begin(), s.values.end(), v) != s.values.end());
}

TEST_CASE("explicit draw indices on a trended fit") {
    const StationSeries s = draw(20, 0.5, 0.1, 3);
    const TrendFit f = fit(s, TrendModel::M1mu);
    std::vector<std::size_t> idx(20);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    // Identity draws map each observation back onto itself.
    const StationSeries same = gumbel_resample(s, f, idx);
    for (std::size_t i = 0; i < s.size(); ++i)
        CHECK(same.values[i] == doctest::Approx(s.values[i]).epsilon(1e-10));
    // A single repeated draw follows the fitted location trend.
    const std::vector<std::size_t> one(5, 7);
    const StationSeries rep = gumbel_resample(s, f, one);
    for (std::size_t i = 1; i < 5; ++i)
        CHECK(rep.values[i] - rep.values[i - 1] == doctest::Approx(f.mu1).epsilon(1e-9));
    const std::vector<std::size_t> bad{0, 20};
    CHECK_THROWS_AS((void)gumbel_resample(s, f, bad), InvalidInput);
}

TEST_CASE("fresh draws follow the fitted distribution") {
    StationSeries s = draw(10, 0, 0, 4);
    const TrendFit f = stationary_fit({22, 10, 0});
    Rng rng(8);
    const StationSeries big = gumbel_resample(s, f, {ResampleMode::Kind::FreshGumbel, 20000}, rng);
    CHECK(ks_distance(big.values, [](double x) { return gev_cdf(x, {22, 10, 0}); }) < 0.0096);
}

TEST_CASE("support violations propagate") {
    const StationSeries s = draw(20, 0, 0.3, 5);
    TrendFit f = stationary_fit({40, 1, 0.5});
    Rng rng(1);
    CHECK_THROWS_AS((void)gumbel_resample(s, f, {ResampleMode::Kind::WithReplacement, 0}, rng),
                    SupportViolation);
}

TEST_CASE("type-1 estimate on iid data") {
    const StationSeries s = draw(40, 0, 0, 6);
    const BootSummary a = permutation_type1(s, LrVariant::LR1, 300, 0.05,
                                            {ResampleMode::Kind::PermuteNoReplace, 0}, Rng(3));
    REQUIRE(a.rejection_rate.has_value());
    CHECK(*a.rejection_rate < 0.13);
    CHECK(a.n_reps == 300);
    const BootSummary b = permutation_type1(s, LrVariant::LR1, 300, 0.05,
                                            {ResampleMode::Kind::PermuteNoReplace, 0}, Rng(3));
    CHECK(a.rejection_rate == b.rejection_rate);
    CHECK(a.n_failures == b.n_failures);
    CHECK(a.seed == b.seed);
    CHECK_THROWS_AS((void)permutation_type1(s, LrVariant::LR1, 0, 0.05, {}, Rng(3)), InvalidInput);
}

TEST_CASE("power against a strong trend and a forced null") {
    const StationSeries s = draw(40, 0.5, 0, 7);
    const BootSummary p = parametric_power(s, TrendModel::M1mu, LrVariant::LR1, 200, 0.05,
                                           {ResampleMode::Kind::FreshGumbel, 0}, Rng(4));
    REQUIRE(p.rejection_rate.has_value());
    CHECK(*p.rejection_rate > 0.8);

    TrendFit flat = fit(s, TrendModel::M0);
    flat.model = TrendModel::M1mu;
    const BootSummary q = parametric_power(s, flat, LrVariant::LR1, 300, 0.05,
                                           {ResampleMode::Kind::FreshGumbel, 0}, Rng(4));
    CHECK(*q.rejection_rate < 0.13);
    CHECK_THROWS_AS((void)parametric_power(s, TrendModel::M0, LrVariant::LR1, 10, 0.05, {}, Rng(1)),
                    InvalidInput);
}

TEST_CASE("modified power reuses one critical value") {
    const StationSeries s = draw(30, 0.4, 0, 8);
    BootOptions o;
    o.mode = TestMode::Modified;
    o.nsim = 199;
    const BootSummary p = parametric_power(s, TrendModel::M1mu, LrVariant::LR1, 100, 0.05,
                                           {ResampleMode::Kind::PermuteNoReplace, 0}, Rng(2), o);
    REQUIRE(p.critical_value.has_value());
    CHECK(*p.critical_value > 1.0);
    o.critical_value = 1e6;
    const BootSummary none = parametric_power(s, TrendModel::M1mu, LrVariant::LR1, 50, 0.05,
                                              {ResampleMode::Kind::PermuteNoReplace, 0}, Rng(2), o);
    CHECK(*none.rejection_rate == 0.0);
}

TEST_CASE("trend interval") {
    const StationSeries s = draw(45, 0.5, 0, 9);
    const BootSummary ci = trend_ci(s, TrendModel::M1mu, 200, 0.95, Rng(5));
    REQUIRE(ci.quantile_lo.has_value());
    CHECK(*ci.quantile_lo < *ci.quantile_hi);
    CHECK(*ci.quantile_lo > 0.0);
    CHECK(ci.values.size() + ci.n_failures == 200);

    const BootSummary zero = trend_ci(s, TrendModel::M1mu, 101, 0.0, Rng(5));
    CHECK(*zero.quantile_lo == *zero.quantile_hi);
    CHECK(*zero.quantile_lo == doctest::Approx(median(zero.values)));

    CHECK_THROWS_AS((void)trend_ci(s, TrendModel::M1sigma, 10, 0.95, Rng(1)), InvalidInput);
    CHECK_THROWS_AS((void)trend_ci(s, TrendModel::M1mu, 10, 1.0, Rng(1)), InvalidInput);
}

TEST_CASE("regression-residual intervals") {
    StationSeries s = draw(40, 0.3, 0, 10);
    s.values[5] += 80;  // one gross outlier
    const BootSummary ls = gev_residual_ci(s, ResidualMethod::LS, 200, 0.95, Rng(6));
    const BootSummary ts = gev_residual_ci(s, ResidualMethod::TS, 200, 0.95, Rng(6));
    REQUIRE(ls.quantile_lo.has_value());
    REQUIRE(ts.quantile_lo.has_value());
    CHECK(sample_sd(ts.values) < sample_sd(ls.values));
    const BootSummary m2 = gev_residual_ci(draw(40, 0.3, 0, 10), ResidualMethod::M2, 50, 0.9, Rng(6));
    CHECK(m2.quantile_lo.has_value());

    StationSeries line{"line", {}, {}};
    for (int i = 1; i <= 20; ++i) {
        line.times.push_back(i);
        line.values.push_back(1.0 + 2.0 * i);
    }
    CHECK_THROWS_AS((void)gev_residual_ci(line, ResidualMethod::LS, 10, 0.95, Rng(1)),
                    DegenerateSample);
}
