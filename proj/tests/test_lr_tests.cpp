#include "doctest.h"

#include "gevtrend/errors.hpp"
#include "gevtrend/gev.hpp"
#include "gevtrend/lr_tests.hpp"
#include "gevtrend/parallel.hpp"
#include "gevtrend/stats.hpp"

#include <cmath>
#include <numeric>
#include <vector>

using namespace gevtrend;

namespace {

StationSeries draw(std::size_t n, double mu1, double xi, Rng rng) {
    std::vector<double> t(n);
    std::iota(t.begin(), t.end(), 1.0);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rng sub = rng.split(i);
        x[i] = gev_sample({22 + mu1 * t[i], 10, xi}, 1, sub)[0];
    }
    return {"s", t, x};
}

double rejection_rate(std::size_t reps, std::size_t n, double mu1, double xi, LrVariant v,
                      std::uint64_t seed) {
    std::vector<Decision> d(reps);
    const Rng root(seed);
    parallel_for(reps, [&](std::size_t r) { d[r] = decide(draw(n, mu1, xi, root.split(r)), v, 0.05); });
    double rej = 0, used = 0;
    for (Decision x : d) {
        if (x == Decision::Failed) continue;
        ++used;
        rej += x == Decision::Reject;
    }
    return rej / used;
}

}  // namespace

TEST_CASE("names round-trip") {
    for (LrVariant v : kAllVariants) CHECK(parse_variant(to_string(v)) == v);
    CHECK(parse_variant("LR3") == LrVariant::LR3);
    CHECK(parse_test_mode("modified") == TestMode::Modified);
    CHECK_THROWS_AS((void)parse_variant("lr5"), InvalidInput);
    CHECK_THROWS_AS((void)parse_test_mode("exact"), InvalidInput);
}

TEST_CASE("no trend signal gives a statistic near zero") {
    StationSeries s{"flat", {}, {}};
    for (int i = 1; i <= 40; ++i) {
        s.times.push_back(i);
        // Symmetric in time, so the best linear slope is zero.
        const int k = i <= 20 ? i : 41 - i;
        s.values.push_back(22.0 + 0.01 * ((k * 7919) % 13 - 6));
    }
    const LrResult r = lr_statistic(s, LrVariant::LR1);
    CHECK(r.statistic < 0.01);
    CHECK(r.p_asymptotic > 0.9);
}

TEST_CASE("statistics match their definitions") {
    const StationSeries s = draw(50, 0.3, 0.1, Rng(4));
    const LrResult r1 = lr_statistic(s, LrVariant::LR1);
    const auto& alt = std::get<TrendFit>(r1.alternative);
    CHECK(r1.null_fit.model == TrendModel::M0);
    CHECK(alt.model == TrendModel::M1mu);
    CHECK(r1.statistic == doctest::Approx(2 * (alt.max_loglik - r1.null_fit.max_loglik)));
    CHECK(r1.p_asymptotic == doctest::Approx(chi2_sf1(r1.statistic)));
    CHECK(r1.trend() == alt.mu1);
    CHECK(r1.df == 1);

    const LrResult r2 = lr_statistic(s, LrVariant::LR2);
    CHECK(r2.null_fit.model == TrendModel::M1sigma);
    CHECK(std::get<TrendFit>(r2.alternative).model == TrendModel::M2);
    CHECK(r2.statistic >= 0.0);

    for (LrVariant v : {LrVariant::LR3, LrVariant::LR4}) {
        const LrResult r = lr_statistic(s, v);
        const auto& rm = std::get<ResidualModel>(r.alternative);
        CHECK(r.statistic == doctest::Approx(2 * (rm.loglik - r.null_fit.max_loglik)));
        CHECK(r.trend() == rm.line.slope);
        CHECK(rm.line.method == (v == LrVariant::LR3 ? LineMethod::LS : LineMethod::TS));
    }
}

TEST_CASE("residual model as a trend path") {
    const StationSeries s = draw(40, 0.5, 0.0, Rng(9));
    const ResidualModel m = fit_residual_model(s, LineMethod::TS);
    const TrendFit f = m.as_trend_fit();
    CHECK(f.mu1 == m.line.slope);
    CHECK(f.mu0 == doctest::Approx(m.line.intercept + m.residual_fit.mu0));
    CHECK(ns_log_likelihood(s.values, fitted_path(f, s.times)) == doctest::Approx(m.loglik));
}

TEST_CASE("exact line input has no residual spread") {
    StationSeries s{"line", {}, {}};
    for (int i = 1; i <= 20; ++i) {
        s.times.push_back(i);
        s.values.push_back(3.0 + 0.5 * i);
    }
    CHECK_THROWS_AS((void)fit_residual_model(s, LineMethod::LS), DegenerateSample);
}

TEST_CASE("modified p-value") {
    std::vector<double> sim(999);
    std::iota(sim.begin(), sim.end(), 1.0);
    CHECK(modified_p_value(5000, sim) == doctest::Approx(1.0 / 1000));
    CHECK(modified_p_value(-1, sim) == 1.0);
    CHECK(modified_p_value(500, sim) == doctest::Approx(0.501));
    CHECK_THROWS_AS((void)modified_p_value(1, std::vector<double>{}), InvalidInput);
}

TEST_CASE("lower-bound decisions") {
    LrResult partial;
    partial.variant = LrVariant::LR1;
    partial.statistic = 9.0;
    partial.null_fit.converged = true;
    partial.null_fit.max_loglik = -100;
    TrendFit alt;
    alt.model = TrendModel::M1mu;
    alt.max_loglik = -95.5;
    partial.alternative = alt;
    const TestFailure failure("alt did not converge", partial);
    REQUIRE(lower_bound_statistic(failure).has_value());
    CHECK(*lower_bound_statistic(failure) == 9.0);

    CHECK(decide({9.0, true}, 0.05) == Decision::Reject);
    CHECK(decide({1.0, true}, 0.05) == Decision::Failed);
    CHECK(decide({1.0, false}, 0.05) == Decision::Retain);
    CHECK(decide({std::nullopt, false}, 0.05) == Decision::Failed);
    CHECK(decide({5.0, false}, 0.05, 6.0) == Decision::Retain);
    CHECK(decide({7.0, true}, 0.05, 6.0) == Decision::Reject);

    LrResult no_null = partial;
    no_null.null_fit.converged = false;
    CHECK_FALSE(lower_bound_statistic(TestFailure("x", no_null)).has_value());
    LrResult regression = partial;
    regression.variant = LrVariant::LR3;
    CHECK_FALSE(lower_bound_statistic(TestFailure("x", regression)).has_value());
}

TEST_CASE("critical value at alpha 0.5 is the median of the null statistics") {
    const TrendFit null = stationary_fit({22, 10, 0.0});
    std::vector<double> t(30);
    std::iota(t.begin(), t.end(), 1.0);
    const Rng rng(3);
    const NullDistribution d = simulate_null_distribution(null, t, LrVariant::LR1, 201, rng);
    CHECK(std::is_sorted(d.statistics.begin(), d.statistics.end()));
    CHECK(d.statistics.size() + d.n_failures == 201);
    const double c = simulate_critical_value(null, 30, LrVariant::LR1, 201, 0.5, rng);
    CHECK(c == doctest::Approx(median(d.statistics)));
    CHECK_THROWS_AS((void)simulate_null_distribution(null, t, LrVariant::LR1, 0, rng), InvalidInput);
    TrendFit trended = null;
    trended.model = TrendModel::M1mu;
    CHECK_THROWS_AS((void)simulate_null_distribution(trended, t, LrVariant::LR1, 10, rng),
                    InvalidInput);
}

TEST_CASE("modified test fills its fields and is reproducible") {
    const StationSeries s = draw(40, 0.2, 0.0, Rng(11));
    const LrResult a = run_test(s, LrVariant::LR1, TestMode::Modified, 199, 0.05, Rng(2));
    const LrResult b = run_test(s, LrVariant::LR1, TestMode::Modified, 199, 0.05, Rng(2));
    REQUIRE(a.critical_value.has_value());
    REQUIRE(a.p_modified.has_value());
    CHECK(a.n_sim == 199);
    CHECK(*a.critical_value == *b.critical_value);
    CHECK(*a.p_modified == *b.p_modified);
    CHECK(*a.p_modified >= 1.0 / 200);
    CHECK(rejects_modified(a) == (a.statistic > *a.critical_value));

    const LrResult asym = run_test(s, LrVariant::LR1, TestMode::Asymptotic, 199, 0.05, Rng(2));
    CHECK_FALSE(asym.critical_value.has_value());
    CHECK(rejects_asymptotic(asym, 0.05) == (asym.p_asymptotic < 0.05));
}

TEST_CASE("LR1 type-1 error near the nominal level at n = 40") {
    const double r = rejection_rate(400, 40, 0.0, 0.0, LrVariant::LR1, 77);
    CHECK(r > 0.03);
    CHECK(r < 0.11);
}

TEST_CASE("LR1 power against a strong trend") {
    const double r = rejection_rate(200, 40, 0.5, 0.0, LrVariant::LR1, 78);
    CHECK(r > 0.8);
}
