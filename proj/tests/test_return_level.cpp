#include "doctest.h"

#include "gevtrend/errors.hpp"
#include "gevtrend/gev.hpp"
#include "gevtrend/return_level.hpp"

#include <cmath>
#include <vector>

using namespace gevtrend;

TEST_CASE("one-year level is the median") {
    CHECK(solve_return_level(0, 0, 1, 0, 1) == doctest::Approx(-std::log(std::log(2.0))).epsilon(1e-10));
    for (double sigma : {0.5, 1.0, 3.0, 10.0, 25.0}) {
        for (double xi : {-0.4, -0.2, 0.1, 0.3, 0.5}) {
            const double closed = 22 + sigma * (std::pow(std::log(2.0), -xi) - 1) / xi;
            CHECK(std::fabs(solve_return_level(22, 0, sigma, xi, 1) - closed) < 1e-8);
        }
    }
}

TEST_CASE("five-year Gumbel level") {
    CHECK(std::fabs(solve_return_level(0, 0, 1, 0, 5) - std::log(5 / std::log(2.0))) < 1e-8);
    CHECK(solve_return_level(0, 0, 1, 0, 5) == doctest::Approx(1.975950).epsilon(1e-6));
}

TEST_CASE("stationary k-year level equals one draw over k d observations") {
    const double y = solve_return_level(10, 0, 2, 0.2, 4, 3);
    CHECK(y == doctest::Approx(gev_quantile(std::pow(0.5, 1.0 / 12), {10, 2, 0.2})).epsilon(1e-9));
}

TEST_CASE("solution satisfies the product equation") {
    for (double mu1 : {-0.8, -0.1, 0.0, 0.3, 1.2}) {
        const double y = solve_return_level(20, mu1, 5, 0.15, 5, 2);
        CHECK(return_level_log_product(y, 20, mu1, 5, 0.15, 5, 2) ==
              doctest::Approx(std::log(0.5)).epsilon(1e-8));
    }
}

TEST_CASE("level grows with the trend and with the horizon") {
    CHECK(solve_return_level(20, 0.5, 5, 0, 5) > solve_return_level(20, 0, 5, 0, 5));
    CHECK(solve_return_level(20, 0, 5, 0, 10) > solve_return_level(20, 0, 5, 0, 5));
}

TEST_CASE("invalid arguments") {
    CHECK_THROWS_AS((void)solve_return_level(0, 0, 1, 0, 0), InvalidInput);
    CHECK_THROWS_AS((void)solve_return_level(0, 0, -1, 0, 5), InvalidInput);
    CHECK_THROWS_AS((void)solve_return_level(0, 0, 1, 0, 5, 0), InvalidInput);
}

TEST_CASE("bootstrap return level") {
    Rng rng(4);
    StationSeries s{"r", {}, {}};
    for (int i = 1; i <= 48; ++i) {
        s.times.push_back(i);
        s.values.push_back(gev_sample({22 + 0.05 * i, 8, 0.1}, 1, rng)[0]);
    }
    ReturnLevelOptions o;
    const ReturnLevelResult r = return_level_ci(s, 5, 200, 0.95, Rng(9), o);
    CHECK(r.k == 5);
    CHECK(r.n_reps == 200);
    CHECK(r.n_failures < 20);
    CHECK(r.ci_lo <= r.level);
    CHECK(r.level <= r.ci_hi);
    CHECK(r.ci_lo < r.analytic);
    CHECK(r.analytic < r.ci_hi);

    const TrendFit f = fit(s, TrendModel::M1mu);
    const double expected =
        solve_return_level(f.location_at(s.times.back()), f.mu1 * 12, f.sigma0, f.xi, 5);
    CHECK(r.analytic == doctest::Approx(expected).epsilon(1e-9));

    const ReturnLevelResult again = return_level_ci(s, 5, 200, 0.95, Rng(9), o);
    CHECK(again.level == r.level);
}
