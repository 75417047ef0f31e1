#include "doctest.h"

#include "gevtrend/errors.hpp"
#include "gevtrend/optimize.hpp"
#include "gevtrend/parallel.hpp"
#include "gevtrend/random.hpp"
#include "gevtrend/stats.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <vector>

using namespace gevtrend;

TEST_CASE("rng streams") {
    Rng a(1);
    const Rng child = a.split(3);
    Rng c1 = child, c2 = a.split(3);
    CHECK(c1.next_u64() == c2.next_u64());
    // Splitting leaves the parent untouched.
    Rng fresh(1);
    CHECK(a.next_u64() == fresh.next_u64());
    CHECK(a.split(1).key() != a.split(2).key());
    CHECK(a.split({1, 2}).key() == a.split(1).split(2).key());

    Rng r(5);
    for (int i = 0; i < 1000; ++i) {
        const double u = r.uniform();
        CHECK((u > 0.0 && u < 1.0));
        CHECK(r.below(7) < 7);
    }
    CHECK(key_of(0.5) != key_of(-0.5));
}

TEST_CASE("shuffle is a permutation") {
    Rng r(2);
    std::vector<int> v{1, 2, 3, 4, 5, 6, 7, 8};
    r.shuffle(std::span<int>(v));
    CHECK(std::multiset<int>(v.begin(), v.end()) == std::multiset<int>{1, 2, 3, 4, 5, 6, 7, 8});
}

TEST_CASE("descriptive statistics") {
    const std::vector<double> x{4, 1, 3, 2};
    CHECK(mean(x) == 2.5);
    CHECK(sample_sd(x) == doctest::Approx(std::sqrt(5.0 / 3.0)));
    CHECK(median(x) == 2.5);
    const std::vector<double> s{1, 2, 3, 4};
    CHECK(empirical_quantile(s, 0.5) == 2.5);
    CHECK(empirical_quantile(s, 0.0) == 1.0);
    CHECK(empirical_quantile(s, 1.0) == 4.0);
    CHECK(empirical_quantile(s, 0.25) == doctest::Approx(1.75));
}

TEST_CASE("chi-square(1) tail") {
    CHECK(chi2_sf1(0.0) == 1.0);
    CHECK(chi2_sf1(3.841459) == doctest::Approx(0.05).epsilon(1e-4));
    CHECK(chi2_sf1(6.634897) == doctest::Approx(0.01).epsilon(1e-4));
    CHECK(chi2_cdf1(3.841459) + chi2_sf1(3.841459) == doctest::Approx(1.0));
    CHECK_THROWS_AS((void)chi2_sf1(-0.1), InvalidInput);
}

TEST_CASE("nelder-mead on a quadratic and Rosenbrock") {
    const Objective quad = [](std::span<const double> x) {
        return (x[0] - 1) * (x[0] - 1) + 3 * (x[1] + 2) * (x[1] + 2);
    };
    const std::vector<double> x0{0, 0}, steps{0.5, 0.5};
    auto r = nelder_mead(quad, x0, steps);
    CHECK(r.converged);
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(r.x[1] == doctest::Approx(-2.0).epsilon(1e-3));

    const Objective rosen = [](std::span<const double> x) {
        return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
    };
    const std::vector<double> y0{-1.2, 1};
    r = nelder_mead(rosen, y0, steps);
    CHECK(r.value < 1e-6);
}

TEST_CASE("nelder-mead treats +inf as infeasible") {
    const Objective f = [](std::span<const double> x) {
        if (x[0] <= 0) return std::numeric_limits<double>::infinity();
        return x[0] - std::log(x[0]);
    };
    const std::vector<double> x0{3}, steps{1};
    const auto r = nelder_mead(f, x0, steps);
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("parallel_for covers every index and rethrows") {
    set_thread_count(4);
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);

    std::atomic<int> inner{0};
    parallel_for(8, [&](std::size_t) { parallel_for(8, [&](std::size_t) { ++inner; }); });
    CHECK(inner == 64);

    CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                        if (i == 7) throw std::runtime_error("boom");
                    }),
                    std::runtime_error);
    set_thread_count(0);
}
