#include "doctest.h"

#include "gevtrend/errors.hpp"
#include "gevtrend/sim_study.hpp"

#include <algorithm>
#include <cmath>

using namespace gevtrend;

namespace {

StudyConfig small() {
    StudyConfig c;
    c.xi_grid = {0.0};
    c.mu1_grid = {0.0, 0.5};
    c.size_grid = {20, 40};
    c.n_reps = 100;
    c.variants = {LrVariant::LR1, LrVariant::LR4};
    c.seed = 3;
    return c;
}

const StudyCell& find(const std::vector<StudyCell>& cells, double mu1, std::size_t n, LrVariant v,
                      bool modified = false) {
    const auto it = std::find_if(cells.begin(), cells.end(), [&](const StudyCell& c) {
        return c.mu1 == mu1 && c.n == n && c.variant == v && c.modified == modified;
    });
    REQUIRE(it != cells.end());
    return *it;
}

}  // namespace

TEST_CASE("config validation") {
    StudyConfig c = small();
    CHECK_NOTHROW(c.validate());
    c.size_grid = {5};
    CHECK_THROWS_AS(c.validate(), InvalidInput);
    c = small();
    c.n_reps = 50;
    CHECK_THROWS_AS(c.validate(), InvalidInput);
    c = small();
    c.variants.clear();
    CHECK_THROWS_AS(c.validate(), InvalidInput);
    CHECK_THROWS_AS((void)table_config("table9"), InvalidInput);
}

TEST_CASE("published grids") {
    const StudyConfig t1 = table_config("type1");
    CHECK(t1.mu1_grid == std::vector<double>{0.0});
    CHECK(t1.size_grid == std::vector<std::size_t>{20, 40, 80});
    CHECK(t1.xi_grid.size() == 5);
    const StudyConfig t2 = table_config("power");
    CHECK(t2.mu1_grid == std::vector<double>{-0.5, -0.1, 0.1, 0.5});
}

TEST_CASE("cells are ordered, deterministic and independent of grid order") {
    const StudyConfig c = small();
    const auto a = run_study(c);
    REQUIRE(a.size() == 8);
    CHECK(a.front().mu1 == 0.0);
    CHECK(a.front().n == 20);
    CHECK(a.front().variant == LrVariant::LR1);
    CHECK(a == run_study(c));

    StudyConfig alone = c;
    alone.mu1_grid = {0.5};
    alone.size_grid = {40};
    alone.variants = {LrVariant::LR4};
    const auto b = run_study(alone);
    REQUIRE(b.size() == 1);
    CHECK(b[0] == find(a, 0.5, 40, LrVariant::LR4));

    for (const StudyCell& cell : a) {
        CHECK(cell.n_reps == 100);
        const double used = static_cast<double>(cell.n_reps - cell.n_failures);
        CHECK(cell.mc_stderr ==
              doctest::Approx(std::sqrt(cell.rejection_rate * (1 - cell.rejection_rate) / used)));
    }
    CHECK(find(a, 0.5, 40, LrVariant::LR1).rejection_rate > 0.7);
    CHECK(find(a, 0.0, 40, LrVariant::LR1).rejection_rate < 0.15);
}

TEST_CASE("modified cells carry their critical value") {
    StudyConfig c = small();
    c.mu1_grid = {0.0};
    c.size_grid = {20};
    c.variants = {LrVariant::LR1};
    c.modified = true;
    c.nsim = 200;
    const auto cells = run_study(c);
    REQUIRE(cells.size() == 2);
    CHECK_FALSE(cells[0].modified);
    CHECK(cells[1].modified);
    REQUIRE(cells[1].critical_value.has_value());
    CHECK(*cells[1].critical_value > 3.0);
}

TEST_CASE("minimal sample size") {
    std::vector<StudyCell> cells;
    auto add = [&](double mu1, std::size_t n, double rate) {
        StudyCell c;
        c.mu1 = mu1;
        c.n = n;
        c.rejection_rate = rate;
        c.n_reps = 1000;
        c.mc_stderr = std::sqrt(rate * (1 - rate) / 1000);
        cells.push_back(c);
    };
    add(0.0, 20, 0.11);
    add(0.0, 40, 0.06);
    add(0.0, 80, 0.05);
    add(0.5, 20, 0.85);
    add(0.5, 40, 0.95);
    add(0.5, 80, 1.0);
    add(0.1, 20, 0.1);
    add(0.1, 40, 0.2);
    add(0.1, 80, 0.5);
    const auto m = minimal_sample_size(cells, 0.8, 0.05);
    const auto strong = std::find_if(m.begin(), m.end(), [](const MinimalSize& x) { return x.mu1 == 0.5; });
    const auto weak = std::find_if(m.begin(), m.end(), [](const MinimalSize& x) { return x.mu1 == 0.1; });
    REQUIRE(strong != m.end());
    REQUIRE(weak != m.end());
    // n = 20 has the power but an inflated null rate.
    CHECK(strong->n == std::size_t{40});
    CHECK_FALSE(weak->n.has_value());
    CHECK(std::none_of(m.begin(), m.end(), [](const MinimalSize& x) { return x.mu1 == 0.0 && x.n; }));
}
