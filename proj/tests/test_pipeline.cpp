#include "doctest.h"

#include "gevtrend/errors.hpp"
#include "gevtrend/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace gevtrend;

namespace {

Dataset small_dataset() {
    Dataset full = synthetic_dataset(5);
    Dataset d;
    for (const auto& s : full.stations)
        if (s.station_id == "S02" || s.station_id == "S05" || s.station_id == "S13")
            d.stations.push_back(s);
    return d;
}

#ifdef GEVTREND_CLI
int run_cli(const std::string& args, std::string* out = nullptr) {
    const auto tmp = std::filesystem::temp_directory_path() / "gevtrend_cli_out.txt";
    const std::string cmd = std::string(GEVTREND_CLI) + " " + args + " > " + tmp.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    if (out) {
        std::ifstream in(tmp);
        std::ostringstream ss;
        ss << in.rdbuf();
        *out = ss.str();
    }
    return WEXITSTATUS(status);
}
#endif

}  // namespace

TEST_CASE("command and model names") {
    for (Command c : {Command::Fit, Command::Test, Command::Calibrate, Command::Ci,
                      Command::ReturnLevel, Command::Gof, Command::Simulate, Command::Screen})
        CHECK(parse_command(to_string(c)) == c);
    CHECK(parse_command("return-level") == Command::ReturnLevel);
    CHECK_THROWS_AS((void)parse_command("plot"), InvalidInput);
    CHECK(parse_any_model("m4") == AnyModel::M4);
    CHECK_THROWS_AS((void)parse_any_model("m9"), InvalidInput);
}

TEST_CASE("synthetic layout") {
    const auto& layout = synthetic_layout();
    CHECK(layout.size() == 13);
    const auto planted = std::count_if(layout.begin(), layout.end(),
                                       [](const SyntheticStation& s) { return s.mu1 != 0.0; });
    CHECK(planted == 3);
    for (const auto& s : layout)
        if (s.mu1 != 0.0) {
            CHECK(std::abs(s.mu1) >= 0.35);
            CHECK(s.n >= 40);
        }
    const Dataset a = synthetic_dataset(2), b = synthetic_dataset(2);
    CHECK(a.stations[0].values == b.stations[0].values);
    CHECK(a.stations[0].values != synthetic_dataset(3).stations[0].values);
    CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
}

TEST_CASE("fit reports all nested models") {
    const AnalysisReport r = run_pipeline(small_dataset(), Command::Fit, {});
    REQUIRE(r.stations.size() == 3);
    CHECK(r.command == "fit");
    for (const auto& s : r.stations) {
        CHECK_FALSE(s.skip_reason.has_value());
        CHECK(s.fits.size() == 4);
    }
    PipelineOptions o;
    o.model = AnyModel::M4;
    const AnalysisReport m4 = run_pipeline(small_dataset(), Command::Fit, o);
    CHECK(m4.stations[0].fits.size() == 1);
}

TEST_CASE("test command labels significance and is reproducible") {
    PipelineOptions o;
    o.variant = LrVariant::LR1;
    o.mode = TestMode::Modified;
    o.nsim = 199;
    o.seed = 7;
    const Dataset d = small_dataset();
    const AnalysisReport a = run_pipeline(d, Command::Test, o);
    const AnalysisReport b = run_pipeline(d, Command::Test, o);
    CHECK(to_json(a) == to_json(b));
    const auto& s02 = a.stations[0];
    REQUIRE(s02.tests.size() == 1);
    CHECK(s02.tests[0].critical_value.has_value());
    CHECK(s02.tests[0].p_modified.has_value());
    CHECK(s02.tests[0].significance == "significant");
    CHECK(a.options.at("seed") == "7");

    PipelineOptions all;
    const AnalysisReport four = run_pipeline(d, Command::Test, all);
    CHECK(four.stations[1].tests.size() == 4);
}

TEST_CASE("option validation") {
    PipelineOptions o;
    o.alpha = 1.5;
    CHECK_THROWS_AS((void)run_pipeline(small_dataset(), Command::Test, o), InvalidInput);
    o = {};
    o.nreps = 0;
    CHECK_THROWS_AS((void)run_pipeline(small_dataset(), Command::Test, o), InvalidInput);
}

TEST_CASE("screen skips short series") {
    PipelineOptions o;
    o.nsim = 99;
    o.nreps = 50;
    const AnalysisReport r = run_pipeline(small_dataset(), Command::Screen, o);
    REQUIRE(r.stations.size() == 3);
    CHECK(r.stations[2].skip_reason.has_value());
    CHECK(r.stations[2].flagged == false);
}

TEST_CASE("ci, return-level and gof commands") {
    Dataset d;
    d.stations.push_back(small_dataset().stations[0]);
    PipelineOptions o;
    o.nreps = 60;
    o.nsim = 99;
    const AnalysisReport ci = run_pipeline(d, Command::Ci, o);
    CHECK(ci.stations[0].intervals.size() == 4);
    const AnalysisReport rl = run_pipeline(d, Command::ReturnLevel, o);
    REQUIRE(rl.stations[0].return_level.has_value());
    CHECK(rl.stations[0].return_level->k == 5);
    const AnalysisReport g = run_pipeline(d, Command::Gof, o);
    CHECK(g.stations[0].gof.size() == 2);
    const AnalysisReport g_default = run_pipeline(d, Command::Gof, {});
    CHECK(g_default.stations[0].gof[0].n_sim == 9999);
    CHECK(run_pipeline(d, Command::Fit, {}).options.at("nsim") == "2000");
}

#ifdef GEVTREND_CLI
TEST_CASE("command-line front end") {
    const auto dir = std::filesystem::temp_directory_path();
    const std::string csv = (dir / "gevtrend_cli_data.csv").string();
    const std::string json1 = (dir / "gevtrend_cli_1.json").string();
    const std::string json2 = (dir / "gevtrend_cli_2.json").string();
    CHECK(run_cli("synth --seed 4 --out " + csv) == 0);
    REQUIRE(std::filesystem::exists(csv));

    std::string text;
    CHECK(run_cli("test " + csv + " --variant lr1 --seed 3 --out " + json1, &text) == 0);
    CHECK(text.find("S02") != std::string::npos);
    CHECK(run_cli("test " + csv + " --variant lr1 --seed 3 --out " + json2) == 0);
    std::ifstream a(json1), b(json2);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(report_from_json(sa.str()).stations.size() == 13);

    CHECK(run_cli("frobnicate " + csv) == 1);
    CHECK(run_cli("test " + csv + " --bogus-flag 3") == 1);
    CHECK(run_cli("test " + csv + " --variant lr7") == 1);
    CHECK(run_cli("test /nonexistent.csv") == 2);
    const std::string broken = (dir / "gevtrend_cli_broken.csv").string();
    std::ofstream(broken) << "station,time,value\nA,1,2\nA,x,3\n";
    CHECK(run_cli("fit " + broken, &text) == 2);
    CHECK(text.find("line 3") != std::string::npos);
    CHECK(run_cli("--help") == 0);
}
#endif
