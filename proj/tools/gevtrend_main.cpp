// Command-line front end: gevtrend <command> [data.csv] [options]

#include "gevtrend/errors.hpp"
#include "gevtrend/io.hpp"
#include "gevtrend/lr_tests.hpp"
#include "gevtrend/pipeline.hpp"
#include "gevtrend/report.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kUsageError = 1;
constexpr int kValidationError = 2;

const char* kCommands =
    "fit | test | calibrate | ci | return-level | gof | simulate | screen | synth";

struct RawArgs {
    std::string command;
    std::string data;
    std::string variant;
    std::string mode = "asymptotic";
    std::string model;
    std::string resample;
    std::size_t nsim = 0;
    std::size_t nreps = 1000;
    double alpha = 0.05;
    double level = 0.95;
    std::size_t k = 5;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::optional<double> per_year;
    std::size_t draws_per_year = 1;
    std::size_t target_size = 0;
    std::string table = "type1";
    std::string out;
};

gevtrend::PipelineOptions to_options(const RawArgs& a) {
    gevtrend::PipelineOptions o;
    if (!a.variant.empty()) o.variant = gevtrend::parse_variant(a.variant);
    o.mode = gevtrend::parse_test_mode(a.mode);
    if (!a.model.empty()) o.model = gevtrend::parse_any_model(a.model);
    if (!a.resample.empty()) o.resample = gevtrend::parse_resample_kind(a.resample);
    o.nsim = a.nsim;
    o.nreps = a.nreps;
    o.alpha = a.alpha;
    o.level = a.level;
    o.k = a.k;
    o.seed = a.seed;
    o.threads = a.threads;
    o.per_year = a.per_year;
    o.draws_per_year = a.draws_per_year;
    o.target_size = a.target_size;
    o.table = a.table;
    return o;
}

void write_output(const std::string& path, const gevtrend::AnalysisReport& report) {
    const std::filesystem::path p(path);
    std::ofstream out(p);
    if (!out) throw gevtrend::InvalidInput("cannot write '" + path + "'");
    if (p.extension() == ".json") {
        out << gevtrend::to_json(report);
    } else if (p.extension() == ".csv") {
        if (report.command == "simulate") gevtrend::write_cells_csv(out, report.cells);
        else gevtrend::write_stations_csv(out, report);
    } else {
        throw gevtrend::InvalidInput("--out must end in .json or .csv");
    }
}

int run(const RawArgs& a) {
    if (a.command == "synth") {
        const gevtrend::Dataset d = gevtrend::synthetic_dataset(a.seed);
        if (a.out.empty()) {
            gevtrend::write_dataset(std::cout, d);
        } else {
            std::ofstream out(a.out);
            if (!out) throw gevtrend::InvalidInput("cannot write '" + a.out + "'");
            gevtrend::write_dataset(out, d);
        }
        return 0;
    }

    const gevtrend::Command command = gevtrend::parse_command(a.command);
    const gevtrend::PipelineOptions options = to_options(a);
    gevtrend::Dataset data;
    if (command != gevtrend::Command::Simulate) {
        if (a.data.empty())
            throw gevtrend::InvalidInput("command '" + a.command + "' needs a data file");
        data = gevtrend::read_dataset(a.data);
    }
    const gevtrend::AnalysisReport report = gevtrend::run_pipeline(data, command, options);
    gevtrend::print_report(std::cout, report);
    if (!a.out.empty()) write_output(a.out, report);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trend detection in GEV block maxima"};
    RawArgs a;
    app.add_option("command", a.command, kCommands)->required();
    app.add_option("data", a.data, "CSV file with header station,time,value");
    app.add_option("--variant", a.variant, "lr1, lr2, lr3 or lr4");
    app.add_option("--mode", a.mode, "asymptotic or modified");
    app.add_option("--model", a.model, "m0, m1mu, m1sigma, m2, m3 (LS) or m4 (Theil-Sen)");
    app.add_option("--resample", a.resample, "permute, replace or fresh");
    app.add_option("--target-size", a.target_size, "bootstrap sample size (0 keeps the original)");
    app.add_option("--nsim", a.nsim, "null simulations (default 2000; 9999 for gof)");
    app.add_option("--nreps", a.nreps, "bootstrap or study replicates");
    app.add_option("--alpha", a.alpha, "significance level");
    app.add_option("--level", a.level, "confidence level of intervals");
    app.add_option("--k", a.k, "return period in years");
    app.add_option("--seed", a.seed, "master seed");
    app.add_option("--threads", a.threads, "worker threads (0 = all cores)");
    app.add_option("--per-year", a.per_year, "observations per year (default 12)");
    app.add_option("--draws-per-year", a.draws_per_year, "GEV draws per future year");
    app.add_option("--table", a.table, "simulate: type1 or power");
    app.add_option("--out", a.out, "write the report as .json or flattened .csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        return run(a);
    } catch (const gevtrend::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidationError;
    } catch (const gevtrend::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidationError;
    } catch (const gevtrend::InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidationError;
    }
}
