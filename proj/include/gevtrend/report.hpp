#pragma once

#include "gevtrend/sim_study.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gevtrend {

struct FitRecord {
    std::string model;
    double mu0 = 0.0, mu1 = 0.0, sigma0 = 0.0, sigma1 = 0.0, xi = 0.0;
    double max_loglik = 0.0;
    bool converged = false;
    bool xi_warning = false;
    bool degenerate = false;

    friend bool operator==(const FitRecord&, const FitRecord&) = default;
};

struct TestRecord {
    std::string variant;
    std::string mode;
    double statistic = 0.0;
    double trend = 0.0;
    double p_asymptotic = 1.0;
    std::optional<double> p_modified;
    std::optional<double> critical_value;
    std::size_t n_sim = 0;
    std::size_t n_sim_failures = 0;
    std::string significance;  ///< "significant", "potential" or empty
    std::optional<std::string> error;

    friend bool operator==(const TestRecord&, const TestRecord&) = default;
};

struct BootRecord {
    std::string kind;  ///< "type1" or "power"
    std::string variant;
    std::string mode;
    std::string resample;
    std::size_t target_size = 0;
    std::size_t n_reps = 0;
    std::size_t n_failures = 0;
    std::optional<double> rejection_rate;
    std::optional<double> critical_value;

    friend bool operator==(const BootRecord&, const BootRecord&) = default;
};

struct IntervalRecord {
    std::string model;
    double estimate = 0.0;
    double level = 0.0;
    std::optional<double> lo;
    std::optional<double> hi;
    std::size_t n_reps = 0;
    std::size_t n_failures = 0;
    std::optional<std::string> error;

    friend bool operator==(const IntervalRecord&, const IntervalRecord&) = default;
};

struct ReturnLevelRecord {
    std::size_t k = 0;
    double analytic = 0.0;
    double level = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double ci_level = 0.0;
    std::size_t n_reps = 0;
    std::size_t n_failures = 0;

    friend bool operator==(const ReturnLevelRecord&, const ReturnLevelRecord&) = default;
};

struct GofRecord {
    std::string method;
    std::string model;
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t n_sim = 0;

    friend bool operator==(const GofRecord&, const GofRecord&) = default;
};

struct StationRecord {
    std::string station_id;
    std::size_t n = 0;
    std::optional<std::string> skip_reason;
    std::vector<FitRecord> fits;
    std::vector<TestRecord> tests;
    std::vector<BootRecord> bootstrap;
    std::vector<IntervalRecord> intervals;
    std::optional<ReturnLevelRecord> return_level;
    std::vector<GofRecord> gof;
    std::optional<bool> flagged;  ///< screen command verdict

    friend bool operator==(const StationRecord&, const StationRecord&) = default;
};

struct AnalysisReport {
    std::string command;
    std::map<std::string, std::string> options;  ///< effective option values
    std::uint64_t seed = 0;
    std::string version;
    std::vector<StationRecord> stations;
    std::vector<StudyCell> cells;

    friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

/// JSON text of the report; non-finite numbers are written as "nan", "inf" or "-inf".
[[nodiscard]] std::string to_json(const AnalysisReport& report, int indent = 2);
[[nodiscard]] AnalysisReport report_from_json(const std::string& text);

/// One row per study cell.
void write_cells_csv(std::ostream& out, const std::vector<StudyCell>& cells);
/// Long format: station,n,section,name,field,value.
void write_stations_csv(std::ostream& out, const AnalysisReport& report);
/// Plain-text tables for the terminal.
void print_report(std::ostream& out, const AnalysisReport& report);

}  // namespace gevtrend
