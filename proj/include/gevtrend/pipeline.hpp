#pragma once

#include "gevtrend/bootstrap.hpp"
#include "gevtrend/gof.hpp"
#include "gevtrend/io.hpp"
#include "gevtrend/lr_tests.hpp"
#include "gevtrend/report.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gevtrend {

/// Commands understood by run_pipeline.
enum class Command { Fit, Test, Calibrate, Ci, ReturnLevel, Gof, Simulate, Screen };

[[nodiscard]] std::string_view to_string(Command c) noexcept;
/// Throws InvalidInput for unknown names.
[[nodiscard]] Command parse_command(std::string_view name);

/// Model names accepted by --model: the four GEV trend models plus M3 (LS) and M4 (TS).
enum class AnyModel { M0, M1mu, M1sigma, M2, M3, M4 };

[[nodiscard]] std::string_view to_string(AnyModel m) noexcept;
[[nodiscard]] AnyModel parse_any_model(std::string_view name);

struct PipelineOptions {
    std::optional<LrVariant> variant;  ///< test: all four when absent; calibrate/screen: LR1
    TestMode mode = TestMode::Asymptotic;
    std::optional<AnyModel> model;
    std::size_t nsim = 0;  ///< 0 selects the command default: 9999 for gof, 2000 otherwise
    std::size_t nreps = 1000;
    double alpha = 0.05;
    double level = 0.95;
    std::size_t k = 5;
    std::uint64_t seed = 1;
    std::optional<double> per_year;  ///< overrides Dataset::observations_per_year
    std::size_t draws_per_year = 1;
    std::string table = "type1";
    std::optional<ResampleMode::Kind> resample;  ///< command-specific default when absent
    std::size_t target_size = 0;
    std::size_t min_n = 20;       ///< screen: shortest series that can be flagged
    double target_power = 0.8;    ///< screen: bootstrap power needed to flag
    unsigned threads = 0;
};

/**
 * Run one command over every station of `data` (simulate ignores the data).
 * Stations that cannot be processed are kept in the report with a skip reason.
 * Station streams are Rng(seed) split by a hash of the station identifier.
 */
[[nodiscard]] AnalysisReport run_pipeline(const Dataset& data, Command command,
                                          const PipelineOptions& options);

/// Options as reported: every effective value, stringified.
[[nodiscard]] std::map<std::string, std::string> describe(const PipelineOptions& options,
                                                          Command command, const Dataset& data);

/// 64-bit FNV-1a hash, used to key station streams.
[[nodiscard]] std::uint64_t fnv1a(std::string_view text) noexcept;

/// Planted-trend scenario for end-to-end checks: three trended stations among ten iid ones.
struct SyntheticStation {
    std::string id;
    std::size_t n;
    double mu1;
    double xi;
};

[[nodiscard]] const std::vector<SyntheticStation>& synthetic_layout();

/// Draw the synthetic layout from GEV(22 + mu1 t, 10, xi), t = 1..n.
[[nodiscard]] Dataset synthetic_dataset(std::uint64_t seed);

}  // namespace gevtrend
