#pragma once

#include "gevtrend/model_fit.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace gevtrend {

struct Dataset {
    std::vector<StationSeries> stations;
    double observations_per_year = 12.0;

    [[nodiscard]] const StationSeries* find(const std::string& station_id) const;
};

/**
 * Parse CSV with header `station,time,value`. Rows are grouped by station in order of first
 * appearance and sorted by time; rows with an empty value are skipped.
 *
 * Throws ParseError (with the line number) for malformed rows and ValidationError for a
 * repeated (station, time) pair.
 */
[[nodiscard]] Dataset parse_dataset(std::istream& in);
[[nodiscard]] Dataset read_dataset(const std::filesystem::path& path);

void write_dataset(std::ostream& out, const Dataset& data);

}  // namespace gevtrend
