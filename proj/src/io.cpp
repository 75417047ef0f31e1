#include "gevtrend/io.hpp"

#include "gevtrend/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace gevtrend {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

double parse_number(std::string_view text, std::size_t line, const char* what) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v))
        throw ParseError(line, std::string("invalid ") + what + " '" + std::string(text) + "'");
    return v;
}

}  // namespace

const StationSeries* Dataset::find(const std::string& station_id) const {
    for (const auto& s : stations)
        if (s.station_id == station_id) return &s;
    return nullptr;
}

Dataset parse_dataset(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::vector<StationSeries> stations;
    std::map<std::string, std::size_t> index;

    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
        if (trim(view).empty()) continue;
        const auto fields = split_fields(view);
        if (!have_header) {
            if (fields.size() != 3 || fields[0] != "station" || fields[1] != "time" ||
                fields[2] != "value")
                throw ParseError(line_no, "expected header 'station,time,value'");
            have_header = true;
            continue;
        }
        if (fields.size() != 3)
            throw ParseError(line_no, "expected 3 fields, found " + std::to_string(fields.size()));
        if (fields[0].empty()) throw ParseError(line_no, "empty station identifier");
        const double t = parse_number(fields[1], line_no, "time");
        if (fields[2].empty()) continue;  // missing maximum
        const double v = parse_number(fields[2], line_no, "value");

        const std::string id(fields[0]);
        auto [it, inserted] = index.try_emplace(id, stations.size());
        if (inserted) stations.push_back(StationSeries{id, {}, {}});
        stations[it->second].times.push_back(t);
        stations[it->second].values.push_back(v);
    }
    if (!have_header) throw ParseError(line_no == 0 ? 1 : line_no, "missing header 'station,time,value'");

    Dataset data;
    for (auto& s : stations) {
        std::vector<std::size_t> order(s.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return s.times[a] < s.times[b]; });
        StationSeries sorted{s.station_id, {}, {}};
        for (const std::size_t i : order) {
            if (!sorted.times.empty() && sorted.times.back() == s.times[i]) {
                std::ostringstream msg;
                msg << "station '" << s.station_id << "': duplicate time " << s.times[i];
                throw ValidationError(msg.str());
            }
            sorted.times.push_back(s.times[i]);
            sorted.values.push_back(s.values[i]);
        }
        data.stations.push_back(std::move(sorted));
    }
    return data;
}

Dataset read_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path.string() + "'");
    return parse_dataset(in);
}

void write_dataset(std::ostream& out, const Dataset& data) {
    out << "station,time,value\n";
    out << std::setprecision(17);
    for (const auto& s : data.stations)
        for (std::size_t i = 0; i < s.size(); ++i)
            out << s.station_id << ',' << s.times[i] << ',' << s.values[i] << '\n';
}

}  // namespace gevtrend
