#include "gevtrend/regression.hpp"

#include "gevtrend/errors.hpp"
#include "gevtrend/stats.hpp"

#include <cmath>

namespace gevtrend {

namespace {

void check_inputs(std::span<const double> times, std::span<const double> values, const char* who) {
    if (times.size() != values.size())
        throw InvalidInput(std::string(who) + ": times/values length mismatch");
    if (times.size() < 2) throw InvalidInput(std::string(who) + ": need at least two points");
}

}  // namespace

std::string_view to_string(LineMethod m) noexcept { return m == LineMethod::LS ? "LS" : "TS"; }

LineFit ols_fit(std::span<const double> times, std::span<const double> values) {
    check_inputs(times, values, "ols_fit");
    const double tm = mean(times);
    const double ym = mean(values);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        sxx += (times[i] - tm) * (times[i] - tm);
        sxy += (times[i] - tm) * (values[i] - ym);
    }
    if (!(sxx > 0.0)) throw DegenerateDesign("ols_fit: all times are equal");
    const double slope = sxy / sxx;
    return {ym - slope * tm, slope, LineMethod::LS};
}

LineFit theil_sen_fit(std::span<const double> times, std::span<const double> values) {
    check_inputs(times, values, "theil_sen_fit");
    const std::size_t n = times.size();
    std::vector<double> slopes;
    slopes.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && !(times[i] > times[i - 1]))
            throw DegenerateDesign("theil_sen_fit: times must be strictly increasing");
        for (std::size_t j = i + 1; j < n; ++j)
            slopes.push_back((values[j] - values[i]) / (times[j] - times[i]));
    }
    const double slope = median(std::move(slopes));
    std::vector<double> offsets(n);
    for (std::size_t i = 0; i < n; ++i) offsets[i] = values[i] - slope * times[i];
    return {median(std::move(offsets)), slope, LineMethod::TS};
}

LineFit line_fit(LineMethod method, std::span<const double> times, std::span<const double> values) {
    return method == LineMethod::LS ? ols_fit(times, values) : theil_sen_fit(times, values);
}

std::vector<double> residuals(const LineFit& fit, std::span<const double> times,
                              std::span<const double> values) {
    if (times.size() != values.size()) throw InvalidInput("residuals: length mismatch");
    std::vector<double> r(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) r[i] = values[i] - fit.intercept - fit.slope * times[i];
    return r;
}

}  // namespace gevtrend
