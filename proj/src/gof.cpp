#include "gevtrend/gof.hpp"

#include "gevtrend/errors.hpp"
#include "gevtrend/parallel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <vector>

namespace gevtrend {

namespace {

std::vector<double> sorted_probabilities(std::span<const double> u, const char* who) {
    if (u.empty()) throw InvalidInput(std::string(who) + ": empty sample");
    std::vector<double> s(u.begin(), u.end());
    for (const double v : s)
        if (!(v > 0.0 && v < 1.0))
            throw InvalidInput(std::string(who) + ": probabilities must lie strictly inside (0, 1)");
    std::sort(s.begin(), s.end());
    return s;
}

double statistic(GofMethod m, std::span<const double> u) {
    return m == GofMethod::AD ? ad_statistic(u) : cvm_statistic(u);
}

std::vector<double> clipped_cdf(std::span<const double> x, const GevParams& p) {
    std::vector<double> u(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        u[i] = std::clamp(gev_cdf(x[i], p), kGofClip, 1.0 - kGofClip);
    return u;
}

}  // namespace

std::string_view to_string(GofMethod m) noexcept { return m == GofMethod::AD ? "AD" : "CvM"; }

GofMethod parse_gof_method(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (s == "ad") return GofMethod::AD;
    if (s == "cvm") return GofMethod::CvM;
    throw InvalidInput("unknown goodness-of-fit method '" + std::string(name) + "'");
}

double ad_statistic(std::span<const double> u) {
    const std::vector<double> s = sorted_probabilities(u, "ad_statistic");
    const std::size_t n = s.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        sum += static_cast<double>(2 * i + 1) * (std::log(s[i]) + std::log1p(-s[n - 1 - i]));
    return -static_cast<double>(n) - sum / static_cast<double>(n);
}

double cvm_statistic(std::span<const double> u) {
    const std::vector<double> s = sorted_probabilities(u, "cvm_statistic");
    const double n = static_cast<double>(s.size());
    double sum = 1.0 / (12.0 * n);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double d = s[i] - (2.0 * static_cast<double>(i) + 1.0) / (2.0 * n);
        sum += d * d;
    }
    return sum;
}

GofResult gof_test(std::span<const double> x, const GevParams& p, GofMethod method,
                   std::size_t n_sim, const Rng& rng) {
    if (x.empty()) throw InvalidInput("gof_test: empty sample");
    if (n_sim == 0) throw InvalidInput("gof_test: n_sim must be positive");
    GofResult r;
    r.method = method;
    r.n_sim = n_sim;
    r.statistic = statistic(method, clipped_cdf(x, p));

    std::vector<char> exceeds(n_sim, 0);
    parallel_for(n_sim, [&](std::size_t i) {
        Rng sub = rng.split(i);
        const std::vector<double> sim = gev_sample(p, x.size(), sub);
        exceeds[i] = statistic(method, clipped_cdf(sim, p)) >= r.statistic;
    });
    const auto count = std::count(exceeds.begin(), exceeds.end(), char{1});
    r.p_value = (1.0 + static_cast<double>(count)) / (static_cast<double>(n_sim) + 1.0);
    return r;
}

}  // namespace gevtrend
