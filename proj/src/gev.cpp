#include "gevtrend/gev.hpp"

#include "gevtrend/errors.hpp"

#include <string>

namespace gevtrend {

namespace {

void check_params(const GevParams& p, const char* who) {
    if (!std::isfinite(p.mu) || !std::isfinite(p.sigma) || !std::isfinite(p.xi))
        throw InvalidInput(std::string(who) + ": non-finite GEV parameter");
    if (!(p.sigma > 0.0)) throw InvalidInput(std::string(who) + ": sigma must be positive");
}

void check_finite(double x, const char* who) {
    if (!std::isfinite(x)) throw InvalidInput(std::string(who) + ": non-finite argument");
}

bool gumbel(double xi) { return std::fabs(xi) < kXiSwitch; }

}  // namespace

NsGevPath NsGevPath::constant(const GevParams& p, std::size_t n) {
    return NsGevPath{std::vector<double>(n, p.mu), std::vector<double>(n, p.sigma), p.xi};
}

void NsGevPath::validate() const {
    if (mu_t.empty()) throw InvalidInput("NsGevPath: empty path");
    if (mu_t.size() != sigma_t.size()) throw InvalidInput("NsGevPath: mu_t/sigma_t length mismatch");
    if (!std::isfinite(xi)) throw InvalidInput("NsGevPath: non-finite xi");
    for (std::size_t i = 0; i < mu_t.size(); ++i) {
        if (!std::isfinite(mu_t[i]) || !(sigma_t[i] > 0.0) || !std::isfinite(sigma_t[i]))
            throw InvalidInput("NsGevPath: invalid location/scale at index " + std::to_string(i));
    }
}

double gev_cdf(double x, const GevParams& p) {
    check_finite(x, "gev_cdf");
    check_params(p, "gev_cdf");
    const double z = (x - p.mu) / p.sigma;
    if (gumbel(p.xi)) return std::exp(-std::exp(-z));
    const double xz = p.xi * z;
    if (!(xz > -1.0)) return p.xi > 0.0 ? 0.0 : 1.0;
    return std::exp(-std::exp(-std::log1p(xz) / p.xi));
}

double gev_log_pdf(double x, const GevParams& p) {
    check_finite(x, "gev_log_pdf");
    check_params(p, "gev_log_pdf");
    const double ld = detail::std_log_density((x - p.mu) / p.sigma, p.xi);
    return ld == kLogZero ? kLogZero : ld - std::log(p.sigma);
}

double gev_quantile(double q, const GevParams& p) {
    check_params(p, "gev_quantile");
    if (!(q > 0.0 && q < 1.0)) throw InvalidInput("gev_quantile: q must lie in (0, 1)");
    const double e = -std::log(q);  // standard exponential scale
    if (gumbel(p.xi)) return p.mu - p.sigma * std::log(e);
    return p.mu + p.sigma * std::expm1(-p.xi * std::log(e)) / p.xi;
}

std::vector<double> gev_sample(const GevParams& p, std::size_t n, Rng& rng) {
    check_params(p, "gev_sample");
    if (n == 0) throw InvalidInput("gev_sample: n must be at least 1");
    std::vector<double> out(n);
    for (auto& v : out) v = gev_quantile(rng.uniform(), p);
    return out;
}

std::vector<double> to_std_gumbel(std::span<const double> x, const NsGevPath& path) {
    path.validate();
    if (x.size() != path.size()) throw InvalidInput("to_std_gumbel: length mismatch");
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        check_finite(x[i], "to_std_gumbel");
        const double z = (x[i] - path.mu_t[i]) / path.sigma_t[i];
        if (gumbel(path.xi)) {
            y[i] = z;
            continue;
        }
        const double xz = path.xi * z;
        if (!(xz > -1.0))
            throw SupportViolation(i, "to_std_gumbel: observation " + std::to_string(i) +
                                          " outside the GEV support");
        y[i] = std::log1p(xz) / path.xi;
    }
    return y;
}

std::vector<double> from_std_gumbel(std::span<const double> y, const NsGevPath& path) {
    path.validate();
    if (y.size() != path.size()) throw InvalidInput("from_std_gumbel: length mismatch");
    std::vector<double> x(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        check_finite(y[i], "from_std_gumbel");
        const double z = gumbel(path.xi) ? y[i] : std::expm1(path.xi * y[i]) / path.xi;
        x[i] = path.mu_t[i] + path.sigma_t[i] * z;
    }
    return x;
}

double ns_log_likelihood(std::span<const double> x, const NsGevPath& path) {
    path.validate();
    if (x.size() != path.size()) throw InvalidInput("ns_log_likelihood: length mismatch");
    double ll = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        check_finite(x[i], "ns_log_likelihood");
        const double ld = detail::std_log_density((x[i] - path.mu_t[i]) / path.sigma_t[i], path.xi);
        if (ld == kLogZero) return kLogZero;
        ll += ld - std::log(path.sigma_t[i]);
    }
    return ll;
}

}  // namespace gevtrend
