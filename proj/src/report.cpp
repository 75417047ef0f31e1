#include "gevtrend/report.hpp"

#include "gevtrend/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace gevtrend {

namespace {

using nlohmann::json;

json num(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

double dbl(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    throw InvalidInput("report: expected a number, found " + j.dump());
}

json opt(const std::optional<double>& v) { return v ? num(*v) : json(nullptr); }
json opt(const std::optional<std::string>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> opt_dbl(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return dbl(j.at(key));
}

std::optional<std::string> opt_str(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<std::string>();
}

json encode(const FitRecord& f) {
    return {{"model", f.model},         {"mu0", num(f.mu0)},
            {"mu1", num(f.mu1)},        {"sigma0", num(f.sigma0)},
            {"sigma1", num(f.sigma1)},  {"xi", num(f.xi)},
            {"max_loglik", num(f.max_loglik)}, {"converged", f.converged},
            {"xi_warning", f.xi_warning}, {"degenerate", f.degenerate}};
}

FitRecord decode_fit(const json& j) {
    FitRecord f;
    f.model = j.at("model").get<std::string>();
    f.mu0 = dbl(j.at("mu0"));
    f.mu1 = dbl(j.at("mu1"));
    f.sigma0 = dbl(j.at("sigma0"));
    f.sigma1 = dbl(j.at("sigma1"));
    f.xi = dbl(j.at("xi"));
    f.max_loglik = dbl(j.at("max_loglik"));
    f.converged = j.at("converged").get<bool>();
    f.xi_warning = j.at("xi_warning").get<bool>();
    f.degenerate = j.at("degenerate").get<bool>();
    return f;
}

json encode(const TestRecord& t) {
    return {{"variant", t.variant},
            {"mode", t.mode},
            {"statistic", num(t.statistic)},
            {"trend", num(t.trend)},
            {"p_asymptotic", num(t.p_asymptotic)},
            {"p_modified", opt(t.p_modified)},
            {"critical_value", opt(t.critical_value)},
            {"n_sim", t.n_sim},
            {"n_sim_failures", t.n_sim_failures},
            {"significance", t.significance},
            {"error", opt(t.error)}};
}

TestRecord decode_test(const json& j) {
    TestRecord t;
    t.variant = j.at("variant").get<std::string>();
    t.mode = j.at("mode").get<std::string>();
    t.statistic = dbl(j.at("statistic"));
    t.trend = dbl(j.at("trend"));
    t.p_asymptotic = dbl(j.at("p_asymptotic"));
    t.p_modified = opt_dbl(j, "p_modified");
    t.critical_value = opt_dbl(j, "critical_value");
    t.n_sim = j.at("n_sim").get<std::size_t>();
    t.n_sim_failures = j.at("n_sim_failures").get<std::size_t>();
    t.significance = j.at("significance").get<std::string>();
    t.error = opt_str(j, "error");
    return t;
}

json encode(const BootRecord& b) {
    return {{"kind", b.kind},
            {"variant", b.variant},
            {"mode", b.mode},
            {"resample", b.resample},
            {"target_size", b.target_size},
            {"n_reps", b.n_reps},
            {"n_failures", b.n_failures},
            {"rejection_rate", opt(b.rejection_rate)},
            {"critical_value", opt(b.critical_value)}};
}

BootRecord decode_boot(const json& j) {
    BootRecord b;
    b.kind = j.at("kind").get<std::string>();
    b.variant = j.at("variant").get<std::string>();
    b.mode = j.at("mode").get<std::string>();
    b.resample = j.at("resample").get<std::string>();
    b.target_size = j.at("target_size").get<std::size_t>();
    b.n_reps = j.at("n_reps").get<std::size_t>();
    b.n_failures = j.at("n_failures").get<std::size_t>();
    b.rejection_rate = opt_dbl(j, "rejection_rate");
    b.critical_value = opt_dbl(j, "critical_value");
    return b;
}

json encode(const IntervalRecord& r) {
    return {{"model", r.model},       {"estimate", num(r.estimate)}, {"level", num(r.level)},
            {"lo", opt(r.lo)},        {"hi", opt(r.hi)},             {"n_reps", r.n_reps},
            {"n_failures", r.n_failures}, {"error", opt(r.error)}};
}

IntervalRecord decode_interval(const json& j) {
    IntervalRecord r;
    r.model = j.at("model").get<std::string>();
    r.estimate = dbl(j.at("estimate"));
    r.level = dbl(j.at("level"));
    r.lo = opt_dbl(j, "lo");
    r.hi = opt_dbl(j, "hi");
    r.n_reps = j.at("n_reps").get<std::size_t>();
    r.n_failures = j.at("n_failures").get<std::size_t>();
    r.error = opt_str(j, "error");
    return r;
}

json encode(const ReturnLevelRecord& r) {
    return {{"k", r.k},
            {"analytic", num(r.analytic)},
            {"level", num(r.level)},
            {"ci_lo", num(r.ci_lo)},
            {"ci_hi", num(r.ci_hi)},
            {"ci_level", num(r.ci_level)},
            {"n_reps", r.n_reps},
            {"n_failures", r.n_failures}};
}

ReturnLevelRecord decode_return_level(const json& j) {
    ReturnLevelRecord r;
    r.k = j.at("k").get<std::size_t>();
    r.analytic = dbl(j.at("analytic"));
    r.level = dbl(j.at("level"));
    r.ci_lo = dbl(j.at("ci_lo"));
    r.ci_hi = dbl(j.at("ci_hi"));
    r.ci_level = dbl(j.at("ci_level"));
    r.n_reps = j.at("n_reps").get<std::size_t>();
    r.n_failures = j.at("n_failures").get<std::size_t>();
    return r;
}

json encode(const GofRecord& g) {
    return {{"method", g.method},
            {"model", g.model},
            {"statistic", num(g.statistic)},
            {"p_value", num(g.p_value)},
            {"n_sim", g.n_sim}};
}

GofRecord decode_gof(const json& j) {
    GofRecord g;
    g.method = j.at("method").get<std::string>();
    g.model = j.at("model").get<std::string>();
    g.statistic = dbl(j.at("statistic"));
    g.p_value = dbl(j.at("p_value"));
    g.n_sim = j.at("n_sim").get<std::size_t>();
    return g;
}

json encode(const StationRecord& s);
json encode(const StudyCell& c);

template <class T>
json encode_all(const std::vector<T>& items) {
    json a = json::array();
    for (const auto& x : items) a.push_back(encode(x));
    return a;
}

template <class F>
auto decode_all(const json& j, const char* key, F&& f) {
    std::vector<decltype(f(json{}))> out;
    if (!j.contains(key)) return out;
    for (const auto& x : j.at(key)) out.push_back(f(x));
    return out;
}

json encode(const StationRecord& s) {
    json j{{"station_id", s.station_id},
           {"n", s.n},
           {"skip_reason", opt(s.skip_reason)},
           {"fits", encode_all(s.fits)},
           {"tests", encode_all(s.tests)},
           {"bootstrap", encode_all(s.bootstrap)},
           {"intervals", encode_all(s.intervals)},
           {"return_level", s.return_level ? encode(*s.return_level) : json(nullptr)},
           {"gof", encode_all(s.gof)},
           {"flagged", s.flagged ? json(*s.flagged) : json(nullptr)}};
    return j;
}

StationRecord decode_station(const json& j) {
    StationRecord s;
    s.station_id = j.at("station_id").get<std::string>();
    s.n = j.at("n").get<std::size_t>();
    s.skip_reason = opt_str(j, "skip_reason");
    s.fits = decode_all(j, "fits", decode_fit);
    s.tests = decode_all(j, "tests", decode_test);
    s.bootstrap = decode_all(j, "bootstrap", decode_boot);
    s.intervals = decode_all(j, "intervals", decode_interval);
    if (j.contains("return_level") && !j.at("return_level").is_null())
        s.return_level = decode_return_level(j.at("return_level"));
    s.gof = decode_all(j, "gof", decode_gof);
    if (j.contains("flagged") && !j.at("flagged").is_null()) s.flagged = j.at("flagged").get<bool>();
    return s;
}

json encode(const StudyCell& c) {
    return {{"xi", num(c.xi)},
            {"mu1", num(c.mu1)},
            {"n", c.n},
            {"variant", std::string(to_string(c.variant))},
            {"modified", c.modified},
            {"rejection_rate", num(c.rejection_rate)},
            {"n_reps", c.n_reps},
            {"n_failures", c.n_failures},
            {"mc_stderr", num(c.mc_stderr)},
            {"critical_value", opt(c.critical_value)}};
}

StudyCell decode_cell(const json& j) {
    StudyCell c;
    c.xi = dbl(j.at("xi"));
    c.mu1 = dbl(j.at("mu1"));
    c.n = j.at("n").get<std::size_t>();
    c.variant = parse_variant(j.at("variant").get<std::string>());
    c.modified = j.at("modified").get<bool>();
    c.rejection_rate = dbl(j.at("rejection_rate"));
    c.n_reps = j.at("n_reps").get<std::size_t>();
    c.n_failures = j.at("n_failures").get<std::size_t>();
    c.mc_stderr = dbl(j.at("mc_stderr"));
    c.critical_value = opt_dbl(j, "critical_value");
    return c;
}

std::string fmt(double v, int precision = 4) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(precision) << v;
    return s.str();
}

std::string fmt(const std::optional<double>& v, int precision = 4) {
    return v ? fmt(*v, precision) : std::string("-");
}

}  // namespace

std::string to_json(const AnalysisReport& report, int indent) {
    json j{{"command", report.command},
           {"options", report.options},
           {"seed", report.seed},
           {"version", report.version},
           {"stations", encode_all(report.stations)},
           {"cells", encode_all(report.cells)}};
    return j.dump(indent) + "\n";
}

AnalysisReport report_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("report: ") + e.what());
    }
    AnalysisReport r;
    try {
        r.command = j.at("command").get<std::string>();
        r.options = j.at("options").get<std::map<std::string, std::string>>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.version = j.at("version").get<std::string>();
        r.stations = decode_all(j, "stations", decode_station);
        r.cells = decode_all(j, "cells", decode_cell);
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("report: ") + e.what());
    }
    return r;
}

void write_cells_csv(std::ostream& out, const std::vector<StudyCell>& cells) {
    out << "xi,mu1,n,variant,modified,rejection_rate,mc_stderr,n_reps,n_failures,critical_value\n";
    out << std::setprecision(10);
    for (const auto& c : cells) {
        out << c.xi << ',' << c.mu1 << ',' << c.n << ',' << to_string(c.variant) << ','
            << (c.modified ? "true" : "false") << ',' << c.rejection_rate << ',' << c.mc_stderr
            << ',' << c.n_reps << ',' << c.n_failures << ',';
        if (c.critical_value) out << *c.critical_value;
        out << '\n';
    }
}

void write_stations_csv(std::ostream& out, const AnalysisReport& report) {
    out << "station,n,section,name,field,value\n";
    out << std::setprecision(10);
    for (const auto& s : report.stations) {
        const auto row = [&](const std::string& section, const std::string& name,
                             const std::string& field, const auto& value) {
            out << s.station_id << ',' << s.n << ',' << section << ',' << name << ',' << field
                << ',' << value << '\n';
        };
        const auto orow = [&](const std::string& section, const std::string& name,
                              const std::string& field, const std::optional<double>& v) {
            if (v) row(section, name, field, *v);
        };
        if (s.skip_reason) row("skip", "", "reason", "\"" + *s.skip_reason + "\"");
        for (const auto& f : s.fits) {
            row("fit", f.model, "mu0", f.mu0);
            row("fit", f.model, "mu1", f.mu1);
            row("fit", f.model, "sigma0", f.sigma0);
            row("fit", f.model, "sigma1", f.sigma1);
            row("fit", f.model, "xi", f.xi);
            row("fit", f.model, "max_loglik", f.max_loglik);
            row("fit", f.model, "converged", f.converged ? 1 : 0);
        }
        for (const auto& t : s.tests) {
            const std::string name = t.variant + "/" + t.mode;
            row("test", name, "statistic", t.statistic);
            row("test", name, "trend", t.trend);
            row("test", name, "p_asymptotic", t.p_asymptotic);
            orow("test", name, "p_modified", t.p_modified);
            orow("test", name, "critical_value", t.critical_value);
        }
        for (const auto& b : s.bootstrap) {
            const std::string name = b.kind + "/" + b.variant + "/" + b.mode + "/" + b.resample;
            orow("bootstrap", name, "rejection_rate", b.rejection_rate);
            row("bootstrap", name, "n_failures", b.n_failures);
        }
        for (const auto& ci : s.intervals) {
            row("ci", ci.model, "estimate", ci.estimate);
            orow("ci", ci.model, "lo", ci.lo);
            orow("ci", ci.model, "hi", ci.hi);
        }
        if (s.return_level) {
            const auto& r = *s.return_level;
            const std::string name = "k=" + std::to_string(r.k);
            row("return_level", name, "analytic", r.analytic);
            row("return_level", name, "level", r.level);
            row("return_level", name, "ci_lo", r.ci_lo);
            row("return_level", name, "ci_hi", r.ci_hi);
        }
        for (const auto& g : s.gof) {
            row("gof", g.method, "statistic", g.statistic);
            row("gof", g.method, "p_value", g.p_value);
        }
        if (s.flagged) row("screen", "", "flagged", *s.flagged ? 1 : 0);
    }
}

void print_report(std::ostream& out, const AnalysisReport& report) {
    out << report.command << " (seed " << report.seed << ")\n";
    for (const auto& s : report.stations) {
        out << "\nstation " << s.station_id << "  n=" << s.n;
        if (s.skip_reason) {
            out << "  skipped: " << *s.skip_reason << '\n';
            continue;
        }
        if (s.flagged) out << "  " << (*s.flagged ? "TREND" : "no trend");
        out << '\n';
        for (const auto& f : s.fits)
            out << "  fit " << std::left << std::setw(8) << f.model << " mu0=" << fmt(f.mu0)
                << " mu1=" << fmt(f.mu1) << " sigma0=" << fmt(f.sigma0) << " sigma1="
                << fmt(f.sigma1) << " xi=" << fmt(f.xi) << " loglik=" << fmt(f.max_loglik)
                << (f.converged ? "" : "  [not converged]") << '\n';
        for (const auto& t : s.tests) {
            out << "  " << t.variant << ' ' << t.mode;
            if (t.error) {
                out << "  failed: " << *t.error << '\n';
                continue;
            }
            out << "  stat=" << fmt(t.statistic) << " trend=" << fmt(t.trend)
                << " p=" << fmt(t.p_asymptotic);
            if (t.critical_value) out << " crit=" << fmt(t.critical_value) << " p_mod=" << fmt(t.p_modified);
            if (!t.significance.empty()) out << "  (" << t.significance << ')';
            out << '\n';
        }
        for (const auto& b : s.bootstrap)
            out << "  " << b.kind << ' ' << b.variant << ' ' << b.mode << " [" << b.resample
                << (b.target_size ? ", size " + std::to_string(b.target_size) : std::string())
                << "] rate=" << fmt(b.rejection_rate, 3) << " failures=" << b.n_failures << '\n';
        for (const auto& ci : s.intervals) {
            out << "  ci " << ci.model;
            if (ci.error) {
                out << "  failed: " << *ci.error << '\n';
                continue;
            }
            out << " estimate=" << fmt(ci.estimate) << " [" << fmt(ci.lo) << ", " << fmt(ci.hi)
                << "] level=" << fmt(ci.level, 2) << '\n';
        }
        if (s.return_level) {
            const auto& r = *s.return_level;
            out << "  return level k=" << r.k << " analytic=" << fmt(r.analytic)
                << " bootstrap=" << fmt(r.level) << " [" << fmt(r.ci_lo) << ", " << fmt(r.ci_hi)
                << "]\n";
        }
        for (const auto& g : s.gof)
            out << "  gof " << g.method << " (" << g.model << ") stat=" << fmt(g.statistic)
                << " p=" << fmt(g.p_value) << '\n';
    }
    if (!report.cells.empty()) {
        out << '\n'
            << std::left << std::setw(8) << "xi" << std::setw(8) << "mu1" << std::setw(6) << "n"
            << std::setw(6) << "test" << std::setw(10) << "mode" << std::setw(8) << "rate"
            << std::setw(8) << "se" << "failures\n";
        for (const auto& c : report.cells)
            out << std::left << std::setw(8) << fmt(c.xi, 2) << std::setw(8) << fmt(c.mu1, 2)
                << std::setw(6) << c.n << std::setw(6) << to_string(c.variant) << std::setw(10)
                << (c.modified ? "modified" : "asymptotic") << std::setw(8)
                << fmt(c.rejection_rate, 3) << std::setw(8) << fmt(c.mc_stderr, 3) << c.n_failures
                << '\n';
    }
}

}  // namespace gevtrend
