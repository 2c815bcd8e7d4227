#include "sweep.hpp"

#include <geaoi/error.hpp>
#include <geaoi/simulate.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace geaoi::cli {

std::string_view scenario_name(const Scenario &s) noexcept {
    return std::holds_alternative<GEServiceScenario>(s) ? "ge-service" : "ge-arrival";
}

namespace {

double parse_number(std::string_view text, std::string_view what) {
    double v = 0.0;
    const auto *first = text.data();
    const auto *last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v))
        throw InvalidArgument("cannot parse " + std::string(what) + " value '" +
                              std::string(text) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

double snap(double v) { return std::round(v * 1e12) / 1e12; }

} // namespace

std::vector<double> parse_range(std::string_view text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3)
        throw InvalidArgument("range must have the form start:stop:step");
    const double start = parse_number(parts[0], "range start");
    const double stop = parse_number(parts[1], "range stop");
    const double step = parse_number(parts[2], "range step");
    if (!(step > 0.0))
        throw InvalidArgument("range step must be positive");
    if (stop < start)
        throw InvalidArgument("range stop must not be below start");

    std::vector<double> out;
    for (std::size_t k = 0;; ++k) {
        const double v = start + static_cast<double>(k) * step;
        if (v > stop + 0.5 * step)
            break;
        out.push_back(snap(v));
    }
    return out;
}

FixedAxis parse_fixed(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos || eq != 1 || (text[0] != 'p' && text[0] != 'q'))
        throw InvalidArgument("--fix must have the form p=v1,v2,... or q=v1,v2,...");
    FixedAxis fx{text[0], {}};
    for (auto part : split(text.substr(2), ','))
        fx.values.push_back(parse_number(part, "--fix"));
    return fx;
}

std::vector<SweepRow> run_sweep(const SweepSpec &spec) {
    if (spec.varied.empty() || spec.fixed.empty())
        throw InvalidArgument("sweep grid must be non-empty");
    std::vector<SweepRow> rows;
    rows.reserve(spec.varied.size() * spec.fixed.size());
    for (double f : spec.fixed) {
        for (double v : spec.varied) {
            const double p = spec.vary == 'p' ? v : f;
            const double q = spec.vary == 'p' ? f : v;
            const TransitionMatrix P(p, q);
            SweepRow row{std::string(scenario_name(spec.scenario)), p, q,
                         age(spec.scenario, P).delta, std::nullopt, std::nullopt};
            if (spec.with_sim) {
                SimConfig cfg{.scenario = spec.scenario, .P = P};
                cfg.num_cycles = spec.cycles;
                cfg.seed = spec.seed;
                cfg.replications = spec.replications;
                const auto r = simulate_cycles(cfg);
                row.delta_sim = r.delta_hat;
                row.sim_stderr = r.std_error;
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string format_sig10(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void write_csv(std::ostream &os, const std::vector<SweepRow> &rows) {
    os << kSweepHeader << '\n';
    for (const auto &r : rows) {
        os << r.scenario << ',' << format_sig10(r.p) << ',' << format_sig10(r.q) << ','
           << format_sig10(r.delta_analytic) << ',';
        if (r.delta_sim)
            os << format_sig10(*r.delta_sim);
        os << ',';
        if (r.sim_stderr)
            os << format_sig10(*r.sim_stderr);
        os << '\n';
    }
}

} // namespace geaoi::cli
