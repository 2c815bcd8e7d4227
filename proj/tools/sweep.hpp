#pragma once

#include <geaoi/analytic.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace geaoi::cli {

std::string_view scenario_name(const Scenario &s) noexcept;

/// Parses "start:stop:step". Values are start + k * step for every k with
/// value <= stop + step / 2, snapped to 12 decimals.
std::vector<double> parse_range(std::string_view text);

/// Parses "q=0.1,0.5,0.9" into the fixed axis name and its values.
struct FixedAxis {
    char axis;
    std::vector<double> values;
};
FixedAxis parse_fixed(std::string_view text);

struct SweepSpec {
    Scenario scenario;
    char vary = 'p';
    std::vector<double> varied{};
    std::vector<double> fixed{};
    bool with_sim = false;
    std::uint64_t cycles = 1'000'000;
    std::uint64_t seed = 0;
    std::uint32_t replications = 8;
};

struct SweepRow {
    std::string scenario;
    double p;
    double q;
    double delta_analytic;
    std::optional<double> delta_sim;
    std::optional<double> sim_stderr;
};

/// Rows ordered by fixed value, then varied value.
std::vector<SweepRow> run_sweep(const SweepSpec &spec);

/// printf("%.10g")
std::string format_sig10(double v);

inline constexpr std::string_view kSweepHeader = "scenario,p,q,delta_analytic,delta_sim,sim_stderr";

void write_csv(std::ostream &os, const std::vector<SweepRow> &rows);

} // namespace geaoi::cli
