#include "geaoi/optimize.hpp"

#include "geaoi/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace geaoi {

std::string_view to_string(Feasibility f) noexcept {
    switch (f) {
    case Feasibility::Unconstrained:
        return "unconstrained";
    case Feasibility::Binding:
        return "binding";
    case Feasibility::Infeasible:
        return "infeasible";
    }
    return "unknown";
}

Classification classify(const CostModel &cm) {
    const double c = cm.budget();
    if (c >= cm.c_g())
        return {Feasibility::Unconstrained, std::nullopt};
    if (c <= cm.c_b())
        return {Feasibility::Infeasible, std::nullopt};
    return {Feasibility::Binding, (cm.c_g() - c) / (c - cm.c_b())};
}

namespace {

void require_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 0.5))
        throw InvalidArgument("epsilon must lie in (0, 0.5)");
}

} // namespace

OptimResult optimal_unconstrained(const Scenario &scenario, double epsilon) {
    require_epsilon(epsilon);
    const double p = 1.0 - epsilon;
    const double q = epsilon;
    OptimResult r{};
    r.p_star = p;
    r.q_star = q;
    r.delta_star = age(scenario, TransitionMatrix(p, q)).delta;
    r.attained = false;
    r.feasibility = Feasibility::Unconstrained;
    return r;
}

OptimResult optimal_constrained(const Scenario &scenario, const CostModel &cm, double epsilon) {
    require_epsilon(epsilon);
    const auto cls = classify(cm);
    switch (cls.feasibility) {
    case Feasibility::Unconstrained:
        return optimal_unconstrained(scenario, epsilon);
    case Feasibility::Infeasible:
        throw InfeasibleBudget("budget " + std::to_string(cm.budget()) +
                               " does not exceed the bad-state cost c_b = " +
                               std::to_string(cm.c_b()) + "; no transition matrix is feasible");
    case Feasibility::Binding:
        break;
    }

    const double alpha = *cls.alpha;
    // Corner of the budget line inside the unit square, pulled in by epsilon.
    const double p = std::min(1.0, 1.0 / alpha) * (1.0 - epsilon);
    const double q = std::min(1.0, alpha * p);

    OptimResult r{};
    r.p_star = p;
    r.q_star = q;
    r.delta_star = age(scenario, TransitionMatrix(p, q)).delta;
    r.alpha = alpha;
    r.feasibility = Feasibility::Binding;
    r.tie = alpha == 1.0;
    r.constant_along_line = std::holds_alternative<GEArrivalScenario>(scenario);
    // Along the line the arrival-modulated age is flat, so any interior point attains it.
    r.attained = r.constant_along_line;
    return r;
}

double cycle_moment_contrast(const GEServiceScenario &s) {
    const Scenario sc = s;
    const auto yb = cycle_moments(sc, State::Bad);
    const auto yg = cycle_moments(sc, State::Good);
    return yb.mean * yg.second_moment - yg.mean * yb.second_moment;
}

double lemma1_sign_condition(const GEServiceScenario &s, double q) {
    const Scenario sc = s;
    const auto yb = cycle_moments(sc, State::Bad);
    const auto yg = cycle_moments(sc, State::Good);
    const double sb = exp_moments(s.mu_b()).mean;
    const double sg = exp_moments(s.mu_g()).mean;
    return 0.5 * yb.mean * yg.second_moment - 0.5 * yg.mean * yb.second_moment +
           yb.mean * (sg - sb) * ((1.0 - q) * yg.mean + q * yb.mean);
}

MonotonicityReport verify_monotonicity(const Scenario &scenario, unsigned grid_resolution) {
    if (grid_resolution < 3)
        throw InvalidArgument("grid_resolution must be at least 3");
    const unsigned n = grid_resolution;
    const auto node = [n](unsigned k) { return static_cast<double>(k + 1) / (n + 1); };

    MonotonicityReport report;
    report.points.reserve(static_cast<std::size_t>(n) * n);
    for (unsigned j = 0; j < n; ++j) {
        for (unsigned i = 0; i < n; ++i) {
            const double p = node(i);
            const double q = node(j);
            report.points.push_back({p, q, age(scenario, TransitionMatrix(p, q)).delta});
        }
    }

    const auto at = [&](unsigned i, unsigned j) { return report.points[j * n + i]; };
    for (unsigned j = 0; j < n; ++j) {
        for (unsigned i = 0; i < n; ++i) {
            if (i + 1 < n && !(at(i + 1, j).delta < at(i, j).delta))
                report.violations.push_back({'p', at(i, j), at(i + 1, j)});
            if (j + 1 < n && !(at(i, j + 1).delta > at(i, j).delta))
                report.violations.push_back({'q', at(i, j), at(i, j + 1)});
        }
    }
    return report;
}

} // namespace geaoi
