#pragma once

#include "geaoi/analytic.hpp"
#include "geaoi/chain.hpp"

#include <optional>
#include <vector>

namespace geaoi {

/// Budget regime relative to the per-state costs.
enum class Feasibility {
    Unconstrained, ///< c >= c_g: every matrix is affordable
    Binding,       ///< c_b < c < c_g: optimum lies on q = alpha p
    Infeasible,    ///< c <= c_b
};

std::string_view to_string(Feasibility f) noexcept;

struct Classification {
    Feasibility feasibility;
    std::optional<double> alpha; ///< (c_g - c) / (c - c_b), Binding only
};

Classification classify(const CostModel &cm);

struct OptimResult {
    double p_star;
    double q_star;
    double delta_star;
    /// false when (p_star, q_star) is an epsilon-approach to an open-boundary supremum.
    bool attained;
    /// GE-arrival under a binding budget: every point of q = alpha p is optimal.
    bool constant_along_line;
    /// alpha == 1, where both corner branches meet at (1, 1).
    bool tie;
    std::optional<double> alpha;
    Feasibility feasibility;
};

inline constexpr double default_epsilon = 1e-6;

/// (1 - epsilon, epsilon), the approach to the p -> 1, q -> 0 supremum.
/// Throws InvalidArgument unless epsilon lies in (0, 0.5).
OptimResult optimal_unconstrained(const Scenario &scenario, double epsilon = default_epsilon);

/**
 * Age-optimal matrix under the average-cost budget. Binding budgets put the
 * optimum on q = alpha p at p = min(1, 1/alpha) scaled by (1 - epsilon).
 * Throws InfeasibleBudget when c <= c_b.
 */
OptimResult optimal_constrained(const Scenario &scenario, const CostModel &cm,
                                double epsilon = default_epsilon);

/**
 * Numerator of d(delta)/dp for the GE-service scenario, divided by q:
 *
 *     E[Y_b] E[Y_g^2] / 2 - E[Y_g] E[Y_b^2] / 2
 *       + E[Y_b] (E[S_g] - E[S_b]) ((1 - q) E[Y_g] + q E[Y_b])
 *
 * It does not depend on p. Negative for every valid scenario.
 */
double lemma1_sign_condition(const GEServiceScenario &s, double q);

/// E[Y_b] E[Y_g^2] - E[Y_g] E[Y_b^2], the first part of the sign condition.
double cycle_moment_contrast(const GEServiceScenario &s);

struct GridPoint {
    double p;
    double q;
    double delta;
};

struct MonotonicityViolation {
    char axis; ///< 'p': delta failed to decrease in p; 'q': failed to increase in q
    GridPoint from;
    GridPoint to;
};

struct MonotonicityReport {
    std::vector<GridPoint> points; ///< row-major over q, then p
    std::vector<MonotonicityViolation> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/// Evaluates delta on the grid k / (n + 1), k = 1..n, in both p and q and
/// records every adjacent pair breaking strict monotonicity.
/// Throws InvalidArgument when grid_resolution < 3.
MonotonicityReport verify_monotonicity(const Scenario &scenario, unsigned grid_resolution);

} // namespace geaoi
