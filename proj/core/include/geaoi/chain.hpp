#pragma once

#include <string_view>

namespace geaoi {

/// Modulation state of the Gilbert-Elliot chain.
enum class State { Bad, Good };

std::string_view to_string(State s) noexcept;

/**
 * Event-triggered two-state transition matrix
 *
 *     [ 1-p   p  ]
 *     [  q   1-q ]
 *
 * where p = P(Bad -> Good) and q = P(Good -> Bad). The closed square
 * [0,1]^2 is admitted so that corner limits can be evaluated, except the
 * reducible point p = q = 0 which has no unique stationary distribution.
 */
class TransitionMatrix {
public:
    /// Throws InvalidArgument if p or q lies outside [0,1] or p = q = 0.
    TransitionMatrix(double p, double q);

    double p() const noexcept { return p_; }
    double q() const noexcept { return q_; }

    friend bool operator==(const TransitionMatrix &, const TransitionMatrix &) = default;

private:
    double p_;
    double q_;
};

struct StationaryDist {
    double pi_b;
    double pi_g; ///< always 1 - pi_b
};

/// Per-state operating costs and the per-unit-time budget.
class CostModel {
public:
    /// Throws InvalidArgument unless 0 <= c_b <= c_g and all values are finite.
    CostModel(double c_b, double c_g, double budget);

    double c_b() const noexcept { return c_b_; }
    double c_g() const noexcept { return c_g_; }
    double budget() const noexcept { return budget_; }

private:
    double c_b_;
    double c_g_;
    double budget_;
};

/// pi_b = q / (p + q); pi_g = 1 - pi_b.
StationaryDist stationary_distribution(const TransitionMatrix &P) noexcept;

/// One step of the chain driven by an external uniform u in [0,1).
/// From Bad the chain moves to Good iff u < p; from Good to Bad iff u < q.
State next_state(State s, const TransitionMatrix &P, double u) noexcept;

/// Long-run cost per unit time, pi_b * c_b + pi_g * c_g.
double average_cost(const TransitionMatrix &P, const CostModel &cm) noexcept;

} // namespace geaoi
