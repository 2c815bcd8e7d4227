#pragma once

#include "geaoi/chain.hpp"

#include <variant>

namespace geaoi {

/// First two moments of an exponential random variable.
struct ExpMoments {
    double mean;
    double second_moment;
};

/// (1/rate, 2/rate^2). Throws InvalidArgument unless rate is positive and finite.
ExpMoments exp_moments(double rate);

/**
 * Gilbert-Elliot service: Poisson arrivals at rate lambda, exponential
 * service at rate mu_b in the bad state and mu_g in the good state.
 * Requires lambda > 0 and 0 < mu_b < mu_g.
 */
class GEServiceScenario {
public:
    GEServiceScenario(double lambda, double mu_b, double mu_g);

    /// Test-only: admits mu_b == mu_g so the model collapses to a single state.
    static GEServiceScenario allowing_equal_rates(double lambda, double mu_b, double mu_g);

    double lambda() const noexcept { return lambda_; }
    double mu_b() const noexcept { return mu_b_; }
    double mu_g() const noexcept { return mu_g_; }
    double service_rate(State s) const noexcept { return s == State::Bad ? mu_b_ : mu_g_; }
    double arrival_rate(State) const noexcept { return lambda_; }

    /// Same scenario with every rate multiplied by k > 0.
    GEServiceScenario scaled(double k) const;

private:
    struct Unchecked {};
    GEServiceScenario(Unchecked, double lambda, double mu_b, double mu_g);

    double lambda_;
    double mu_b_;
    double mu_g_;
};

/**
 * Gilbert-Elliot sampling: exponential service at rate mu, exponential
 * interarrivals at rate lambda_b in the bad state and lambda_g in the good
 * state. Requires mu > 0 and 0 < lambda_b < lambda_g.
 */
class GEArrivalScenario {
public:
    GEArrivalScenario(double mu, double lambda_b, double lambda_g);

    /// Test-only: admits lambda_b == lambda_g.
    static GEArrivalScenario allowing_equal_rates(double mu, double lambda_b, double lambda_g);

    double mu() const noexcept { return mu_; }
    double lambda_b() const noexcept { return lambda_b_; }
    double lambda_g() const noexcept { return lambda_g_; }
    double service_rate(State) const noexcept { return mu_; }
    double arrival_rate(State s) const noexcept { return s == State::Bad ? lambda_b_ : lambda_g_; }

    GEArrivalScenario scaled(double k) const;

private:
    struct Unchecked {};
    GEArrivalScenario(Unchecked, double mu, double lambda_b, double lambda_g);

    double mu_;
    double lambda_b_;
    double lambda_g_;
};

using Scenario = std::variant<GEServiceScenario, GEArrivalScenario>;

/// Expected areas, expected cycle lengths and the resulting average age.
struct AgeBreakdown {
    double eq_b;  ///< E[Q_b]
    double eq_g;  ///< E[Q_g]
    double ey_b;  ///< E[Y_b]
    double ey_g;  ///< E[Y_g]
    double delta; ///< (q E[Q_b] + p E[Q_g]) / (q E[Y_b] + p E[Y_g])
};

/// Mean and second moment of the update cycle Y = S + Z conditioned on the
/// state in force when the packet enters service.
struct CycleMoments {
    double mean;
    double second_moment;
};

CycleMoments cycle_moments(const Scenario &scenario, State s);

AgeBreakdown age_ge_service(const GEServiceScenario &s, const TransitionMatrix &P);
AgeBreakdown age_ge_arrival(const GEArrivalScenario &s, const TransitionMatrix &P);
AgeBreakdown age(const Scenario &scenario, const TransitionMatrix &P);

/// Average age of an M/M/1 blocking server: 1/lambda + 2/mu - 1/(lambda + mu).
double age_single_state(double lambda, double mu);

/// Age in the all-good / all-bad limits of a scenario.
double age_good_limit(const Scenario &scenario);
double age_bad_limit(const Scenario &scenario);

/**
 * Average age restricted to the budget line q = alpha * p:
 *
 *     (alpha E[Q_b] + E[Q_g]) / (alpha E[Y_b] + E[Y_g])
 *
 * Requires alpha > 0 and 0 < p <= min(1, 1/alpha).
 */
double age_on_line(const Scenario &scenario, double alpha, double p);

} // namespace geaoi
