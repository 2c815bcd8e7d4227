#include "geaoi/analytic.hpp"

#include "geaoi/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace geaoi {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

void require_rate(double rate, const char *name) {
    if (!positive_finite(rate))
        throw InvalidArgument(std::string("rate ") + name + " must be positive and finite, got " +
                              std::to_string(rate));
}

// E[(X + Z)^2] for independent X and Z.
double second_moment_of_sum(const ExpMoments &x, const ExpMoments &z) {
    return x.second_moment + 2.0 * x.mean * z.mean + z.second_moment;
}

// Area and cycle-length expectations at a given (p, q). p and q enter only
// the service scenario, through the mean of the next service time.
AgeBreakdown expectations(const GEServiceScenario &s, double p, double q) {
    const auto sb = exp_moments(s.mu_b());
    const auto sg = exp_moments(s.mu_g());
    const auto z = exp_moments(s.lambda());

    const double next_after_bad = p * sg.mean + (1.0 - p) * sb.mean;
    const double next_after_good = q * sb.mean + (1.0 - q) * sg.mean;

    AgeBreakdown out{};
    out.eq_b = 0.5 * second_moment_of_sum(sb, z) + (sb.mean + z.mean) * next_after_bad;
    out.eq_g = 0.5 * second_moment_of_sum(sg, z) + (sg.mean + z.mean) * next_after_good;
    out.ey_b = sb.mean + z.mean;
    out.ey_g = sg.mean + z.mean;
    return out;
}

AgeBreakdown expectations(const GEArrivalScenario &s) {
    const auto sv = exp_moments(s.mu());
    const auto zb = exp_moments(s.lambda_b());
    const auto zg = exp_moments(s.lambda_g());

    AgeBreakdown out{};
    out.eq_b = 0.5 * second_moment_of_sum(sv, zb) + sv.mean * sv.mean + sv.mean * zb.mean;
    out.eq_g = 0.5 * second_moment_of_sum(sv, zg) + sv.mean * sv.mean + sv.mean * zg.mean;
    out.ey_b = sv.mean + zb.mean;
    out.ey_g = sv.mean + zg.mean;
    return out;
}

void finish(AgeBreakdown &b, double p, double q) {
    const double numerator = q * b.eq_b + p * b.eq_g;
    const double denominator = q * b.ey_b + p * b.ey_g;
    b.delta = numerator / denominator;
}

} // namespace

ExpMoments exp_moments(double rate) {
    require_rate(rate, "of exponential");
    return {1.0 / rate, 2.0 / (rate * rate)};
}

GEServiceScenario::GEServiceScenario(Unchecked, double lambda, double mu_b, double mu_g)
    : lambda_(lambda), mu_b_(mu_b), mu_g_(mu_g) {
    require_rate(lambda, "lambda");
    require_rate(mu_b, "mu_b");
    require_rate(mu_g, "mu_g");
}

GEServiceScenario::GEServiceScenario(double lambda, double mu_b, double mu_g)
    : GEServiceScenario(Unchecked{}, lambda, mu_b, mu_g) {
    if (!(mu_b < mu_g))
        throw InvalidArgument("GE-service scenario requires mu_b < mu_g");
}

GEServiceScenario GEServiceScenario::allowing_equal_rates(double lambda, double mu_b,
                                                          double mu_g) {
    if (mu_b > mu_g)
        throw InvalidArgument("GE-service scenario requires mu_b <= mu_g");
    return GEServiceScenario(Unchecked{}, lambda, mu_b, mu_g);
}

GEServiceScenario GEServiceScenario::scaled(double k) const {
    require_rate(k, "scale");
    return GEServiceScenario(Unchecked{}, lambda_ * k, mu_b_ * k, mu_g_ * k);
}

GEArrivalScenario::GEArrivalScenario(Unchecked, double mu, double lambda_b, double lambda_g)
    : mu_(mu), lambda_b_(lambda_b), lambda_g_(lambda_g) {
    require_rate(mu, "mu");
    require_rate(lambda_b, "lambda_b");
    require_rate(lambda_g, "lambda_g");
}

GEArrivalScenario::GEArrivalScenario(double mu, double lambda_b, double lambda_g)
    : GEArrivalScenario(Unchecked{}, mu, lambda_b, lambda_g) {
    if (!(lambda_b < lambda_g))
        throw InvalidArgument("GE-arrival scenario requires lambda_b < lambda_g");
}

GEArrivalScenario GEArrivalScenario::allowing_equal_rates(double mu, double lambda_b,
                                                          double lambda_g) {
    if (lambda_b > lambda_g)
        throw InvalidArgument("GE-arrival scenario requires lambda_b <= lambda_g");
    return GEArrivalScenario(Unchecked{}, mu, lambda_b, lambda_g);
}

GEArrivalScenario GEArrivalScenario::scaled(double k) const {
    require_rate(k, "scale");
    return GEArrivalScenario(Unchecked{}, mu_ * k, lambda_b_ * k, lambda_g_ * k);
}

CycleMoments cycle_moments(const Scenario &scenario, State s) {
    return std::visit(
        [s](const auto &sc) {
            const auto service = exp_moments(sc.service_rate(s));
            const auto wait = exp_moments(sc.arrival_rate(s));
            return CycleMoments{service.mean + wait.mean, second_moment_of_sum(service, wait)};
        },
        scenario);
}

AgeBreakdown age_ge_service(const GEServiceScenario &s, const TransitionMatrix &P) {
    auto b = expectations(s, P.p(), P.q());
    finish(b, P.p(), P.q());
    return b;
}

AgeBreakdown age_ge_arrival(const GEArrivalScenario &s, const TransitionMatrix &P) {
    auto b = expectations(s);
    finish(b, P.p(), P.q());
    return b;
}

AgeBreakdown age(const Scenario &scenario, const TransitionMatrix &P) {
    struct Visitor {
        const TransitionMatrix &P;
        AgeBreakdown operator()(const GEServiceScenario &s) const { return age_ge_service(s, P); }
        AgeBreakdown operator()(const GEArrivalScenario &s) const { return age_ge_arrival(s, P); }
    };
    return std::visit(Visitor{P}, scenario);
}

double age_single_state(double lambda, double mu) {
    require_rate(lambda, "lambda");
    require_rate(mu, "mu");
    return 1.0 / lambda + 2.0 / mu - 1.0 / (lambda + mu);
}

double age_good_limit(const Scenario &scenario) {
    struct Visitor {
        double operator()(const GEServiceScenario &s) const {
            return age_single_state(s.lambda(), s.mu_g());
        }
        double operator()(const GEArrivalScenario &s) const {
            return age_single_state(s.lambda_g(), s.mu());
        }
    };
    return std::visit(Visitor{}, scenario);
}

double age_bad_limit(const Scenario &scenario) {
    struct Visitor {
        double operator()(const GEServiceScenario &s) const {
            return age_single_state(s.lambda(), s.mu_b());
        }
        double operator()(const GEArrivalScenario &s) const {
            return age_single_state(s.lambda_b(), s.mu());
        }
    };
    return std::visit(Visitor{}, scenario);
}

double age_on_line(const Scenario &scenario, double alpha, double p) {
    if (!positive_finite(alpha))
        throw InvalidArgument("line slope alpha must be positive and finite");
    // q = alpha * p must stay in (0, 1]; allow a rounding ulp at p = 1/alpha.
    if (!(p > 0.0 && p <= 1.0 && alpha * p <= 1.0 + 1e-12))
        throw InvalidArgument("p must satisfy 0 < p <= min(1, 1/alpha) on the budget line");
    const double q = std::min(1.0, alpha * p);

    struct Visitor {
        double p, q;
        AgeBreakdown operator()(const GEServiceScenario &s) const { return expectations(s, p, q); }
        AgeBreakdown operator()(const GEArrivalScenario &s) const { return expectations(s); }
    };
    const auto b = std::visit(Visitor{p, q}, scenario);
    return (alpha * b.eq_b + b.eq_g) / (alpha * b.ey_b + b.ey_g);
}

} // namespace geaoi
