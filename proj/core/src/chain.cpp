#include "geaoi/chain.hpp"

#include "geaoi/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace geaoi {

std::string_view to_string(State s) noexcept {
    return s == State::Bad ? "bad" : "good";
}

namespace {

bool is_probability(double x) { return x >= 0.0 && x <= 1.0; }

} // namespace

TransitionMatrix::TransitionMatrix(double p, double q) : p_(p), q_(q) {
    if (!is_probability(p))
        throw InvalidArgument("transition probability p must lie in [0, 1], got " +
                              std::to_string(p));
    if (!is_probability(q))
        throw InvalidArgument("transition probability q must lie in [0, 1], got " +
                              std::to_string(q));
    if (p + q <= 0.0)
        throw InvalidArgument(
            "p = q = 0 has no unique stationary distribution (require p + q > 0)");
}

CostModel::CostModel(double c_b, double c_g, double budget)
    : c_b_(c_b), c_g_(c_g), budget_(budget) {
    if (!std::isfinite(c_b) || !std::isfinite(c_g) || !std::isfinite(budget))
        throw InvalidArgument("cost model values must be finite");
    if (c_b < 0.0)
        throw InvalidArgument("cost c_b must be non-negative");
    if (c_b > c_g)
        throw InvalidArgument("cost model requires c_b <= c_g");
}

StationaryDist stationary_distribution(const TransitionMatrix &P) noexcept {
    const double pi_b = P.q() / (P.p() + P.q());
    return {pi_b, 1.0 - pi_b};
}

State next_state(State s, const TransitionMatrix &P, double u) noexcept {
    if (s == State::Bad)
        return u < P.p() ? State::Good : State::Bad;
    return u < P.q() ? State::Bad : State::Good;
}

double average_cost(const TransitionMatrix &P, const CostModel &cm) noexcept {
    const auto pi = stationary_distribution(P);
    // Clamp away last-ulp excursions; the exact value is a convex combination.
    return std::clamp(pi.pi_b * cm.c_b() + pi.pi_g * cm.c_g(), cm.c_b(), cm.c_g());
}

} // namespace geaoi
