#include "validate.hpp"

#include <geaoi/geaoi.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace geaoi::cli {

namespace {

const GEServiceScenario kService(1.0, 0.1, 1.0);
const GEArrivalScenario kArrival(1.0, 0.1, 1.0);

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

struct Tally {
    std::size_t evaluated = 0;
    std::size_t failed = 0;
    double worst = 0.0;

    void expect(bool ok, double err = 0.0) {
        ++evaluated;
        failed += !ok;
        worst = std::max(worst, err);
    }
    CheckResult result(std::string name) const {
        std::ostringstream os;
        os << failed << " of " << evaluated << " failed";
        if (worst > 0.0)
            os << "; worst " << worst;
        return {std::move(name), failed == 0, os.str()};
    }
};

class RandomScenarios {
public:
    explicit RandomScenarios(std::uint64_t seed) : rng_(seed) {}

    double log_rate() {
        std::uniform_real_distribution<double> u(std::log(0.01), std::log(100.0));
        return std::exp(u(rng_));
    }
    std::pair<double, double> ordered_pair() {
        double a = log_rate(), b = log_rate();
        if (a > b)
            std::swap(a, b);
        return {a, b * 1.001};
    }
    double open_unit() { return std::uniform_real_distribution<double>(0.01, 0.99)(rng_); }

private:
    std::mt19937_64 rng_;
};

CheckResult single_state_anchors(const ValidateOptions &) {
    Tally t;
    t.expect(std::abs(age_single_state(1, 1) - 2.5) <= 1e-12);
    const double e = rel_err(age_single_state(1, 0.1), 221.0 / 11.0);
    t.expect(e <= 1e-9, e);
    return t.result("single_state_anchors");
}

CheckResult boundary_consistency(const ValidateOptions &o) {
    RandomScenarios gen(o.seed);
    Tally t;
    for (int k = 0; k < 100; ++k) {
        const auto [mb, mg] = gen.ordered_pair();
        const GEServiceScenario s(gen.log_rate(), mb, mg);
        double e = rel_err(age_ge_service(s, TransitionMatrix(1, 0)).delta,
                           age_single_state(s.lambda(), mg));
        t.expect(e <= 1e-12, e);
        e = rel_err(age_ge_service(s, TransitionMatrix(0, 1)).delta,
                    age_single_state(s.lambda(), mb));
        t.expect(e <= 1e-12, e);

        const auto [lb, lg] = gen.ordered_pair();
        const GEArrivalScenario a(gen.log_rate(), lb, lg);
        e = rel_err(age_ge_arrival(a, TransitionMatrix(1, 0)).delta,
                    age_single_state(lg, a.mu()));
        t.expect(e <= 1e-12, e);
        e = rel_err(age_ge_arrival(a, TransitionMatrix(0, 1)).delta,
                    age_single_state(lb, a.mu()));
        t.expect(e <= 1e-12, e);
    }
    return t.result("boundary_consistency");
}

CheckResult ray_invariance(const ValidateOptions &o) {
    RandomScenarios gen(o.seed + 1);
    Tally t;
    for (int k = 0; k < 100; ++k) {
        const auto [lb, lg] = gen.ordered_pair();
        const GEArrivalScenario a(gen.log_rate(), lb, lg);
        const double p = gen.open_unit(), q = gen.open_unit();
        const double base = age_ge_arrival(a, TransitionMatrix(p, q)).delta;
        for (double scale : {0.5, 2.0}) {
            if (p * scale > 1.0 || q * scale > 1.0)
                continue;
            const double e =
                rel_err(age_ge_arrival(a, TransitionMatrix(p * scale, q * scale)).delta, base);
            t.expect(e <= 1e-12, e);
        }
    }
    return t.result("ray_invariance");
}

CheckResult time_rescaling(const ValidateOptions &o) {
    RandomScenarios gen(o.seed + 2);
    Tally t;
    for (int k = 0; k < 100; ++k) {
        const auto [mb, mg] = gen.ordered_pair();
        const GEServiceScenario s(gen.log_rate(), mb, mg);
        const auto [lb, lg] = gen.ordered_pair();
        const GEArrivalScenario a(gen.log_rate(), lb, lg);
        const TransitionMatrix P(gen.open_unit(), gen.open_unit());
        const double scale = gen.log_rate();
        double e = rel_err(age_ge_service(s.scaled(scale), P).delta,
                           age_ge_service(s, P).delta / scale);
        t.expect(e <= 1e-12, e);
        e = rel_err(age_ge_arrival(a.scaled(scale), P).delta, age_ge_arrival(a, P).delta / scale);
        t.expect(e <= 1e-12, e);
    }
    return t.result("time_rescaling");
}

CheckResult monotonicity_grid(const ValidateOptions &) {
    Tally t;
    for (const Scenario s : {Scenario{kService}, Scenario{kArrival}}) {
        const auto rep = verify_monotonicity(s, 9);
        t.evaluated += rep.points.size();
        t.failed += rep.violations.size();
    }
    return t.result("monotonicity_grid");
}

CheckResult sign_condition(const ValidateOptions &) {
    Tally t;
    std::vector<double> grid;
    for (int k = 0; k < 10; ++k)
        grid.push_back(0.01 * std::pow(1e4, k / 9.0));
    for (double lambda : grid)
        for (double mu_b : grid)
            for (double mu_g : grid) {
                if (!(mu_g > mu_b))
                    continue;
                const GEServiceScenario s(lambda, mu_b, mu_g);
                for (double q : {0.01, 0.5, 0.99})
                    t.expect(lemma1_sign_condition(s, q) < 0.0);
            }
    return t.result("sign_condition");
}

CheckResult constrained_corners(const ValidateOptions &) {
    Tally t;
    const double eps = default_epsilon;
    const CostModel low(1, 2, 1.8), high(1, 2, 1.2);
    const auto a = optimal_constrained(kService, low, eps);
    t.expect(std::abs(*a.alpha - 0.25) <= 1e-12 && std::abs(a.p_star - (1 - eps)) <= 1e-12 &&
             std::abs(a.q_star - 0.25 * (1 - eps)) <= 1e-12);
    t.expect(std::abs(average_cost(TransitionMatrix(a.p_star, a.q_star), low) - 1.8) <= 1e-9);
    const auto b = optimal_constrained(kService, high, eps);
    t.expect(std::abs(*b.alpha - 4) <= 1e-12 && std::abs(b.p_star - 0.25 * (1 - eps)) <= 1e-12 &&
             std::abs(b.q_star - (1 - eps)) <= 1e-12);
    t.expect(std::abs(average_cost(TransitionMatrix(b.p_star, b.q_star), high) - 1.2) <= 1e-9);
    const auto c = optimal_constrained(kArrival, CostModel(1, 2, 1.5), eps);
    t.expect(c.constant_along_line);
    return t.result("constrained_corners");
}

std::vector<std::pair<Scenario, TransitionMatrix>> sim_grid() {
    std::vector<std::pair<Scenario, TransitionMatrix>> grid;
    for (const Scenario s : {Scenario{kService}, Scenario{kArrival}})
        for (double q : {0.1, 0.5, 0.9})
            for (double p : {0.1, 0.5, 0.9})
                grid.emplace_back(s, TransitionMatrix(p, q));
    return grid;
}

SimConfig sim_config(const ValidateOptions &o, const Scenario &s, const TransitionMatrix &P) {
    SimConfig cfg{.scenario = s, .P = P};
    cfg.num_cycles = o.cycles;
    cfg.replications = o.replications;
    cfg.seed = o.seed;
    return cfg;
}

CheckResult oracle_agreement(const ValidateOptions &o) {
    Tally t;
    for (const auto &[s, P] : sim_grid()) {
        const auto r = simulate_cycles(sim_config(o, s, P));
        const double exact = age(s, P).delta;
        const double z = std::abs(r.delta_hat - exact) / r.std_error;
        t.expect(z <= 3.0 && r.std_error / exact < 0.01, z);
    }
    return t.result("oracle_agreement");
}

CheckResult partition_equivalence(const ValidateOptions &o) {
    Tally t;
    for (const auto &[s, P] : sim_grid()) {
        auto cfg = sim_config(o, s, P);
        cfg.replications = 1;
        const auto saw = simulate_cycles(cfg).per_replication.front();
        const auto trap = simulate_area_paper_partition(cfg).per_replication.front();
        const double bound = 10.0 * std::max(saw.max_cycle_area, trap.max_cycle_area) / trap.time;
        const double diff = std::abs(saw.delta_hat - trap.delta_hat);
        t.expect(diff < bound, diff / bound);
    }
    return t.result("partition_equivalence");
}

using Check = std::function<CheckResult(const ValidateOptions &)>;

const std::vector<std::pair<std::string, Check>> &checks() {
    static const std::vector<std::pair<std::string, Check>> all = {
        {"single_state_anchors", single_state_anchors},
        {"boundary_consistency", boundary_consistency},
        {"ray_invariance", ray_invariance},
        {"time_rescaling", time_rescaling},
        {"monotonicity_grid", monotonicity_grid},
        {"sign_condition", sign_condition},
        {"constrained_corners", constrained_corners},
        {"oracle_agreement", oracle_agreement},
        {"partition_equivalence", partition_equivalence},
    };
    return all;
}

constexpr std::size_t kAnalyticChecks = 7;

} // namespace

std::vector<std::string> validation_check_names(bool quick) {
    std::vector<std::string> names;
    const auto n = quick ? kAnalyticChecks : checks().size();
    for (std::size_t i = 0; i < n; ++i)
        names.push_back(checks()[i].first);
    return names;
}

ValidateReport run_validation(const ValidateOptions &opts) {
    ValidateReport report;
    const auto n = opts.quick ? kAnalyticChecks : checks().size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto &[name, fn] = checks()[i];
        CheckResult r;
        try {
            r = fn(opts);
        } catch (const std::exception &e) {
            r = {name, false, std::string("exception: ") + e.what()};
        }
        if (name == opts.inject_fault)
            r = {name, false, "injected fault"};
        report.checks.push_back(std::move(r));
    }
    return report;
}

} // namespace geaoi::cli
