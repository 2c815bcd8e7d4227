#include <geaoi/analytic.hpp>
#include <geaoi/error.hpp>
#include <geaoi/optimize.hpp>

#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"

using namespace geaoi;

namespace {
const GEServiceScenario kFigService(1.0, 0.1, 1.0);
const GEArrivalScenario kArrival(1.0, 0.1, 1.0);
} // namespace

TEST(Classify, BudgetExamples) {
    auto c = classify(CostModel(1, 2, 1.8));
    EXPECT_EQ(c.feasibility, Feasibility::Binding);
    EXPECT_NEAR(*c.alpha, 0.25, 1e-15);

    c = classify(CostModel(1, 2, 1.2));
    EXPECT_EQ(c.feasibility, Feasibility::Binding);
    EXPECT_NEAR(*c.alpha, 4.0, 1e-12);

    c = classify(CostModel(1, 2, 3));
    EXPECT_EQ(c.feasibility, Feasibility::Unconstrained);
    EXPECT_FALSE(c.alpha.has_value());
}

TEST(Classify, Edges) {
    EXPECT_EQ(classify(CostModel(1, 2, 2)).feasibility, Feasibility::Unconstrained);
    EXPECT_EQ(classify(CostModel(1, 2, 1)).feasibility, Feasibility::Infeasible);
    EXPECT_EQ(classify(CostModel(1, 2, 0.5)).feasibility, Feasibility::Infeasible);
    EXPECT_EQ(classify(CostModel(1, 1, 1)).feasibility, Feasibility::Unconstrained);
    EXPECT_EQ(classify(CostModel(1, 1, 0.9)).feasibility, Feasibility::Infeasible);
}

TEST(OptimalUnconstrained, ApproachesGoodStateBaseline) {
    for (const Scenario s : {Scenario{kFigService}, Scenario{kArrival}}) {
        const auto r = optimal_unconstrained(s, 1e-6);
        EXPECT_EQ(r.p_star, 1 - 1e-6);
        EXPECT_EQ(r.q_star, 1e-6);
        EXPECT_FALSE(r.attained);
        EXPECT_NEAR(r.delta_star, 2.5, 1e-4);
        EXPECT_DOUBLE_EQ(r.delta_star, age(s, TransitionMatrix(r.p_star, r.q_star)).delta);
    }
}

TEST(OptimalUnconstrained, MonotoneApproach) {
    for (const Scenario s : {Scenario{kFigService}, Scenario{kArrival}}) {
        double prev = optimal_unconstrained(s, 0.4).delta_star;
        for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-8}) {
            const double d = optimal_unconstrained(s, eps).delta_star;
            EXPECT_LE(d, prev);
            prev = d;
        }
    }
}

TEST(OptimalUnconstrained, RejectsEpsilon) {
    EXPECT_THROW(optimal_unconstrained(kFigService, 0.0), InvalidArgument);
    EXPECT_THROW(optimal_unconstrained(kFigService, 0.5), InvalidArgument);
}

TEST(OptimalConstrained, ServiceCornerAlphaQuarter) {
    const CostModel cm(1, 2, 1.8);
    const double eps = 1e-6;
    const auto r = optimal_constrained(kFigService, cm, eps);
    EXPECT_EQ(r.feasibility, Feasibility::Binding);
    EXPECT_NEAR(*r.alpha, 0.25, 1e-15);
    EXPECT_NEAR(r.p_star, 1 - eps, 1e-15);
    EXPECT_NEAR(r.q_star, 0.25 * (1 - eps), 1e-12);
    EXPECT_FALSE(r.attained);
    EXPECT_FALSE(r.constant_along_line);
    EXPECT_NEAR(average_cost(TransitionMatrix(r.p_star, r.q_star), cm), 1.8, 1e-9);
}

TEST(OptimalConstrained, ServiceCornerAlphaFour) {
    const CostModel cm(1, 2, 1.2);
    const double eps = 1e-6;
    const auto r = optimal_constrained(kFigService, cm, eps);
    EXPECT_NEAR(*r.alpha, 4.0, 1e-12);
    EXPECT_NEAR(r.p_star, 0.25 * (1 - eps), 1e-12);
    EXPECT_NEAR(r.q_star, 1 - eps, 1e-12);
    EXPECT_LE(r.q_star, 1.0);
    EXPECT_NEAR(average_cost(TransitionMatrix(r.p_star, r.q_star), cm), 1.2, 1e-9);
}

TEST(OptimalConstrained, TieAtAlphaOne) {
    const auto r = optimal_constrained(kFigService, CostModel(1, 2, 1.5));
    EXPECT_TRUE(r.tie);
    EXPECT_NEAR(r.p_star, 1.0, 1e-5);
    EXPECT_NEAR(r.q_star, 1.0, 1e-5);
}

TEST(OptimalConstrained, ArrivalConstantAlongLine) {
    const auto r = optimal_constrained(kArrival, CostModel(1, 2, 1.5));
    EXPECT_TRUE(r.constant_along_line);
    EXPECT_TRUE(r.attained);
    EXPECT_NEAR(age_ge_arrival(kArrival, TransitionMatrix(0.3, 0.3)).delta,
                age_ge_arrival(kArrival, TransitionMatrix(0.9, 0.9)).delta, 1e-12);
    EXPECT_NEAR(r.delta_star, age_ge_arrival(kArrival, TransitionMatrix(0.3, 0.3)).delta, 1e-12);
}

TEST(OptimalConstrained, UnconstrainedBudgetDelegates) {
    const auto a = optimal_constrained(kFigService, CostModel(1, 2, 3));
    const auto b = optimal_unconstrained(kFigService);
    EXPECT_EQ(a.feasibility, Feasibility::Unconstrained);
    EXPECT_EQ(a.p_star, b.p_star);
    EXPECT_EQ(a.delta_star, b.delta_star);
}

TEST(OptimalConstrained, InfeasibleBudgetThrows) {
    EXPECT_THROW(optimal_constrained(kFigService, CostModel(1, 2, 0.5)), InfeasibleBudget);
    EXPECT_THROW(optimal_constrained(kArrival, CostModel(1, 2, 1.0)), InfeasibleBudget);
}

TEST(OptimalConstrained, BindingInvariantsOverRandomBudgets) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 500; ++k) {
        const double c_b = 5 * u(rng), c_g = c_b + 0.1 + 5 * u(rng);
        const double c = c_b + (c_g - c_b) * (0.001 + 0.998 * u(rng));
        const CostModel cm(c_b, c_g, c);
        for (const Scenario s : {Scenario{kFigService}, Scenario{kArrival}}) {
            const auto r = optimal_constrained(s, cm);
            ASSERT_EQ(r.feasibility, Feasibility::Binding);
            EXPECT_NEAR(r.q_star, *r.alpha * r.p_star, 1e-12);
            EXPECT_NEAR(average_cost(TransitionMatrix(r.p_star, r.q_star), cm), c, 1e-9);
            EXPECT_LE(r.p_star, 1.0);
            EXPECT_LE(r.q_star, 1.0);
        }
    }
}

TEST(OptimalConstrained, ServiceLineNonIncreasingInP) {
    for (double alpha : {0.25, 1.0, 4.0}) {
        const double p_max = std::min(1.0, 1.0 / alpha);
        double prev = std::numeric_limits<double>::infinity();
        for (int k = 1; k <= 50; ++k) {
            const double d = age_on_line(kFigService, alpha, p_max * k / 50.0);
            EXPECT_LE(d, prev);
            prev = d;
        }
    }
}

TEST(OptimalConstrained, ArrivalLineSpread) {
    const double alpha = *classify(CostModel(1, 2, 1.5)).alpha;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int k = 1; k <= 50; ++k) {
        const double d = age_on_line(kArrival, alpha, k / 50.0);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    EXPECT_LT(hi - lo, 1e-12 * lo);
}

TEST(Lemma1SignCondition, Examples) {
    EXPECT_LT(lemma1_sign_condition(kFigService, 0.5), 0.0);
    EXPECT_LT(lemma1_sign_condition(kFigService, 0.01), 0.0);
    EXPECT_LT(lemma1_sign_condition(kFigService, 0.99), 0.0);
}

TEST(Lemma1SignCondition, MomentContrastNegativeOnGrid) {
    const auto grid = oracle::logspace(0.01, 100.0, 10);
    for (double lambda : grid)
        for (double mu_b : grid)
            for (double mu_g : grid)
                if (mu_g > mu_b)
                    EXPECT_LT(cycle_moment_contrast(GEServiceScenario(lambda, mu_b, mu_g)), 0.0);
}

TEST(Lemma1SignCondition, MatchesFiniteDifferenceDerivative) {
    // d(delta)/dp = q * condition / (q E[Y_b] + p E[Y_g])^2
    for (double q : {0.05, 0.3, 0.8}) {
        for (double p : {0.1, 0.5, 0.9}) {
            const auto f = [&](double x) {
                return age_ge_service(kFigService, TransitionMatrix(x, q)).delta;
            };
            const double numeric = oracle::derivative(f, p);
            const auto b = age_ge_service(kFigService, TransitionMatrix(p, q));
            const double denom = q * b.ey_b + p * b.ey_g;
            const double predicted = q * lemma1_sign_condition(kFigService, q) / (denom * denom);
            EXPECT_NEAR(numeric, predicted, 1e-6 * std::abs(predicted));
        }
    }
}

TEST(VerifyMonotonicity, NoViolationsOnNineByNine) {
    for (const Scenario s : {Scenario{kFigService}, Scenario{kArrival}}) {
        const auto rep = verify_monotonicity(s, 9);
        EXPECT_EQ(rep.points.size(), 81u);
        EXPECT_TRUE(rep.ok());
    }
}

TEST(VerifyMonotonicity, ReportShape) {
    const auto rep = verify_monotonicity(kArrival, 3);
    ASSERT_EQ(rep.points.size(), 9u);
    EXPECT_DOUBLE_EQ(rep.points[0].p, 0.25);
    EXPECT_DOUBLE_EQ(rep.points[0].q, 0.25);
    EXPECT_DOUBLE_EQ(rep.points[1].p, 0.5);
    EXPECT_DOUBLE_EQ(rep.points[3].q, 0.5);
    EXPECT_THROW(verify_monotonicity(kArrival, 2), InvalidArgument);
}

TEST(VerifyMonotonicity, FlagsFlatSurface) {
    // Identical states make delta constant up to rounding, so strict
    // comparisons fail for some adjacent pairs.
    const auto flat = GEServiceScenario::allowing_equal_rates(1.0, 1.0, 1.0);
    const auto rep = verify_monotonicity(flat, 4);
    EXPECT_FALSE(rep.ok());
    EXPECT_LE(rep.violations.size(), 2u * 4u * 3u);
    for (const auto &v : rep.violations) {
        EXPECT_TRUE(v.axis == 'p' || v.axis == 'q');
        EXPECT_NEAR(v.from.delta, v.to.delta, 1e-12);
    }
}
