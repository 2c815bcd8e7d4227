#include <geaoi/chain.hpp>
#include <geaoi/error.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"

using geaoi::CostModel;
using geaoi::State;
using geaoi::TransitionMatrix;

TEST(TransitionMatrix, RejectsOutOfRangeProbabilities) {
    EXPECT_THROW(TransitionMatrix(-0.1, 0.5), geaoi::InvalidArgument);
    EXPECT_THROW(TransitionMatrix(0.5, 1.5), geaoi::InvalidArgument);
    EXPECT_THROW(TransitionMatrix(std::nan(""), 0.5), geaoi::InvalidArgument);
}

TEST(TransitionMatrix, RejectsReducibleChain) {
    try {
        TransitionMatrix(0.0, 0.0);
        FAIL() << "p = q = 0 accepted";
    } catch (const geaoi::InvalidArgument &e) {
        EXPECT_NE(std::string(e.what()).find("stationary distribution"), std::string::npos);
    }
}

TEST(TransitionMatrix, AdmitsClosedSquareCorners) {
    EXPECT_NO_THROW(TransitionMatrix(1.0, 0.0));
    EXPECT_NO_THROW(TransitionMatrix(0.0, 1.0));
    EXPECT_NO_THROW(TransitionMatrix(1.0, 1.0));
}

TEST(StationaryDistribution, Examples) {
    auto s = geaoi::stationary_distribution(TransitionMatrix(0.5, 0.5));
    EXPECT_EQ(s.pi_b, 0.5);
    EXPECT_EQ(s.pi_g, 0.5);

    // q / (p + q) = 0.25 / 1.25
    s = geaoi::stationary_distribution(TransitionMatrix(1.0, 0.25));
    EXPECT_DOUBLE_EQ(s.pi_b, 0.2);
    EXPECT_DOUBLE_EQ(s.pi_g, 0.8);

    s = geaoi::stationary_distribution(TransitionMatrix(1.0, 0.0));
    EXPECT_EQ(s.pi_b, 0.0);
    EXPECT_EQ(s.pi_g, 1.0);
}

TEST(StationaryDistribution, SimplexAndPowerIterationAgreement) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 500; ++k) {
        const double p = u(rng), q = u(rng);
        if (p + q < 0.05)
            continue; // slow mixing for the power-iteration reference
        const auto s = geaoi::stationary_distribution(TransitionMatrix(p, q));
        EXPECT_EQ(s.pi_b + s.pi_g, 1.0);
        EXPECT_GE(s.pi_b, 0.0);
        EXPECT_LE(s.pi_b, 1.0);
        const auto ref = oracle::stationary_by_iteration(p, q);
        EXPECT_NEAR(s.pi_b, ref[0], 1e-12);
    }
}

TEST(NextState, ThresholdRule) {
    EXPECT_EQ(geaoi::next_state(State::Bad, TransitionMatrix(1.0, 0.3), 0.99), State::Good);
    EXPECT_EQ(geaoi::next_state(State::Good, TransitionMatrix(0.5, 0.0), 0.0), State::Good);
    EXPECT_EQ(geaoi::next_state(State::Bad, TransitionMatrix(0.4, 0.2), 0.39), State::Good);
    EXPECT_EQ(geaoi::next_state(State::Bad, TransitionMatrix(0.4, 0.2), 0.4), State::Bad);
    EXPECT_EQ(geaoi::next_state(State::Good, TransitionMatrix(0.4, 0.2), 0.19), State::Bad);
    EXPECT_EQ(geaoi::next_state(State::Good, TransitionMatrix(0.4, 0.2), 0.2), State::Good);
}

TEST(NextState, EmpiricalOccupancyMatchesStationary) {
    const TransitionMatrix P(0.4, 0.2);
    const double pi_b = geaoi::stationary_distribution(P).pi_b;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    constexpr int n = 1'000'000;
    State s = State::Bad;
    int bad = 0;
    for (int k = 0; k < n; ++k) {
        s = geaoi::next_state(s, P, u(rng));
        bad += s == State::Bad;
    }
    // Binomial variance inflated by the chain's autocorrelation (1 + r) / (1 - r),
    // r = 1 - p - q.
    const double r = 1.0 - P.p() - P.q();
    const double sigma = std::sqrt(pi_b * (1 - pi_b) * (1 + r) / (1 - r) / n);
    EXPECT_NEAR(static_cast<double>(bad) / n, pi_b, 3 * sigma);
}

TEST(CostModel, Validation) {
    EXPECT_THROW(CostModel(2.0, 1.0, 1.5), geaoi::InvalidArgument);
    EXPECT_THROW(CostModel(-1.0, 1.0, 0.5), geaoi::InvalidArgument);
    EXPECT_NO_THROW(CostModel(1.0, 1.0, 1.0));
}

TEST(AverageCost, Examples) {
    EXPECT_NEAR(geaoi::average_cost(TransitionMatrix(1.0, 0.25), CostModel(1, 2, 0)), 1.8, 1e-15);
    EXPECT_EQ(geaoi::average_cost(TransitionMatrix(0.5, 0.5), CostModel(3, 3, 0)), 3.0);
    EXPECT_NEAR(geaoi::average_cost(TransitionMatrix(0.25, 1.0), CostModel(1, 2, 0)), 1.2, 1e-15);
}

TEST(AverageCost, StaysWithinStateCosts) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 2000; ++k) {
        const double p = u(rng), q = u(rng) + 1e-9;
        const double c_b = 10 * u(rng), c_g = c_b + 10 * u(rng);
        const double c = geaoi::average_cost(TransitionMatrix(p, std::min(q, 1.0)),
                                             CostModel(c_b, c_g, 0));
        EXPECT_GE(c, c_b);
        EXPECT_LE(c, c_g);
    }
}
