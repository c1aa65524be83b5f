#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sumdiff/optimize.hpp"

using sumdiff::maximize_a;
using sumdiff::maximize_r;
using sumdiff::theta_objective;

TEST(ThetaObjective, BinarySupportAllRatesVanish) {
    const auto p = theta_objective(1, 1.0, 0.5);
    EXPECT_EQ(p.numeratorTerms.I_ar_1, 0.0);
    EXPECT_EQ(p.numeratorTerms.ar_I_inner, 0.0);
    EXPECT_EQ(p.numeratorTerms.oneMinusAr_I_outer, 0.0);
    EXPECT_EQ(p.numeratorTerms.I_2r_2B, 0.0);
    EXPECT_NEAR(p.thetaMinus1, (1.5 * std::log(2.0) - std::log(3.0)) / std::log(3.0), 1e-15);
    EXPECT_NEAR(p.thetaMinus1, -0.05360536964281384, 1e-15);
}

TEST(ThetaObjective, TermByTermOracle) {
    const std::int64_t B = 2;
    const double r = 1.0;
    const double a = 0.9;
    const double ar = a * r;
    const double numerator = std::log(2.0) + ar * std::log(2.0) + (1 - ar) * std::log(3.0) -
                             sumdiff::rate_value(ar, 1) - ar * sumdiff::rate_value((1 - a) / a, 1) -
                             (1 - ar) * sumdiff::rate_value(r / (1 - ar), 2) - std::log(5.0) +
                             sumdiff::rate_value(2 * r, 4);
    const auto p = theta_objective(B, r, a);
    EXPECT_NEAR(p.thetaMinus1, numerator / std::log(5.0), 1e-15);
    // 30-digit reference
    EXPECT_NEAR(p.thetaMinus1, -0.30599541177937821, 1e-12);
}

TEST(ThetaObjective, DecompositionConsistency) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> drawB(1, 10);
    std::uniform_real_distribution<double> drawR(0.3, 3.0), unit(0.01, 0.99);
    for (int trial = 0; trial < 300; ++trial) {
        const auto B = drawB(rng);
        const double r = drawR(rng);
        const double a = unit(rng) * sumdiff::a_upper(r);
        const auto p = theta_objective(B, r, a);
        EXPECT_NEAR(p.recompute(), p.thetaMinus1, 1e-14 * std::max(1.0, std::abs(p.thetaMinus1)));
    }
}

TEST(ThetaObjective, RejectsOutOfDomain) {
    EXPECT_THROW(theta_objective(3, 1.0, 0.0), std::invalid_argument);
    EXPECT_THROW(theta_objective(3, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(theta_objective(3, 2.0, 0.5), std::invalid_argument);
    EXPECT_THROW(theta_objective(0, 1.0, 0.5), std::invalid_argument);
    EXPECT_THROW(theta_objective(3, -1.0, 0.5), std::invalid_argument);
}

TEST(MaximizeA, DomainShape) {
    const auto res = maximize_a(1, 2.0, 1e-8);
    EXPECT_GT(res.aStar, 0.0);
    EXPECT_LT(res.aStar, 0.5);
    EXPECT_TRUE(std::isfinite(res.value));
}

TEST(MaximizeA, ToleranceRefinement) {
    const auto coarse = maximize_a(3, 1.0, 1e-6);
    const auto fine = maximize_a(3, 1.0, 1e-10);
    EXPECT_NEAR(coarse.value, fine.value, 1e-5);
    EXPECT_GE(fine.value, coarse.value - 1e-12);
}

TEST(MaximizeA, BeatsGridSearch) {
    const std::int64_t B = 4;
    const double r = 0.8;
    const auto res = maximize_a(B, r, 1e-10);
    double best = -1e9;
    for (int i = 1; i < 400; ++i) {
        best = std::max(best, theta_objective(B, r, sumdiff::a_upper(r) * i / 400.0).thetaMinus1);
    }
    EXPECT_GE(res.value, best - 1e-14);
}

TEST(MaximizeR, Table1Cells) {
    EXPECT_NEAR(maximize_r(3, 1e-6).thetaMinus1, 0.168700179627153, 1e-8);
    EXPECT_NEAR(maximize_r(10, 1e-10).thetaMinus1, 0.168465310634737, 1e-8);
    EXPECT_NEAR(maximize_r(5, 1e-4).thetaMinus1, 0.173077285664668, 1e-6);
}

TEST(MaximizeR, ReportIsConsistentAndInterior) {
    for (std::int64_t B = 3; B <= 10; ++B) {
        const auto rep = maximize_r(B, 1e-10);
        EXPECT_EQ(rep.B, B);
        EXPECT_FALSE(rep.boundaryHit);
        EXPECT_GT(rep.rStar, sumdiff::kRMin);
        EXPECT_LT(rep.rStar, sumdiff::kRMax);
        EXPECT_GT(rep.aStar, 0.0);
        EXPECT_LT(rep.aStar, sumdiff::a_upper(rep.rStar));
        EXPECT_NEAR(theta_objective(B, rep.rStar, rep.aStar).thetaMinus1, rep.thetaMinus1, 1e-12);
    }
}

TEST(MaximizeR, Deterministic) {
    const auto first = maximize_r(6, 1e-8);
    const auto second = maximize_r(6, 1e-8);
    EXPECT_EQ(first.thetaMinus1, second.thetaMinus1);
    EXPECT_EQ(first.rStar, second.rStar);
    EXPECT_EQ(first.aStar, second.aStar);
}

TEST(MaximizeR, BinarySupportIsTotal) {
    const auto rep = maximize_r(1, 1e-8);
    EXPECT_TRUE(std::isfinite(rep.thetaMinus1));
}

TEST(Table1, ShapeOrderAndArgmax) {
    const auto t = sumdiff::table1({1e-10}, 3, 10);
    ASSERT_EQ(t.cells.size(), 8u);
    for (std::size_t i = 0; i < t.Bs.size(); ++i) {
        EXPECT_EQ(t.at(i, 0).B, static_cast<std::int64_t>(3 + i));
    }
    EXPECT_EQ(t.best().B, 5);
}

TEST(Table1, SerialAndParallelAgree) {
    const auto par = sumdiff::table1({1e-6, 1e-8}, 3, 5, true);
    const auto ser = sumdiff::table1({1e-6, 1e-8}, 3, 5, false);
    for (std::size_t k = 0; k < par.cells.size(); ++k) {
        EXPECT_EQ(par.cells[k].thetaMinus1, ser.cells[k].thetaMinus1);
    }
}

TEST(Table1, ToleranceStabilizationAtB5) {
    const auto t = sumdiff::table1({1e-8, 1e-10}, 5, 5);
    EXPECT_NEAR(t.at(0, 0).thetaMinus1, t.at(0, 1).thetaMinus1, 1e-12);
}

TEST(Table1, RejectsBadArguments) {
    EXPECT_THROW(sumdiff::table1({}), std::invalid_argument);
    EXPECT_THROW(sumdiff::table1({1e-6}, 0, 3), std::invalid_argument);
    EXPECT_THROW(sumdiff::table1({1e-6}, 5, 3), std::invalid_argument);
}
