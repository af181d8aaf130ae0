#include <gtest/gtest.h>

#include <jostspec/construction.hpp>
#include <jostspec/limits.hpp>

#include "oracles.hpp"

using namespace jostspec;

TEST(Limits, ShiftDeviationDecreases) {
  std::vector<cplx> grid{{-1, 0.5}, {0.5, 0.5}, {1, 1}, {2, 2}};
  auto t = shift_limit_check(Potential::barrier(1, 1), LinePotential({-1.0, 1.0}, {cplx(0, 1)}), {10, 20, 40}, grid);
  EXPECT_TRUE(t.strictly_decreasing());
}

TEST(Limits, CompactPotentialTruncatesExactly) {
  std::vector<cplx> grid{{-1, 0.5}, {1, 1}};
  EXPECT_TRUE(truncation_limit_check(Potential::barrier(1, 1), {10, 20}, grid).identically_zero());
}

TEST(Limits, ToyRootConvergesToTheLineRoot) {
  auto rep = track_shift_roots(Potential::barrier(1, 1), LinePotential({-1.0, 1.0}, {cplx(0, 1)}), {10, 20, 40, 80},
                               Box{-4, 4, 0.05, 4});
  ASSERT_EQ(rep.tracks.size(), 1u);
  EXPECT_EQ(rep.tracks[0].factor, "line");
  EXPECT_TRUE(rep.all_halving());
  EXPECT_LT(rep.tracks[0].errors.back(), 1e-15);
}

TEST(Construction, StageOneArithmetic) {
  // t = n log^2(n+2), gamma = t^-4, R = 1200 t^3
  long double t = std::pow(std::log(3.0L), 2);
  auto p = stage_parameters(1);
  EXPECT_NEAR(p.gamma, double(1 / (t * t * t * t)), 1e-15);
  EXPECT_NEAR(p.R, double(1200 * t * t * t), 1e-9);
  EXPECT_EQ(p.M_R, static_cast<long>(oracle::M_R(1 / (t * t * t * t), 1200 * t * t * t)));
  EXPECT_EQ(p.M_R, 2726);
  EXPECT_TRUE(p.bigr);
  // R = 1200 gamma^{-3/4}
  EXPECT_NEAR(p.R, 1200 * std::pow(p.gamma, -0.75), 1e-8);
  EXPECT_THROW(stage_parameters(0), DomainError);
}

TEST(Construction, ToyStagesAreAcceptedAndDisjoint) {
  auto st = build_stages(Profile::toy(), 3);
  ASSERT_EQ(st.stages.size(), 3u);
  for (const auto& s : st.stages) {
    EXPECT_TRUE(s.accepted);
    EXPECT_GE(s.worst_margin, 0);
    EXPECT_DOUBLE_EQ(s.center, s.X + s.R);
  }
  EXPECT_TRUE(supports_disjoint(st));
  EXPECT_TRUE(half_retention(st));
  EXPECT_FALSE(st.tracked.empty());
}

TEST(Construction, ApproximationTolerance) {
  EXPECT_NEAR(app_tolerance(1), 3 / (std::numbers::pi * std::numbers::pi), 1e-15);
  EXPECT_NEAR(app_distance(cplx(-1, 0.01), cplx(-1, 0.01)), 0.0, 1e-15);
  EXPECT_NEAR(app_distance(cplx(0, 4), cplx(0, 4.4)), 0.4 + (std::sqrt(2.2) - std::sqrt(2.0)), 1e-12);
}

TEST(Construction, GrowthSeries) {
  auto g = jensen_growth_report(10000);
  EXPECT_TRUE(g.partial_increasing);
  const auto& first = g.rows.front();
  EXPECT_EQ(first.n, 1);
  EXPECT_NEAR(first.contribution, first.gamma * first.R * std::log(first.R) / (64 * std::numbers::pi), 1e-12);
  EXPECT_NEAR(first.contribution, 37.8504977, 1e-6);
  EXPECT_EQ(g.rows.back().n, 10000);
  EXPECT_THROW(jensen_growth_report(0), DomainError);
}
