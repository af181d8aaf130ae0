#include <gtest/gtest.h>

#include <random>

#include <jostspec/jost.hpp>

#include "oracles.hpp"

using namespace jostspec;

namespace {

double rel(cplx a, oracle::lc b) {
  cplx bd(static_cast<double>(b.real()), static_cast<double>(b.imag()));
  return std::abs(a - bd) / std::max(1.0, std::abs(bd));
}

struct Case {
  std::vector<double> bp;
  std::vector<cplx> v;
};

std::vector<Case> cases() {
  return {{{0, 1}, {cplx(0, 1)}},
          {{0, 0.5, 1.5, 2.0}, {cplx(1, 0.5), cplx(-0.7, 0.2), cplx(0, 2)}},
          {{0, 0.3, 0.6, 1.2, 4.0}, {cplx(0.2, -0.1), cplx(0, 0.4), cplx(-0.5, 0), cplx(0.1, 0.3)}}};
}

std::vector<cplx> grid() {
  std::vector<cplx> g;
  for (double r : {0.2, 1.0, 3.5})
    for (double t : {0.05, 0.8, 1.6, 2.5, 3.1}) g.push_back(std::polar(r, t));
  return g;
}

}  // namespace

TEST(Jost, FreeCaseIsOne) {
  auto q = Potential::zero();
  for (cplx z : grid()) {
    auto e = jost_transfer_matrix(q, z);
    EXPECT_NEAR(std::abs(e.actual_value() - cplx(1, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(e.actual_derivative() - cplx(0, 1) * z), 0.0, 1e-15);
  }
}

TEST(Jost, TransferMatrixMatchesDirectPropagation) {
  for (const auto& c : cases()) {
    auto q = Potential::step(c.bp, c.v);
    for (cplx z : grid()) EXPECT_LT(rel(jost_transfer_matrix(q, z).actual_value(), oracle::step_jost(c.bp, c.v, z)), 1e-12);
  }
}

TEST(Jost, SeriesAndOdeMatchDirectPropagation) {
  for (const auto& c : cases()) {
    auto q = Potential::step(c.bp, c.v);
    for (cplx z : grid()) {
      auto o = oracle::step_jost(c.bp, c.v, z);
      auto s = jost_series(q, z);
      auto d = jost_ode(q, z);
      EXPECT_LT(rel(s.actual_value(), o), 1e-8) << z;
      EXPECT_LT(rel(d.actual_value(), o), 1e-8) << z;
    }
  }
}

TEST(Jost, BarrierClosedForm) {
  auto q = Potential::barrier(1.0, 6.0);
  for (cplx z : grid()) EXPECT_LT(rel(jost_transfer_matrix(q, z).actual_value(), oracle::barrier_jost(1, 6, {z.real(), z.imag()})), 1e-11);
}

TEST(Jost, LargeBarrierKeepsLogScale) {
  // |e+| ~ e^{-R Im z} = e^{-2500} here: past double range, inside long double
  auto q = Potential::barrier(1.0, 5000.0);
  cplx z(1.0, 0.5);
  auto e = jost_transfer_matrix(q, z);
  long double expect = std::log(std::abs(oracle::barrier_jost(1, 5000, {1.0L, 0.5L})));
  EXPECT_LT(expect, -2000.0L);
  EXPECT_NEAR(std::log(std::abs(e.value)) + e.log_scale, static_cast<double>(expect), 1e-8);
}

TEST(Jost, UpperBoundHolds) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (const auto& c : cases()) {
    auto q = Potential::step(c.bp, c.v);
    for (cplx z : grid()) {
      double lhs = std::abs(jost_transfer_matrix(q, z).actual_value() - cplx(1, 0));
      EXPECT_LE(lhs, std::expm1(q.l1_norm() / std::abs(z)) * (1 + 1e-12));
      EXPECT_LE(lhs, jost_upper_bound(q, z) * (1 + 1e-12));
    }
  }
}

TEST(Jost, RejectsLowerHalfPlane) {
  auto q = Potential::barrier(1, 1);
  EXPECT_THROW(jost_transfer_matrix(q, cplx(1, -0.5)), DomainError);
  EXPECT_THROW(jost_transfer_matrix(q, cplx(0, 0)), DomainError);
}

TEST(Jost, LineWronskianFreeLimit) {
  // e+- = e^{+-izx}: W = -2iz
  auto ql = LinePotential::zero();
  for (cplx z : grid()) EXPECT_NEAR(std::abs(line_wronskian(ql, z).value() + cplx(0, 2) * z), 0.0, 1e-13 * std::abs(z));
}
