#include <gtest/gtest.h>

#include <jostspec/potentials.hpp>
#include <jostspec/quadrature.hpp>

using namespace jostspec;

TEST(Quadrature, PolynomialAndTail) {
  EXPECT_NEAR(integrate([](double x) { return x * x; }, 0, 1).value, 1.0 / 3, 1e-14);
  HalfLineIntegrand f;
  f.in_x = [](double x) { return 1 / ((1 + x) * (1 + x)); };
  auto r = integrate_halfline(f, 0.0, 1e-12);
  EXPECT_FALSE(r.divergent);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(std::abs(r.value - 1.0), r.error);
  EXPECT_LT(r.error, 1e-5);
  HalfLineIntegrand g;
  g.in_x = [](double x) { return 1 / (1 + x); };
  EXPECT_TRUE(integrate_halfline(g, 0.0, 1e-12).divergent);
}

TEST(Potential, StepValidation) {
  EXPECT_THROW(Potential::step({0, 1}, {}), DomainError);
  EXPECT_THROW(Potential::step({0, 1, 1}, {1, 2}), DomainError);
  EXPECT_THROW(Potential::step({0.5, 1}, {1}), DomainError);
  EXPECT_THROW(Potential::barrier(-1, 2), DomainError);
  EXPECT_NO_THROW(Potential::zero());
}

TEST(Potential, L1Norms) {
  EXPECT_DOUBLE_EQ(Potential::barrier(2.5, 4).l1_norm(), 10.0);
  auto q = Potential::step({0, 1, 3}, {cplx(3, 4), cplx(0, -1)});
  EXPECT_NEAR(q.l1_norm(), 5 + 2, 1e-15);
  EXPECT_DOUBLE_EQ(Potential::zero().l1_norm(), 0.0);
  // c s sqrt(pi/2)(1 + erf(x0/(s sqrt 2))) on the half-line
  auto g = Potential::gaussian_bump(cplx(0.6, 0.8), 1.5, 0.4);
  double exact = 0.4 * std::sqrt(std::numbers::pi / 2) * (1 + std::erf(1.5 / (0.4 * std::numbers::sqrt2)));
  EXPECT_NEAR(g.l1_norm(), exact, 1e-9);
}

TEST(Potential, PolynomialWeightNormOfBarrier) {
  // int_0^3 (1 + x^{1/2}) dx = 3 + (2/3) 3^{3/2}
  double expect = 3 + 2.0 / 3 * std::pow(3.0, 1.5);
  EXPECT_NEAR(weighted_norm(Potential::barrier(1, 3), WeightPair::poly(0.5)), expect, 1e-10);
  EXPECT_NEAR(weighted_norm(Potential::barrier(2, 1), WeightPair::unit()), 2.0, 1e-12);
}

TEST(Potential, TruncationAndShift) {
  auto q = Potential::step({0, 1, 3}, {cplx(1, 1), cplx(0, 2)});
  auto t = truncate(q, 2.0);
  EXPECT_NEAR(t.l1_norm(), std::sqrt(2.0) + 2.0, 1e-14);
  EXPECT_NEAR(truncate(q, 10).l1_norm(), q.l1_norm(), 1e-14);
  LinePotential ql({-1.0, 1.0}, {cplx(0, 3)});
  auto s = shift_superpose(q, ql, 10.0).potential;
  EXPECT_NEAR(s.l1_norm(), q.l1_norm() + 6.0, 1e-13);
  EXPECT_DOUBLE_EQ(s.support_end(), 11.0);
}

TEST(Potential, EvenExtension) {
  auto e = even_extension(Potential::barrier(1, 2));
  EXPECT_DOUBLE_EQ(e.left(), -2.0);
  EXPECT_DOUBLE_EQ(e.right(), 2.0);
  EXPECT_NEAR(e.l1_norm(), 4.0, 1e-15);
}
