#include <gtest/gtest.h>

#include <random>

#include <jostspec/branchmath.hpp>
#include <jostspec/scaled.hpp>

using namespace jostspec;

TEST(Branch, SqPlusInUpperHalfPlaneAndSquaresBack) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int i = 0; i < 20000; ++i) {
    cplx w(u(rng), u(rng));
    cplx r = sq_plus(w);
    EXPECT_GE(r.imag(), 0.0);
    EXPECT_NEAR(std::abs(r * r - w), 0.0, 1e-13 * std::abs(w));
  }
}

TEST(Branch, SqMinusArgumentRange) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int i = 0; i < 20000; ++i) {
    cplx w(u(rng), u(rng));
    cplx r = sq_minus(w);
    double a = std::atan2(r.imag(), r.real());
    EXPECT_GE(a, -std::numbers::pi / 2 - 1e-15);
    EXPECT_LT(a, std::numbers::pi / 2);
    EXPECT_NEAR(std::abs(r * r - w), 0.0, 1e-13 * std::abs(w));
  }
}

TEST(Branch, CutOnNegativeAxis) {
  // arg- = -pi there, so the root is -i sqrt|x|; arg+ = pi gives +i sqrt|x|
  EXPECT_EQ(sq_minus(cplx(-4.0, 0.0)), cplx(0.0, -2.0));
  EXPECT_EQ(sq_minus(cplx(-4.0, -0.0)), cplx(0.0, -2.0));
  EXPECT_EQ(sq_plus(cplx(-4.0, 0.0)), cplx(0.0, 2.0));
  EXPECT_EQ(sq_plus(cplx(-4.0, -0.0)), cplx(0.0, 2.0));
  EXPECT_DOUBLE_EQ(arg_plus(cplx(1.0, -1e-300)), 2 * std::numbers::pi - 1e-300);
  EXPECT_DOUBLE_EQ(arg_minus(cplx(-1.0, 0.0)), -std::numbers::pi);
}

TEST(Branch, DistanceToHalfLine) {
  EXPECT_DOUBLE_EQ(dist_to_halfline(cplx(3, -2)), 2.0);
  EXPECT_DOUBLE_EQ(dist_to_halfline(cplx(-3, 4)), 5.0);
  EXPECT_DOUBLE_EQ(dist_to_halfline(cplx(0, 0)), 0.0);
  EXPECT_NEAR(im_sqrt_plus(cplx(0, 2)), 1.0, 1e-15);
}

TEST(Branch, SincMatchesDirectFormula) {
  for (double x : {1e-8, 1e-4, 9e-4, 1.1e-3, 0.3, 2.0}) {
    cplx z(x, 0.7 * x);
    EXPECT_NEAR(std::abs(sinc(z) - std::sin(z) / z), 0.0, 1e-15);
  }
  EXPECT_EQ(sinc(cplx(0, 0)), cplx(1, 0));
}

TEST(Scaled, ProductsAndSumsAgreeWithDirectArithmetic) {
  ScaledComplex a{cplx(1.5, -0.5), 3.0}, b{cplx(-0.25, 2.0), -1.0};
  EXPECT_NEAR(std::abs((a * b).value() - a.value() * b.value()), 0.0, 1e-12);
  EXPECT_NEAR(std::abs((a + b).value() - (a.value() + b.value())), 0.0, 1e-12);
  EXPECT_NEAR(std::abs((a / b).value() - a.value() / b.value()), 0.0, 1e-12);
}

TEST(Scaled, HugeExponentsStayFinite) {
  auto e = ScaledComplex::from_exp(cplx(5000.0, 1.0));
  EXPECT_NEAR(e.log_abs(), 5000.0, 1e-12);
  auto p = e * e;
  EXPECT_NEAR(p.log_abs(), 10000.0, 1e-9);
  EXPECT_NEAR(p.phase(), 2.0, 1e-12);
  EXPECT_EQ(ScaledComplex().log_abs(), -std::numeric_limits<double>::infinity());
}
