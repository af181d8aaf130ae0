#include <gtest/gtest.h>

#include <jostspec/spectra.hpp>
#include <jostspec/zeros.hpp>

#include "oracles.hpp"

using namespace jostspec;

namespace {

// |p| / (|p| + |p'|) as the relative modulus, like the Jost samplers
AnalyticFn poly(std::vector<cplx> roots) {
  return [roots](cplx z) -> AnalyticSample {
    cplx p = 1, dp = 0;
    for (cplx r : roots) {
      dp = dp * (z - r) + p;
      p *= z - r;
    }
    double a = std::abs(p);
    return {p, 0.0, a / (a + std::abs(dp))};
  };
}

}  // namespace

TEST(Zeros, WindingCountsPolynomialRoots) {
  WindingCounter wc(poly({cplx(0.3, 0.4), cplx(-0.5, 0.2), cplx(2, 2)}), WindingOptions{});
  EXPECT_EQ(wc.count(Box{-1, 1, 0.1, 1}), 2);
  EXPECT_EQ(wc.count(Box{-1, 3, 0.1, 3}), 3);
  EXPECT_EQ(wc.count(Box{1, 1.5, 0.1, 1}), 0);
}

TEST(Zeros, FindsSimpleAndDoubleRoots) {
  // rounding splits a double root by ~1e-8, so it is a multiplicity only above that scale
  ZeroSearchOptions o;
  o.tol = 1e-6;
  const cplx d(-0.4371, 0.6813);
  auto res = find_zeros(poly({cplx(0.3, 0.4), d, d}), Box{-1, 1, 0.1, 1}, o);
  ASSERT_EQ(res.total_count, 3);
  ASSERT_EQ(res.zeros.size(), 2u);
  int mult = 0;
  for (const auto& z : res.zeros) {
    mult += z.multiplicity;
    EXPECT_LT(std::min(std::abs(z.z - cplx(0.3, 0.4)), std::abs(z.z - d)), 1e-6);
  }
  EXPECT_EQ(mult, 3);
  EXPECT_TRUE(res.unresolved.empty());
}

TEST(Zeros, ContourThroughAZeroIsReported) {
  WindingCounter wc(poly({cplx(0.0, 0.5)}), WindingOptions{});
  EXPECT_THROW(wc.count(Box{-1, 1, 0.5, 1}), ContourTooClose);
}

TEST(Spectra, ZeroPotentialHasEmptySpectrum) {
  auto sp = find_spectrum(Potential::zero());
  EXPECT_TRUE(sp.eigenvalues.empty());
  EXPECT_TRUE(sp.enclosure.empty_spectrum);
}

TEST(Spectra, BarrierEigenvaluesMatchClosedFormZeros) {
  const double g = 3.0, R = 4.0;
  auto sp = find_spectrum(Potential::barrier(g, R));
  ASSERT_FALSE(sp.eigenvalues.empty());
  EXPECT_TRUE(sp.fully_resolved());
  for (const auto& e : sp.eigenvalues) {
    EXPECT_LE(std::abs(e.lambda), sp.enclosure.r);
    auto z = oracle::barrier_zero(g, R, {e.z.real(), e.z.imag()});
    EXPECT_LT(std::abs(e.z - cplx(double(z.real()), double(z.imag()))), 1e-9);
    EXPECT_LT(std::abs(oracle::barrier_jost(g, R, z)), 1e-12L);
  }
}

TEST(Spectra, StepPotentialEigenvaluesAreOracleZeros) {
  std::vector<double> bp{0, 1, 2.5};
  std::vector<cplx> v{cplx(-3, 1), cplx(0.5, 2)};
  auto sp = find_spectrum(Potential::step(bp, v));
  ASSERT_FALSE(sp.eigenvalues.empty());
  for (const auto& e : sp.eigenvalues) {
    EXPECT_GT(e.z.imag(), 0);
    // |e+| small against its size |e+'|/|z| ~ e^{support * Im z}
    auto o = oracle::step_jost(bp, v, e.z);
    EXPECT_LT(std::abs(o), 1e-9L) << e.z;
  }
}

TEST(Spectra, EnclosureRadius) {
  auto q = Potential::step({0, 1, 2}, {cplx(0, 1), cplx(1, 0)});
  auto e = enclosure(q);
  EXPECT_DOUBLE_EQ(e.r_fls, 4.0);
}
