#include <gtest/gtest.h>

#include <jostspec/barrier.hpp>
#include <jostspec/spectra.hpp>

#include "oracles.hpp"

using namespace jostspec;

TEST(Barrier, CountArithmetic) {
  for (auto [g, R] : std::vector<std::pair<double, double>>{{1, 1200}, {0.25, 2400}, {4, 1200}, {1, 2400}, {0.5, 37}})
    EXPECT_EQ(BarrierSpec(g, R).M_R(), static_cast<long>(oracle::M_R(g, R)));
  // floor(1200^2/(32 pi log 1200)) = floor(2020.28...)
  EXPECT_EQ(BarrierSpec(1, 1200).M_R(), 2020);
  EXPECT_EQ(BarrierSpec(1, 1).M_R(), 0);
  EXPECT_TRUE(BarrierSpec(1, 1200).satisfies_bigr());
  EXPECT_FALSE(BarrierSpec(1, 1199).satisfies_bigr());
}

TEST(Barrier, PhiIdentityAgainstClosedForm) {
  // phi_R(z) = -2 s e^{-iRz} e+(0,z), s = sq_plus(z^2 - i gamma)
  BarrierSpec b(1.0, 30.0);
  for (cplx z : {cplx(0.7, 0.2), cplx(-1.3, 0.05), cplx(2.0, 1.0)}) {
    oracle::lc zl(z.real(), z.imag());
    oracle::lc s = oracle::root_up(zl * zl - oracle::lc(0, 1));
    oracle::lc expect = -2.0L * s * std::exp(oracle::lc(0, -30) * zl) * oracle::barrier_jost(1, 30, zl);
    cplx p = phi_R(b, z);
    double d = std::abs(p - cplx(double(expect.real()), double(expect.imag())));
    EXPECT_LT(d, 1e-9 * (1 + std::abs(p)));
  }
}

TEST(Barrier, FixedPointsAreZerosOfTheJostFunction) {
  BarrierSpec b(1.0, 1200.0);
  auto e = enumerate_spectrum(b, 200, 1e-12, 1);
  ASSERT_EQ(e.solutions.size(), 200u);
  EXPECT_TRUE(e.failures.empty());
  for (const auto& s : e.solutions) {
    ASSERT_TRUE(s.converged);
    EXPECT_TRUE(s.in_sector);
    EXPECT_TRUE(s.is_eigenvalue);
    EXPECT_TRUE(s.in_spectrum);
    EXPECT_LT(s.contraction, 1.0);
    EXPECT_NEAR(std::abs(s.lambda - (s.w * s.w + cplx(0, 1))), 0.0, 1e-12 * std::abs(s.lambda));
    // Newton on the closed form from the fixed point stays put
    oracle::lc z0(s.z.real(), s.z.imag());
    if (s.z.imag() < 0) z0 = -z0;
    auto z = oracle::barrier_zero(1, 1200, z0);
    EXPECT_LT(std::abs(z - z0), 1e-9L * std::abs(z0)) << s.j;
  }
}

TEST(Barrier, SmallBarrierSpectrumMatchesGenericSolver) {
  // the family and the generic zero search agree on a barrier small enough for both
  BarrierSpec b(2.0, 10.0);
  BarrierSpectrumOptions o;
  o.threads = 1;
  auto fam = barrier_spectrum(b, o);
  auto gen = find_spectrum(b.potential());
  ASSERT_TRUE(gen.fully_resolved());
  EXPECT_TRUE(fam.complete);
  ASSERT_EQ(fam.eigenvalues.size(), gen.eigenvalues.size());
  for (const auto& e : fam.eigenvalues) {
    double best = inf;
    for (const auto& f : gen.eigenvalues) best = std::min(best, std::abs(e.lambda - f.lambda));
    EXPECT_LT(best, 1e-8 * std::abs(e.lambda));
  }
}

TEST(Barrier, ScalingCovariance) {
  // gamma -> 4 gamma, R -> R/2 maps lambda -> 4 lambda
  auto a = enumerate_spectrum(BarrierSpec(1, 2400), 300, 1e-12, 1);
  auto c = enumerate_spectrum(BarrierSpec(4, 1200), 300, 1e-12, 1);
  for (std::size_t k = 0; k < 300; ++k)
    EXPECT_LT(std::abs(c.solutions[k].lambda / 4.0 - a.solutions[k].lambda), 1e-9 * std::abs(a.solutions[k].lambda));
}

TEST(Barrier, ThreadCountDoesNotChangeResults) {
  BarrierSpec b(1, 1200);
  auto one = enumerate_spectrum(b, 500, 1e-12, 1);
  auto three = enumerate_spectrum(b, 500, 1e-12, 3);
  for (std::size_t k = 0; k < 500; ++k) EXPECT_EQ(one.solutions[k].lambda, three.solutions[k].lambda);
}

TEST(Barrier, ContractionCertificate) {
  BarrierSpec b(1, 1200);
  for (long j : {1L, 10L, 500L, 2020L}) {
    cplx w(-std::numbers::pi * j / b.R, 0.0);
    EXPECT_NEAR(contraction_factor(b, w) * b.R * std::abs(sq_minus(w * w + cplx(0, b.gamma))), 1.0, 1e-12);
  }
  EXPECT_THROW(enumerate_spectrum(b, j_max_cap + 1), DomainError);
}
