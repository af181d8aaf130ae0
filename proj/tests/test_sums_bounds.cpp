#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include <jostspec/bounds.hpp>
#include <jostspec/sums.hpp>

#include "oracles.hpp"

using namespace jostspec;

namespace {

std::vector<Eigenvalue> sample_spectrum() {
  std::vector<Eigenvalue> s;
  for (cplx lam : {cplx(2, 0.5), cplx(-1, 0.3), cplx(0.1, 3), cplx(5, 0.01), cplx(-0.2, -0.4)})
    s.push_back({sq_plus(lam), lam, 1, 0.0});
  s[2].multiplicity = 2;
  return s;
}

}  // namespace

TEST(Sums, TermsMatchDirectFormulas) {
  auto sp = sample_spectrum();
  for (double eps : {0.0, 0.3, 0.9}) {
    long double expect = 0;
    for (const auto& e : sp) expect += e.multiplicity * oracle::lt_term(e.lambda, eps);
    EXPECT_NEAR(eval_sum(sp, SumSpec::S(eps)).value, double(expect), 1e-13 * double(expect));
  }
  long double j = 0;
  for (const auto& e : sp) j += e.multiplicity * oracle::jensen_term(e.lambda);
  auto r = eval_sum(sp, SumSpec::J());
  EXPECT_NEAR(r.value, double(j), 1e-13);
  EXPECT_EQ(r.n_terms, 6);
}

TEST(Sums, GeneralizedSumIsTheRootOfTheRawSum) {
  auto sp = sample_spectrum();
  double a = 0.7, b = 1.5;
  long double raw = 0;
  for (const auto& e : sp) {
    long double m = std::abs(e.lambda), d = dist_to_halfline(e.lambda);
    raw += e.multiplicity * std::pow(m, a) * std::pow(d / m, b);
  }
  auto r = eval_sum(sp, SumSpec::gen(a, b));
  EXPECT_NEAR(r.raw_sum, double(raw), 1e-13 * double(raw));
  EXPECT_NEAR(r.value, std::pow(double(raw), 1 / (2 * a)), 1e-12);
}

TEST(Sums, OrderOfTermsDoesNotMatter) {
  std::vector<double> t;
  std::mt19937_64 rng(9);
  std::lognormal_distribution<double> d(0, 8);
  for (int i = 0; i < 5000; ++i) t.push_back(d(rng));
  double a = ordered_sum(t);
  std::shuffle(t.begin(), t.end(), rng);
  EXPECT_EQ(a, ordered_sum(t));
}

TEST(Sums, RejectsPointsOnTheHalfLine) {
  std::vector<Eigenvalue> bad{{cplx(1, 0), cplx(1, 0), 1, 0}};
  EXPECT_THROW(eval_sum(bad, SumSpec::S(0)), DomainError);
  EXPECT_THROW(SumSpec::gen(0, 1).validate(), DomainError);
}

TEST(Sums, Sandwich) {
  auto rep = sandwich_checks(sample_spectrum());
  EXPECT_TRUE(rep.jensen_sandwich);
  EXPECT_EQ(rep.termwise_violations, 0);
  EXPECT_TRUE(rep.all_hold());
}

TEST(Bounds, BarrierConstantsAtTheReferencePoint) {
  BarrierSpec b(1, 1200);
  double s = 1200 * std::log(1200.0);
  auto two = two_sided_jensen(b, 1000.0);
  EXPECT_NEAR(two[0].rhs, s / (32 * std::numbers::pi), 1e-9);
  EXPECT_NEAR(two[0].rhs, 84.63155815, 1e-7);
  EXPECT_NEAR(two[1].rhs, 357339.8725, 1e-3);
  EXPECT_TRUE(two[0].passed() && two[1].passed());
  // 4/(e^2 gamma) (64 pi)^{2/eps} + 1
  EXPECT_NEAR(ranger1_threshold(2.0, 0.5), 2 / std::exp(2.0) * std::pow(64 * std::numbers::pi, 4.0) + 1, 1e-3);
}

TEST(Bounds, PolyAndCompactRightHandSides) {
  auto q = Potential::barrier(1, 3);
  double na = 3 + 2.0 / 3 * std::pow(3.0, 1.5);
  auto p = bound_poly(q, 0.5, 0.0);
  EXPECT_NEAR(p.rhs, 4 / std::numbers::pi * na * std::log1p(na) + 18 * na + 2, 1e-8);
  auto c = bound_compact(q, 3.0, 0.0);
  EXPECT_NEAR(c.rhs, 7 * (1.0 / 3 + 3 * (1 + std::log(4.0) + std::log(3.0))), 1e-10);
  EXPECT_TRUE(c.preconditions_met);
  EXPECT_FALSE(bound_compact(q, 2.0, 0.0).preconditions_met);
}

TEST(Bounds, LtgenteSolvesForY) {
  auto q = Potential::barrier(1, 3);
  auto w = WeightPair::poly(0.5);
  double na = weighted_norm(q, w);
  double d = poly_delta(na);
  auto r = bound_ltgente(q, w, d, 0.1);
  double y = r.inputs.at("y");
  // x/a(x) at x = 1/y equals log(1+delta)/|q|_a
  EXPECT_NEAR(w.ahat(1 / y) * na, std::log1p(d), 1e-10);
  EXPECT_GT(r.margin, 0);
  auto zero = bound_ltgente(Potential::zero(), w, 0.3, 0.0);
  EXPECT_EQ(zero.rhs, 0.0);
}

TEST(Bounds, FailedBoundIsReported) {
  auto r = make_report("x", BoundDirection::upper, 2.0, 1.0);
  EXPECT_TRUE(r.failed());
  r.preconditions_met = false;
  EXPECT_FALSE(r.failed());
  EXPECT_TRUE(r.passed());
}
