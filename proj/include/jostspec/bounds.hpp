#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "barrier.hpp"
#include "potentials.hpp"
#include "spectra.hpp"
#include "sums.hpp"

namespace jostspec {

enum class BoundDirection { upper, lower };

struct BoundReport {
  std::string name;
  double lhs = 0.0;  // computed quantity
  double rhs = 0.0;  // bound
  double margin = 0.0;
  BoundDirection direction = BoundDirection::upper;
  bool preconditions_met = true;
  std::map<std::string, double> inputs;
  std::string note;

  // informational when the preconditions fail
  bool passed() const { return !preconditions_met || margin >= 0; }
  bool failed() const { return preconditions_met && margin < 0; }
};

inline BoundReport make_report(std::string name, BoundDirection dir, double lhs, double rhs, bool pre = true) {
  BoundReport r;
  r.name = std::move(name);
  r.direction = dir;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = dir == BoundDirection::upper ? rhs - lhs : lhs - rhs;
  r.preconditions_met = pre;
  return r;
}

inline constexpr double kappa = 0.4054651081081644;  // log(3/2)

// y with â(1/y) |q|_a = log(1 + delta)
inline double solve_y(const WeightPair& w, double norm_a, double delta) {
  if (!(delta > 0 && delta < 1)) throw DomainError("delta must lie in (0,1)");
  if (!(norm_a > 0)) throw DomainError("y is undefined for a zero norm");
  auto x = w.try_ahat_inverse(std::log1p(delta) / norm_a);
  if (!x || !(*x > 0)) throw DomainError("y bracket failure: x/a(x) does not reach log(1+delta)/|q|_a");
  return 1.0 / *x;
}

// J <= y log((1+d)/(1-d)^2) + (4/pi) |q|_a int_{1/y}^inf dx/(x a(x))
inline BoundReport bound_ltgente(const Potential& q, const WeightPair& w, double delta, double J) {
  BoundReport r;
  r.name = "ltgente:" + w.name;
  r.direction = BoundDirection::upper;
  r.lhs = J;
  r.inputs["delta"] = delta;
  double one_tail = w.inverse_tail(1.0);
  r.inputs["int_1^inf dx/(x a)"] = one_tail;
  if (!std::isfinite(one_tail)) {
    r.preconditions_met = false;
    r.rhs = inf;
    r.margin = inf;
    r.note = "integral condition on the weight fails";
    return r;
  }
  double na;
  try {
    na = weighted_norm(q, w);
  } catch (const WeightDivergence&) {
    r.preconditions_met = false;
    r.rhs = inf;
    r.margin = inf;
    r.note = "q is not in Q_a";
    return r;
  }
  r.inputs["norm_a"] = na;
  if (na == 0.0) {
    // no eigenvalues; the bound degenerates to J <= 0
    r.rhs = 0.0;
    r.margin = -J;
    r.note = "zero potential";
    return r;
  }
  double y = solve_y(w, na, delta);
  r.inputs["y"] = y;
  double t1 = y * std::log((1 + delta) / ((1 - delta) * (1 - delta)));
  double t2 = 4 / std::numbers::pi * na * w.inverse_tail(1.0 / y);
  r.inputs["A1"] = t1;
  r.inputs["A2"] = t2;
  r.rhs = t1 + t2;
  r.margin = r.rhs - r.lhs;
  return r;
}

inline double poly_delta(double norm_a) { return std::expm1(std::min(0.5 * norm_a, kappa)); }
inline double compact_delta(double l1, double R) { return std::expm1(std::min(l1 * R, kappa)); }

inline BoundReport bound_poly(const Potential& q, double p, double J) {
  auto w = WeightPair::poly(p);
  double na = weighted_norm(q, w);
  double rhs = 4 / std::numbers::pi * na * std::log1p(na) + 9 / p * na + 2;
  auto r = make_report("poly", BoundDirection::upper, J, rhs);
  r.inputs["p"] = p;
  r.inputs["norm_a"] = na;
  return r;
}

inline BoundReport bound_compact(const Potential& q, double R_support, double J) {
  double l1 = q.l1_norm();
  bool pre = R_support > 1 && q.support_end() <= R_support;
  double rhs = 7 * (1 / R_support + l1 * (1 + std::log1p(l1) + std::log(R_support)));
  auto r = make_report("compact", BoundDirection::upper, J, rhs, pre);
  r.inputs["R"] = R_support;
  r.inputs["l1"] = l1;
  if (!pre) r.note = "support not inside [0,R] with R > 1";
  return r;
}

// ---------------------------------------------------------------------------
// the barrier

inline double ranger1_threshold(double gamma, double eps) {
  return 4 / (std::exp(2.0) * gamma) * std::pow(64 * std::numbers::pi, 2 / eps) + 1;
}

// sum dist^p / |lambda|^{1/2}
inline double p_sum(const std::vector<Eigenvalue>& sp, double p) {
  std::vector<double> t;
  for (const auto& e : sp)
    for (int m = 0; m < e.multiplicity; ++m)
      t.push_back(std::pow(dist_to_halfline(e.lambda), p) / std::sqrt(std::abs(e.lambda)));
  return ordered_sum(std::move(t));
}

inline std::vector<BoundReport> lower_bounds_barrier(const BarrierSpec& b, double eps,
                                                     const std::vector<Eigenvalue>& spectrum,
                                                     const std::vector<double>& p_list = {1.0, 2.0}) {
  if (!(eps > 0 && eps < 1)) throw DomainError("eps must lie in (0,1)");
  std::vector<BoundReport> out;
  const double g = b.gamma, R = b.R, L = std::log(R);
  const bool big = b.satisfies_bigr();
  const double S0 = eval_sum(spectrum, SumSpec::S(0)).value;

  auto s0 = make_report("S0_lower", BoundDirection::lower, S0, g * R * L / (16 * std::numbers::pi), big);
  s0.inputs = {{"gamma", g}, {"R", R}};
  if (!big) s0.note = "R below the existence threshold; informational";
  out.push_back(s0);

  double thr = ranger1_threshold(g, eps);
  double Se = eval_sum(spectrum, SumSpec::S(eps)).value;
  double rhs = std::pow(g * R, 1 + eps) / (256 * std::numbers::pi * eps * std::pow(L, eps));
  auto se = make_report("S_eps_lower", BoundDirection::lower, Se, rhs, big && R >= thr);
  se.inputs = {{"gamma", g}, {"R", R}, {"eps", eps}, {"R_required", thr}};
  if (R < thr) se.note = "precondition unmet: R below " + std::to_string(thr) + "; informational";
  out.push_back(se);

  for (double p : p_list) {
    if (!(p >= 1)) throw DomainError("p-sum lower bound needs p >= 1");
    auto r = make_report("p_sum_lower", BoundDirection::lower, p_sum(spectrum, p),
                         std::pow(g, p) * R * L / (8 * std::numbers::pi * std::pow(2.0, p)), big);
    r.inputs = {{"gamma", g}, {"R", R}, {"p", p}};
    out.push_back(r);
  }
  return out;
}

// J / (gamma R log R) in [1/(32 pi), 42]
inline std::vector<BoundReport> two_sided_jensen(const BarrierSpec& b, double J) {
  const double s = b.gamma * b.R * std::log(b.R);
  const bool big = b.satisfies_bigr();
  auto lo = make_report("jensen_two_sided_lower", BoundDirection::lower, J, s / (32 * std::numbers::pi), big);
  auto hi = make_report("jensen_two_sided_upper", BoundDirection::upper, J, 42 * s, big);
  lo.inputs = hi.inputs = {{"gamma", b.gamma}, {"R", b.R}};
  return {lo, hi};
}

// ---------------------------------------------------------------------------
// empirical experiments

struct FamilyMember {
  std::string label;
  double l1 = 0.0;
  std::vector<Eigenvalue> spectrum;
};

struct KEpsRow {
  std::string label;
  double l1, S_eps, ratio, S0_over_l1;
};

struct KEpsReport {
  double eps = 0.0;
  double K_lower = 0.0;  // max ratio
  std::vector<KEpsRow> rows;
};

inline KEpsReport empirical_K_eps(const std::vector<FamilyMember>& family, double eps) {
  if (!(eps > 0)) throw DomainError("eps must be positive");
  KEpsReport r;
  r.eps = eps;
  for (const auto& m : family) {
    KEpsRow row{m.label, m.l1, 0, 0, 0};
    if (m.l1 > 0) {
      row.S_eps = eval_sum(m.spectrum, SumSpec::S(eps)).value;
      row.ratio = row.S_eps / std::pow(m.l1, 1 + eps);
      row.S0_over_l1 = eval_sum(m.spectrum, SumSpec::S(0)).value / m.l1;
    }
    r.K_lower = std::max(r.K_lower, row.ratio);
    r.rows.push_back(row);
  }
  return r;
}

struct GenSupRow {
  double alpha, beta;
  std::vector<double> normalized;  // S_{a,b} / |q|_1 along the family
  std::string trend;               // "growing" or "bounded"
  std::string expected;
};

inline std::string generltsup_expectation(double a, double b) {
  if (a > 0.5 && b >= 1) return "bounded";
  if (b < 1 || (a <= 0.5 && b == 1)) return "growing";
  return "open";
}

inline std::vector<GenSupRow> generltsup_experiment(const std::vector<std::pair<double, double>>& params,
                                                    const std::vector<FamilyMember>& family) {
  std::vector<GenSupRow> out;
  for (auto [a, b] : params) {
    GenSupRow row{a, b, {}, "", generltsup_expectation(a, b)};
    for (const auto& m : family) row.normalized.push_back(eval_sum(m.spectrum, SumSpec::gen(a, b)).value / m.l1);
    bool increasing = row.normalized.size() > 1;
    for (std::size_t k = 1; k < row.normalized.size(); ++k)
      if (!(row.normalized[k] > row.normalized[k - 1])) increasing = false;
    row.trend = increasing ? "growing" : "bounded";
    out.push_back(row);
  }
  return out;
}

}  // namespace jostspec
