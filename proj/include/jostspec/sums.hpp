#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "branchmath.hpp"
#include "spectra.hpp"

namespace jostspec {

enum class SumKind { S_eps, Jensen, S_alpha_beta };

inline const char* sum_kind_name(SumKind k) {
  switch (k) {
    case SumKind::S_eps: return "S_eps";
    case SumKind::Jensen: return "Jensen";
    case SumKind::S_alpha_beta: return "S_alpha_beta";
  }
  return "?";
}

struct SumSpec {
  SumKind kind = SumKind::S_eps;
  double eps = 0.0;
  double alpha = 1.0;
  double beta = 1.0;

  static SumSpec S(double eps) { return {SumKind::S_eps, eps, 1.0, 1.0}; }
  static SumSpec J() { return {SumKind::Jensen, 0.0, 1.0, 1.0}; }
  static SumSpec gen(double a, double b) { return {SumKind::S_alpha_beta, 0.0, a, b}; }

  void validate() const {
    if (kind == SumKind::S_eps && !(eps >= 0)) throw DomainError("S_eps needs eps >= 0");
    if (kind == SumKind::S_alpha_beta && !(alpha > 0 && beta > 0))
      throw DomainError("S_alpha_beta needs alpha > 0 and beta > 0");
  }
};

struct SumReport {
  double value = 0.0;
  double raw_sum = 0.0;  // S_{a,b}^{2a} for the generalized kind, else == value
  long n_terms = 0;
  bool unresolved_flag = false;
  SumSpec spec;
};

inline double sum_term(cplx lambda, const SumSpec& s) {
  double d = dist_to_halfline(lambda);
  double a = std::abs(lambda);
  switch (s.kind) {
    case SumKind::S_eps: return d / std::pow(a, 0.5 * (1 - s.eps));
    case SumKind::Jensen: return im_sqrt_plus(lambda);
    case SumKind::S_alpha_beta: return std::pow(a, s.alpha) * std::pow(d / a, s.beta);
  }
  return 0.0;
}

// Neumaier summation of terms sorted by decreasing magnitude
inline double ordered_sum(std::vector<double> t) {
  std::sort(t.begin(), t.end(), [](double a, double b) { return std::abs(a) > std::abs(b); });
  double s = 0.0, c = 0.0;
  for (double x : t) {
    double u = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - u) + x;
    else
      c += (x - u) + s;
    s = u;
  }
  return s + c;
}

inline SumReport eval_sum(const std::vector<Eigenvalue>& spectrum, const SumSpec& spec, bool unresolved = false) {
  spec.validate();
  std::vector<double> terms;
  SumReport r;
  r.spec = spec;
  r.unresolved_flag = unresolved;
  for (const auto& e : spectrum) {
    const cplx l = e.lambda;
    if (l.imag() == 0 && l.real() >= 0) throw DomainError("eigenvalue on the half-line [0, inf) in a sum");
    double t = sum_term(l, spec);
    for (int m = 0; m < e.multiplicity; ++m) terms.push_back(t);
    r.n_terms += e.multiplicity;
  }
  r.raw_sum = ordered_sum(std::move(terms));
  r.value = spec.kind == SumKind::S_alpha_beta ? std::pow(r.raw_sum, 1.0 / (2 * spec.alpha)) : r.raw_sum;
  return r;
}

inline SumReport eval_sum(const SpectrumResult& sp, const SumSpec& spec) {
  return eval_sum(sp.eigenvalues, spec, !sp.fully_resolved());
}

struct SandwichReport {
  double J = 0.0, S0 = 0.0;
  bool jensen_sandwich = false;  // J <= S0 <= 2J
  long termwise_violations = 0;  // dhk09 per eigenvalue
  bool enclosure_holds = true;   // |lambda| <= |q|_1^2, premise of the eps comparison
  struct EpsPair {
    double eps1, eps2, lhs, rhs;
    bool holds;
  };
  std::vector<EpsPair> eps_pairs;
  bool all_hold() const {
    if (!jensen_sandwich || termwise_violations) return false;
    return std::all_of(eps_pairs.begin(), eps_pairs.end(), [](const EpsPair& p) { return p.holds; });
  }
};

// rounding slack for comparisons of sums of positive terms
inline constexpr double sum_slack = 1e-12;

inline SandwichReport sandwich_checks(const std::vector<Eigenvalue>& spectrum, double l1_norm = -1.0,
                                      const std::vector<std::pair<double, double>>& eps_pairs = {}) {
  if (spectrum.empty()) throw DomainError("sandwich checks need a nonempty spectrum");
  SandwichReport r;
  r.J = eval_sum(spectrum, SumSpec::J()).value;
  r.S0 = eval_sum(spectrum, SumSpec::S(0)).value;
  r.jensen_sandwich = r.J <= r.S0 * (1 + sum_slack) && r.S0 <= 2 * r.J * (1 + sum_slack);
  for (const auto& e : spectrum) {
    double a = std::sqrt(std::abs(e.lambda)), im = im_sqrt_plus(e.lambda), d = dist_to_halfline(e.lambda);
    if (!(a * im <= d * (1 + sum_slack) && d <= 2 * a * im * (1 + sum_slack))) ++r.termwise_violations;
    if (l1_norm >= 0 && std::abs(e.lambda) > l1_norm * l1_norm * (1 + sum_slack)) r.enclosure_holds = false;
  }
  if (l1_norm >= 0)
    for (auto [e1, e2] : eps_pairs) {
      if (!(0 <= e1 && e1 < e2)) throw DomainError("eps pairs need 0 <= eps1 < eps2");
      double lhs = eval_sum(spectrum, SumSpec::S(e2)).value;
      double rhs = std::pow(l1_norm, e2 - e1) * eval_sum(spectrum, SumSpec::S(e1)).value;
      r.eps_pairs.push_back({e1, e2, lhs, rhs, r.enclosure_holds && lhs <= rhs * (1 + sum_slack)});
    }
  return r;
}

}  // namespace jostspec
