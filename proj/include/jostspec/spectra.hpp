#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "branchmath.hpp"
#include "jost.hpp"
#include "potentials.hpp"
#include "zeros.hpp"

namespace jostspec {

struct Eigenvalue {
  cplx z;
  cplx lambda;
  int multiplicity = 1;
  double residual = 0.0;
};

inline Eigenvalue make_eigenvalue(cplx z, int mult = 1, double residual = 0.0) {
  return {z, z * z, mult, residual};
}

struct EnclosureReport {
  double r_fls = 0.0;
  std::optional<double> rho_inv;
  double r = 0.0;
  bool empty_spectrum = false;  // weighted radius rules out every eigenvalue
};

inline EnclosureReport enclosure(const Potential& q, const WeightPair* w = nullptr) {
  EnclosureReport e;
  double l1 = q.l1_norm();
  e.r_fls = l1 * l1;
  e.r = e.r_fls;
  if (w) {
    double na = weighted_norm(q, *w);
    if (na == 0.0) {
      e.rho_inv = 0.0;
    } else {
      auto x = w->try_ahat_inverse(std::log(2.0) / na);
      if (!x) {
        e.rho_inv = 0.0;  // rho = inf
      } else {
        e.rho_inv = 1.0 / ((*x) * (*x));
      }
    }
    e.r = std::min(e.r, *e.rho_inv);
  }
  if (e.r == 0.0) e.empty_spectrum = true;
  return e;
}

// e+ as an analytic function for the zero finder
inline AnalyticFn jost_function(const Potential& q) {
  // step potentials give an entire function; Newton may step below the axis
  if (q.is_step())
    return [q](cplx z) -> AnalyticSample {
      auto s = jost_plus_at(q.steps(), z, 0.0);
      double a = std::abs(s.y), b = std::abs(s.dy) / std::max(std::abs(z), 1e-300);
      return {s.y, s.log_scale, a / (a + b)};
    };
  return [q](cplx z) -> AnalyticSample {
    auto e = jost(q, z);
    return {e.value, e.log_scale, e.relative_modulus()};
  };
}

// e+(0,z) is 1 + (exponentials e^{2izt}, t <= support end)
inline double jost_phase_rate(const Potential& q) { return 2 * q.support_end() + 2; }

inline int count_zeros_in_contour(const Potential& q, const std::vector<cplx>& contour, int samples = 8) {
  for (auto z : contour)
    if (!(z.imag() > 0)) throw DomainError("contour must lie in the open upper half-plane");
  WindingOptions opt;
  opt.samples_per_edge = samples;
  if (std::isfinite(q.support_end())) opt.phase_rate = jost_phase_rate(q);
  WindingCounter wc(jost_function(q), opt);
  return wc.winding(contour);
}

struct SpectrumResult {
  std::vector<Eigenvalue> eigenvalues;
  std::vector<UnresolvedRegion> unresolved;
  EnclosureReport enclosure;
  int outer_count = 0;
  double floor = 0.0;
  Box search_box{};
  long evaluations = 0;

  int total_multiplicity() const {
    int n = 0;
    for (const auto& e : eigenvalues) n += e.multiplicity;
    return n;
  }
  bool fully_resolved() const { return unresolved.empty(); }
};

struct SpectrumOptions {
  double tol = 1e-10;
  std::optional<double> floor;
  const WeightPair* weight = nullptr;
  bool probe_floor_strip = true;
  ZeroSearchOptions search;
};

inline double default_floor(double r) { return 1e-6 * (1 + std::sqrt(r)); }

inline SpectrumResult find_spectrum(const Potential& q, const SpectrumOptions& opt = {}) {
  SpectrumResult out;
  out.enclosure = enclosure(q, opt.weight);
  if (out.enclosure.empty_spectrum) return out;
  double r = out.enclosure.r;
  double rho = std::sqrt(r) * (1 + 1e-3);
  double floor = opt.floor.value_or(default_floor(r));
  auto f = jost_function(q);
  ZeroSearchOptions zs = opt.search;
  zs.tol = opt.tol;
  if (zs.winding.phase_rate == 0 && std::isfinite(q.support_end())) zs.winding.phase_rate = jost_phase_rate(q);
  std::optional<ZeroSearchResult> res;
  for (int attempt = 0; attempt < 8 && !res; ++attempt) {
    Box root{-rho, rho, floor, rho};
    try {
      res = find_zeros(f, root, zs);
    } catch (const ContourTooClose&) {
      // nudge the contour away from a zero sitting on it
      floor *= 1.37;
      rho *= 1 + 1e-3;
    }
  }
  if (!res) throw NumericalError("could not place an outer contour clear of zeros");
  out.floor = floor;
  out.search_box = res->root;
  out.outer_count = res->total_count;
  out.unresolved = res->unresolved;
  out.evaluations = res->evaluations;
  for (const auto& z : res->zeros) out.eigenvalues.push_back(make_eigenvalue(z.z, z.multiplicity, z.residual));
  if (opt.probe_floor_strip) {
    Box strip{-rho, rho, floor * 1e-3, floor};
    try {
      WindingCounter wc(f, zs.winding);
      int n = wc.count(strip);
      if (n > 0) out.unresolved.push_back({strip, n, "near-real zeros below the floor"});
    } catch (const NumericalError&) {
      out.unresolved.push_back({strip, -1, "near-real strip could not be counted"});
    }
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), [](const Eigenvalue& a, const Eigenvalue& b) {
    if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
    return a.lambda.imag() < b.lambda.imag();
  });
  return out;
}

inline SpectrumResult find_spectrum(const Potential& q, double tol) {
  SpectrumOptions o;
  o.tol = tol;
  return find_spectrum(q, o);
}

}  // namespace jostspec
