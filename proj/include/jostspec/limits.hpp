#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_complex.hpp>

#include "jost.hpp"
#include "potentials.hpp"
#include "spectra.hpp"
#include "zeros.hpp"

// Shift and truncation limits. The deviations fall like exp(-2 Im z X), which
// leaves double precision well before the X values of interest, so these run
// on 50-digit transfer matrices.

namespace jostspec {

using ext_complex = boost::multiprecision::cpp_complex_50;
using ext_real = boost::multiprecision::cpp_bin_float_50;

inline ext_complex to_ext(cplx z) { return ext_complex(ext_real(z.real()), ext_real(z.imag())); }
inline cplx to_double(const ext_complex& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

// e+(0,z) at 50 digits, scale folded in
inline ext_complex ext_jost(const Potential& q, const ext_complex& z) {
  auto s = jost_plus_at<ext_complex>(q.steps(), z, 0.0);
  return s.y * exp(s.log_scale);
}

inline ext_complex ext_jost_derivative(const Potential& q, const ext_complex& z) {
  auto s = jost_plus_at<ext_complex>(q.steps(), z, 0.0);
  return s.dy * exp(s.log_scale);
}

inline ext_complex ext_wronskian(const LinePotential& ql, const ext_complex& z) {
  auto w = line_wronskian_two_sided<ext_complex>(ql, z);
  return w.mantissa * exp(w.log_scale);
}

// e+(0,z;q) W(z,ql) / (-2iz)
inline ext_complex ext_shift_limit(const Potential& q, const LinePotential& ql, const ext_complex& z) {
  const ext_complex i(ext_real(0), ext_real(1));
  return ext_jost(q, z) * ext_wronskian(ql, z) / (ext_real(-2) * i * z);
}

struct LimitRow {
  double X = 0;
  double deviation = 0;        // sup over the grid
  double relative_deviation = 0;
  double bound = -1;           // analytic bound where one applies
  double coarse_bound = -1;   // exp(tail/min|z|) - 1
};

struct LimitTable {
  std::string kind;
  std::vector<LimitRow> rows;

  bool strictly_decreasing() const {
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (!(rows[i].deviation < rows[i - 1].deviation)) return false;
    return true;
  }
  bool identically_zero() const {
    return std::all_of(rows.begin(), rows.end(), [](const LimitRow& r) { return r.deviation == 0; });
  }
};

inline LimitTable shift_limit_check(const Potential& q, const LinePotential& ql, const std::vector<double>& X_list,
                                    const std::vector<cplx>& z_grid) {
  LimitTable t;
  t.kind = "shift";
  std::vector<ext_complex> limit;
  for (auto z : z_grid) {
    check_spectral_parameter(z, true);
    limit.push_back(ext_shift_limit(q, ql, to_ext(z)));
  }
  for (double X : X_list) {
    auto sh = shift_superpose(q, ql, X);
    if (sh.overlap) throw DomainError("shift_limit_check: supports overlap at X = " + std::to_string(X));
    LimitRow row;
    row.X = X;
    for (std::size_t k = 0; k < z_grid.size(); ++k) {
      ext_complex v = ext_jost(sh.potential, to_ext(z_grid[k]));
      ext_real d = abs(v - limit[k]);
      ext_real den = abs(limit[k]);
      row.deviation = std::max(row.deviation, static_cast<double>(d));
      if (den > 0) row.relative_deviation = std::max(row.relative_deviation, static_cast<double>(d / den));
    }
    t.rows.push_back(row);
  }
  return t;
}

inline LimitTable truncation_limit_check(const Potential& q, const std::vector<double>& X_list,
                                         const std::vector<cplx>& z_grid) {
  LimitTable t;
  t.kind = "truncation";
  double zmin = inf;
  for (auto z : z_grid) {
    check_spectral_parameter(z);
    zmin = std::min(zmin, std::abs(z));
  }
  const double l1 = q.l1_norm();
  if (q.is_step()) {
    std::vector<ext_complex> full;
    for (auto z : z_grid) full.push_back(ext_jost(q, to_ext(z)));
    for (double X : X_list) {
      auto qx = truncate(q, X);
      LimitRow row;
      row.X = X;
      for (std::size_t k = 0; k < z_grid.size(); ++k) {
        ext_real d = abs(ext_jost(qx, to_ext(z_grid[k])) - full[k]);
        row.deviation = std::max(row.deviation, static_cast<double>(d));
        ext_real den = abs(full[k]);
        if (den > 0) row.relative_deviation = std::max(row.relative_deviation, static_cast<double>(d / den));
      }
      double tail = q.tail_bound(X);
      row.bound = truncation_bound(tail, l1, zmin);
      row.coarse_bound = std::expm1(tail / zmin);
      t.rows.push_back(row);
    }
    return t;
  }
  // smooth potentials: double-precision series against the truncated copy
  std::vector<JostEvaluation> full;
  for (auto z : z_grid) full.push_back(jost_series(q, z, 1e-13));
  for (double X : X_list) {
    auto qx = truncate(q, X);
    LimitRow row;
    row.X = X;
    for (std::size_t k = 0; k < z_grid.size(); ++k) {
      auto e = jost_series(qx, z_grid[k], 1e-13);
      double d = std::abs(e.actual_value() - full[k].actual_value());
      row.deviation = std::max(row.deviation, d);
      row.relative_deviation = std::max(row.relative_deviation, d / std::abs(full[k].actual_value()));
    }
    double tail = q.tail_bound(X);
    row.bound = truncation_bound(tail, l1, zmin);
    row.coarse_bound = std::expm1(tail / zmin);
    t.rows.push_back(row);
  }
  return t;
}

// ---------------------------------------------------------------------------
// roots of e+(0,.;q(.,X)) against the roots of the two limit factors

template <class F>
inline ext_complex ext_newton(F&& f, ext_complex z, int max_iter = 80) {
  for (int it = 0; it < max_iter; ++it) {
    ext_real h = ext_real(1e-22) * (1 + abs(z));
    ext_complex f0 = f(z);
    ext_complex d = (f(z + h) - f(z - h)) / (ext_real(2) * h);
    if (d == ext_complex(0)) break;
    ext_complex step = f0 / d;
    z -= step;
    if (abs(step) < ext_real(1e-40) * (1 + abs(z))) break;
  }
  return z;
}

struct RootTrack {
  cplx limit_root;
  std::string factor;  // "half-line" or "line"
  std::vector<cplx> roots;
  std::vector<double> errors;

  bool halves_per_doubling() const {
    for (std::size_t i = 1; i < errors.size(); ++i)
      if (!(errors[i] <= 0.5 * errors[i - 1]) && errors[i - 1] > 1e-40) return false;
    return true;
  }
};

struct RootTrackingReport {
  std::vector<double> X;
  std::vector<RootTrack> tracks;
  bool all_halving() const {
    return std::all_of(tracks.begin(), tracks.end(), [](const RootTrack& t) { return t.halves_per_doubling(); });
  }
};

inline RootTrackingReport track_shift_roots(const Potential& q, const LinePotential& ql,
                                            const std::vector<double>& X_list, const Box& region) {
  RootTrackingReport rep;
  rep.X = X_list;
  ZeroSearchOptions zo;
  auto fq = jost_function(q);
  auto fw = [ql](cplx z) -> AnalyticSample {
    auto w = line_wronskian_eval(ql, z);
    return {w.value.mantissa, w.value.log_scale, w.rel_modulus};
  };
  std::vector<std::pair<cplx, std::string>> seeds;
  for (const auto& z : find_zeros(fq, region, zo).zeros) seeds.emplace_back(z.z, "half-line");
  for (const auto& z : find_zeros(fw, region, zo).zeros) seeds.emplace_back(z.z, "line");
  for (const auto& [z0, src] : seeds) {
    RootTrack tr;
    tr.factor = src;
    ext_complex lim;
    if (src == "half-line")
      lim = ext_newton([&](const ext_complex& z) { return ext_jost(q, z); }, to_ext(z0));
    else
      lim = ext_newton([&](const ext_complex& z) { return ext_wronskian(ql, z); }, to_ext(z0));
    tr.limit_root = to_double(lim);
    // continuation from the largest shift down, where the root sits closest to its limit
    std::vector<std::size_t> order(X_list.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return X_list[a] > X_list[b]; });
    tr.roots.resize(X_list.size());
    tr.errors.resize(X_list.size());
    ext_complex start = lim;
    for (std::size_t k : order) {
      auto qx = shift_superpose(q, ql, X_list[k]).potential;
      ext_complex r = ext_newton([&](const ext_complex& z) { return ext_jost(qx, z); }, start);
      tr.roots[k] = to_double(r);
      tr.errors[k] = static_cast<double>(abs(r - lim));
      start = r;
    }
    rep.tracks.push_back(tr);
  }
  return rep;
}

}  // namespace jostspec
