#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "branchmath.hpp"
#include "potentials.hpp"
#include "scaled.hpp"
#include "spectra.hpp"
#include "zeros.hpp"

// The dissipative barrier i*gamma on [0,R]: closed-form Jost function and the
// branch-indexed fixed-point equations w = G_j(w), lambda = w^2 + i gamma.

namespace jostspec {

struct BarrierSpec {
  double gamma = 1.0;
  double R = 1.0;

  BarrierSpec(double g, double r) : gamma(g), R(r) {
    if (!(g > 0) || !(r > 0) || !std::isfinite(g) || !std::isfinite(r))
      throw DomainError("barrier needs gamma > 0 and R > 0");
  }

  static constexpr double C0 = 600.0;
  double bigr_threshold() const { return C0 * (std::pow(gamma, 0.75) + std::pow(gamma, -0.75)); }
  bool satisfies_bigr() const { return R >= bigr_threshold(); }

  // floor(gamma R^2 / (32 pi log R)); 0 when R <= 1
  long M_R() const {
    if (R <= 1) return 0;
    return static_cast<long>(std::floor(gamma * R * R / (32 * std::numbers::pi * std::log(R))));
  }

  Potential potential() const { return Potential::barrier(gamma, R); }
};

// (z - s) and (z + s) with s = sq_plus(z^2 - i gamma); their product is i gamma,
// so the smaller one is recovered from the larger without cancellation
struct BarrierRoots {
  cplx s, zm, zp;
};

inline BarrierRoots barrier_roots(const BarrierSpec& b, cplx z) {
  cplx s = sq_plus(z * z - cplx(0, b.gamma));
  cplx zm = z - s, zp = z + s;
  const cplx ig(0, b.gamma);
  if (std::abs(zm) < std::abs(zp)) {
    if (zp != cplx(0, 0)) zm = ig / zp;
  } else if (zm != cplx(0, 0)) {
    zp = ig / zm;
  }
  return {s, zm, zp};
}

inline ScaledComplex phi_R_scaled(const BarrierSpec& b, cplx z) {
  auto r = barrier_roots(b, z);
  const cplx i(0, 1);
  auto t1 = ScaledComplex::from_exp(i * b.R * r.s) * r.zm;
  auto t2 = ScaledComplex::from_exp(-i * b.R * r.s) * r.zp;
  return t1 - t2;
}

// |phi| over the size of its two terms
inline double phi_R_residual(const BarrierSpec& b, cplx z) {
  auto r = barrier_roots(b, z);
  const cplx i(0, 1);
  auto t1 = ScaledComplex::from_exp(i * b.R * r.s) * r.zm;
  auto t2 = ScaledComplex::from_exp(-i * b.R * r.s) * r.zp;
  auto d = t1 - t2;
  if (d.is_zero()) return 0.0;
  double top = std::max(t1.log_abs(), t2.log_abs());
  double den = std::exp(t1.log_abs() - top) + std::exp(t2.log_abs() - top);
  return std::exp(d.log_abs() - top) / den;
}

inline cplx phi_R(const BarrierSpec& b, cplx z) { return phi_R_scaled(b, z).value(); }

// z^2 = i gamma makes phi vanish without an eigenvalue
inline bool is_spurious_phi_zero(const BarrierSpec& b, cplx z, double tol = 1e-12) {
  return std::abs(z * z - cplx(0, b.gamma)) <= tol * b.gamma;
}

// ---------------------------------------------------------------------------
// fixed-point family

// h = (z - w)/(z + w), z = sq_minus(w^2 + i gamma). Since (z-w)(z+w) = i gamma,
// h = (z - w)^2/(i gamma) = i gamma/(z + w)^2; use whichever factor is larger.
inline cplx barrier_ratio(const BarrierSpec& b, cplx w) {
  w = unsign_zero(w);
  cplx z = sq_minus(w * w + cplx(0, b.gamma));
  cplx zm = z - w, zp = z + w;
  const cplx ig(0, b.gamma);
  cplx h = std::abs(zm) >= std::abs(zp) ? zm * zm / ig : ig / (zp * zp);
  if (h == cplx(0, 0) || !is_finite(h)) throw NumericalError("barrier ratio hit the branch cut (0 or inf)");
  return h;
}

inline double A_of_w(const BarrierSpec& b, cplx w) { return std::log(std::abs(barrier_ratio(b, w))); }

inline double B_j_of_w(const BarrierSpec& b, cplx w, long j) {
  return arg_minus(barrier_ratio(b, w)) + two_pi * static_cast<double>(j);
}

inline cplx G(const BarrierSpec& b, long j, cplx w) {
  cplx h = barrier_ratio(b, w);
  double A = std::log(std::abs(h));
  double B = arg_minus(h) + two_pi * static_cast<double>(j);
  return cplx(-B, A) / (2 * b.R);
}

// |G'(w)| = 1/(R |sq_minus(w^2 + i gamma)|)
inline double contraction_factor(const BarrierSpec& b, cplx w) {
  return 1.0 / (b.R * std::abs(sq_minus(w * w + cplx(0, b.gamma))));
}

inline bool in_F_inf(cplx w) { return w.real() <= 0 && w.imag() >= 0 && -w.real() >= 2 * w.imag(); }

inline bool in_F_j(const BarrierSpec& b, cplx w, long j) {
  return in_F_inf(w) && B_j_of_w(b, w, j) >= 2 * std::abs(A_of_w(b, w));
}

struct FixedPointSolution {
  long j = 0;
  cplx w;
  cplx lambda;
  cplx z;  // sq_minus(lambda)
  int iterations = 0;
  double residual_fp = 0.0;
  double residual_phi = 0.0;
  double contraction = 0.0;  // max |G'| over the iterates
  bool converged = false;
  bool in_sector = false;    // w in F_j
  bool in_spectrum = false;  // -gamma/2 <= Im w^2 <= 0 and Im lambda > 0
  bool is_eigenvalue = false;  // w in C+ and Im lambda > 0, so lambda is an eigenvalue
  bool unguaranteed = false;   // j > M_R
  std::string error;
};

inline FixedPointSolution solve_fixed_point(const BarrierSpec& b, long j, double tol = 1e-12, int max_iter = 500) {
  if (j < 1) throw DomainError("branch index j must be >= 1");
  if (!(tol > 0)) throw DomainError("tol must be positive");
  FixedPointSolution s;
  s.j = j;
  s.unguaranteed = j > b.M_R();
  cplx w(-std::numbers::pi * static_cast<double>(j) / b.R, 0.0);
  double last_step = inf;
  int extra = 0;
  try {
    for (int it = 0; it < max_iter; ++it) {
      s.contraction = std::max(s.contraction, contraction_factor(b, w));
      cplx wn = G(b, j, w);
      double step = std::abs(wn - w);
      w = wn;
      s.iterations = it + 1;
      if (!s.converged) {
        if (step <= tol * (1 + std::abs(w))) s.converged = true;
      } else {
        // a few more sweeps while the step still shrinks
        if (step >= last_step || ++extra >= 3) break;
      }
      last_step = step;
    }
    s.w = w;
    s.lambda = w * w + cplx(0, b.gamma);
    s.z = sq_minus(s.lambda);
    s.residual_fp = std::abs(w - G(b, j, w));
    s.residual_phi = phi_R_residual(b, s.z);
    s.in_sector = in_F_j(b, w, j);
    double im_w2 = (w * w).imag();
    s.in_spectrum = im_w2 >= -b.gamma / 2 && im_w2 <= 0 && s.lambda.imag() > 0;
    s.is_eigenvalue = w.imag() > 0 && s.lambda.imag() > 0;
    if (!s.converged)
      s.error = "no convergence in " + std::to_string(max_iter) + " iterations (contraction " +
                std::to_string(s.contraction) + ")";
    else if (!s.in_sector)
      s.error = "solution left the sector F_j";
  } catch (const std::exception& e) {
    s.w = w;
    s.converged = false;
    s.error = e.what();
  }
  return s;
}

struct Enumeration {
  BarrierSpec spec;
  std::vector<FixedPointSolution> solutions;  // ordered by j
  std::vector<std::pair<long, std::string>> failures;

  long count_in_spectrum() const {
    return std::count_if(solutions.begin(), solutions.end(), [](const FixedPointSolution& s) { return s.in_spectrum; });
  }
  long count_eigenvalues() const {
    return std::count_if(solutions.begin(), solutions.end(),
                         [](const FixedPointSolution& s) { return s.is_eigenvalue; });
  }
  double max_contraction() const {
    double c = 0;
    for (const auto& s : solutions) c = std::max(c, s.contraction);
    return c;
  }
};

inline unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

// j in [j0, j1], results in j order regardless of thread count
inline std::vector<FixedPointSolution> solve_range(const BarrierSpec& b, long j0, long j1, double tol,
                                                   unsigned threads) {
  std::vector<FixedPointSolution> out(j1 >= j0 ? j1 - j0 + 1 : 0);
  if (out.empty()) return out;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(out.size())));
  if (threads == 1) {
    for (long j = j0; j <= j1; ++j) out[j - j0] = solve_fixed_point(b, j, tol);
    return out;
  }
  std::atomic<long> next{j0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (long j = next.fetch_add(1); j <= j1; j = next.fetch_add(1)) out[j - j0] = solve_fixed_point(b, j, tol);
    });
  for (auto& th : pool) th.join();
  return out;
}

inline constexpr long j_max_cap = 10'000'000;

inline Enumeration enumerate_spectrum(const BarrierSpec& b, std::optional<long> j_max = std::nullopt,
                                      double tol = 1e-12, unsigned threads = default_threads()) {
  long jm = j_max.value_or(b.M_R());
  if (jm > j_max_cap) throw DomainError("j_max exceeds the cap of 1e7");
  Enumeration e{b, solve_range(b, 1, jm, tol, threads), {}};
  for (const auto& s : e.solutions)
    if (!s.error.empty()) e.failures.emplace_back(s.j, s.error);
  return e;
}

// ---------------------------------------------------------------------------
// the whole point spectrum: the family past M_R until lambda leaves C+, then an
// argument-principle count of e+ zeros over a z-box as a completeness check

struct BarrierSpectrum {
  Enumeration enumeration;
  std::vector<Eigenvalue> eigenvalues;  // is_eigenvalue solutions, by j
  long last_j = 0;
  double floor = 0.0;           // Im z of the contour bottom
  long contour_count = -1;      // zeros of e+ with Im z > floor
  long enumerated_above = 0;    // family eigenvalues with Im z > floor
  long below_floor = 0;         // family eigenvalues with Im z <= floor
  bool complete = false;        // contour_count == enumerated_above
  std::string note;
};

struct BarrierSpectrumOptions {
  double tol = 1e-12;
  long stop_after = 64;  // consecutive non-eigenvalue branches ending the scan
  bool sweep = true;
  std::optional<double> floor;
  unsigned threads = default_threads();
};

// e+(0,z) for the barrier, closed form with the e^{iRz} factor kept in log scale
inline AnalyticSample barrier_jost_sample(const BarrierSpec& b, cplx z) {
  auto r = barrier_roots(b, z);
  const cplx i(0, 1);
  // e+ e^{-iRz} = cos(Rs) - i z R sinc(Rs)
  auto cosh_part = (ScaledComplex::from_exp(i * b.R * r.s) + ScaledComplex::from_exp(-i * b.R * r.s)) * cplx(0.5);
  ScaledComplex sin_part;
  cplx Rs = b.R * r.s;
  if (std::abs(Rs) < 1.0) {
    sin_part = ScaledComplex(b.R * sinc(Rs));
  } else {
    sin_part = (ScaledComplex::from_exp(i * Rs) - ScaledComplex::from_exp(-i * Rs)) * (1.0 / (2.0 * i * r.s));
  }
  auto v = (cosh_part - sin_part * (i * z)) * ScaledComplex::from_exp(i * b.R * z);
  double size = std::max(cosh_part.log_abs(), (sin_part * (i * z)).log_abs()) + (i * b.R * z).real();
  double rel = v.is_zero() ? 0.0 : std::min(1.0, std::exp(v.log_abs() - size));
  return {v.mantissa, v.log_scale, rel};
}

inline BarrierSpectrum barrier_spectrum(const BarrierSpec& b, const BarrierSpectrumOptions& opt = {}) {
  BarrierSpectrum out{Enumeration{b, {}, {}}};
  auto& en = out.enumeration;
  long j = 1, misses = 0;
  const long chunk = 256;
  long mr = b.M_R();
  while (misses < opt.stop_after && j <= j_max_cap) {
    auto part = solve_range(b, j, j + chunk - 1, opt.tol, opt.threads);
    for (auto& s : part) {
      if (!s.error.empty()) en.failures.emplace_back(s.j, s.error);
      if (s.is_eigenvalue && s.converged) {
        misses = 0;
      } else if (s.j > mr) {
        ++misses;
      }
      en.solutions.push_back(std::move(s));
      if (misses >= opt.stop_after) break;
    }
    j += chunk;
  }
  for (const auto& s : en.solutions)
    if (s.is_eigenvalue && s.converged) {
      out.eigenvalues.push_back(make_eigenvalue(s.z, 1, s.residual_phi));
      out.last_j = s.j;
    }
  if (!opt.sweep) return out;

  // z-box: Re z in [0, max|z|], Im z in [floor, sqrt(gamma)]; every eigenvalue
  // has Im z <= Im sq_plus(i gamma) < sqrt(gamma)
  double zmax = std::sqrt(b.gamma) + 1.0;
  for (const auto& e : out.eigenvalues) zmax = std::max(zmax, 1.01 * std::abs(e.z) + 1.0);
  double fl = opt.floor.value_or(1e-6 * std::sqrt(b.gamma));
  WindingOptions wo;
  wo.phase_rate = 2 * b.R + 2;
  // near the axis e+ is a difference of terms ~e^{R gamma/|z|} larger than
  // itself; rounding stays ~1e-16 of those terms
  wo.min_modulus = 1e-12;
  wo.cache_samples = false;
  for (int attempt = 0; attempt < 8; ++attempt) {
    // the tail crosses the floor once; put the edge midway between neighbours
    const auto& ev = out.eigenvalues;
    for (std::size_t k = 1; k < ev.size(); ++k)
      if (ev[k - 1].z.imag() > fl && ev[k].z.imag() <= fl) {
        fl = 0.5 * (ev[k - 1].z.imag() + ev[k].z.imag());
        break;
      }
    try {
      WindingCounter wc([b](cplx z) { return barrier_jost_sample(b, z); }, wo);
      Box box{-1e-3 * std::sqrt(b.gamma), zmax, fl, std::sqrt(b.gamma)};
      out.contour_count = wc.count(box);
      break;
    } catch (const NumericalError&) {
      fl *= 1.37;
    }
  }
  out.floor = fl;
  for (const auto& e : out.eigenvalues) (e.z.imag() > fl ? out.enumerated_above : out.below_floor) += 1;
  out.complete = out.contour_count == out.enumerated_above;
  if (out.contour_count < 0)
    out.note = "contour could not be placed";
  else if (!out.complete)
    out.note = "contour count " + std::to_string(out.contour_count) + " differs from enumeration " +
               std::to_string(out.enumerated_above);
  return out;
}

// ---------------------------------------------------------------------------
// the box Sigma_R

struct BoxCount {
  double C1 = 0.0;
  double im_lo = 0, im_hi = 0, abs_lo = 0, abs_hi = 0;
  long count = 0;
  double bound = 0.0;  // gamma R^2 / (128 pi log R)
  bool meets_bound = false;
};

inline long j_range_lo(const BarrierSpec& b) {
  return static_cast<long>(std::ceil(b.gamma * b.R * b.R / (64 * std::numbers::pi * std::log(b.R))));
}

// 4 x the worst spread of |lambda_j| log^2 R / R^2 over the middle range of j
inline double calibrate_C1(const Enumeration& e) {
  const auto& b = e.spec;
  double L2 = std::log(b.R) * std::log(b.R) / (b.R * b.R);
  long lo = j_range_lo(b), hi = b.M_R();
  double worst = 1.0;
  for (const auto& s : e.solutions)
    if (s.j >= lo && s.j <= hi && s.converged) {
      double t = std::abs(s.lambda) * L2;
      worst = std::max({worst, t, 1.0 / t});
    }
  return 4 * worst;
}

inline BoxCount box_count(const Enumeration& e, double C1) {
  if (!(C1 > 0)) throw DomainError("C1 must be positive");
  const auto& b = e.spec;
  BoxCount r;
  r.C1 = C1;
  double scale = b.R * b.R / (std::log(b.R) * std::log(b.R));
  r.im_lo = b.gamma / 2;
  r.im_hi = b.gamma;
  r.abs_lo = scale / C1;
  r.abs_hi = scale * C1;
  for (const auto& s : e.solutions) {
    if (!(s.is_eigenvalue && s.converged)) continue;
    double a = std::abs(s.lambda), im = s.lambda.imag();
    if (im >= r.im_lo && im <= r.im_hi && a >= r.abs_lo && a <= r.abs_hi) ++r.count;
  }
  r.bound = b.gamma * b.R * b.R / (128 * std::numbers::pi * std::log(b.R));
  r.meets_bound = r.count >= r.bound;
  return r;
}

// ---------------------------------------------------------------------------
// dilation: L_{s^2 gamma, R/s} has eigenvalues s^2 lambda

struct ScalingReport {
  double s = 1.0;
  long compared = 0;
  double max_rel_diff = 0.0;
  bool passed = false;
};

inline ScalingReport scaling_check(const BarrierSpec& b, double s, std::optional<long> j_max = std::nullopt,
                                   double rel_tol = 1e-10, unsigned threads = default_threads()) {
  if (!(s > 0)) throw DomainError("scale must be positive");
  BarrierSpec bs(s * s * b.gamma, b.R / s);
  long jm = j_max.value_or(b.M_R());
  auto e1 = enumerate_spectrum(b, jm, 1e-13, threads);
  auto e2 = enumerate_spectrum(bs, jm, 1e-13, threads);
  ScalingReport r;
  r.s = s;
  for (std::size_t k = 0; k < e1.solutions.size() && k < e2.solutions.size(); ++k) {
    cplx a = s * s * e1.solutions[k].lambda, c = e2.solutions[k].lambda;
    r.max_rel_diff = std::max(r.max_rel_diff, std::abs(a - c) / std::abs(c));
    ++r.compared;
  }
  r.passed = r.max_rel_diff <= rel_tol;
  return r;
}

}  // namespace jostspec
