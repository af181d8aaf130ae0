#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "branchmath.hpp"
#include "potentials.hpp"
#include "scaled.hpp"

namespace jostspec {

namespace detail {
using std::abs;
template <class C>
using real_of = std::decay_t<decltype(abs(std::declval<C>()))>;
}  // namespace detail

template <class C>
using real_t = detail::real_of<C>;

enum class JostMethod { transfer_matrix, series, ode };

inline const char* method_name(JostMethod m) {
  switch (m) {
    case JostMethod::transfer_matrix: return "tm";
    case JostMethod::series: return "series";
    case JostMethod::ode: return "ode";
  }
  return "?";
}

// e+(0,z) and its x-derivative. Actual values are mantissa * exp(log_scale);
// error_estimate is in mantissa units.
struct JostEvaluation {
  cplx z;
  cplx value;
  cplx derivative;
  double log_scale = 0.0;
  JostMethod method = JostMethod::transfer_matrix;
  double error_estimate = 0.0;
  int terms = 0;  // series terms or ode steps

  cplx actual_value() const { return value * std::exp(log_scale); }
  cplx actual_derivative() const { return derivative * std::exp(log_scale); }
  double actual_error() const { return error_estimate * std::exp(log_scale); }
  ScaledComplex scaled_value() const { return {value, log_scale}; }

  // |e+| against its natural size; small only near a zero
  double relative_modulus() const {
    double a = std::abs(value), b = std::abs(derivative) / std::max(std::abs(z), 1e-300);
    return a / (a + b);
  }

  // fold a modest log scale into the mantissas
  JostEvaluation folded() const {
    if (std::abs(log_scale) > 600.0 || log_scale == 0.0) return *this;
    JostEvaluation r = *this;
    double f = std::exp(log_scale);
    r.value *= f;
    r.derivative *= f;
    r.error_estimate *= f;
    r.log_scale = 0.0;
    return r;
  }
};

// ---------------------------------------------------------------------------
// transfer matrices, generic in the scalar so the extended-precision checks
// run the same code

template <class C>
struct PropState {
  C y;
  C dy;
  real_t<C> log_scale{0};
  real_t<C> err{0};
};

template <class C>
inline void renormalize(PropState<C>& s) {
  using std::abs;
  using std::log;
  using R = real_t<C>;
  R m = abs(s.y);
  R md = abs(s.dy);
  if (md > m) m = md;
  if (m == 0) return;
  if constexpr (std::is_same_v<R, double>) {
    int e = 0;
    std::frexp(m, &e);
    double f = std::ldexp(1.0, -e);
    s.y *= f;
    s.dy *= f;
    s.err *= f;
    s.log_scale += e * std::numbers::ln2;
  } else {
    s.y /= m;
    s.dy /= m;
    s.err /= m;
    s.log_scale += log(m);
  }
}

// exact fundamental matrix on a constant piece, scaled by exp(-kappa)
template <class C>
struct PieceMatrix {
  C c;  // cos(w l)
  C S;  // sin(w l)/w
  C T;  // w sin(w l)
  real_t<C> kappa;
  real_t<C> norm;
  real_t<C> cond;  // relative error factor of the entries
};

template <class C>
inline PieceMatrix<C> piece_matrix(const C& z, const C& v, const real_t<C>& len) {
  using std::abs;
  using std::exp;
  using std::imag;
  using R = real_t<C>;
  C w = sq_plus(C(z * z - v));
  C th = w * len;
  R kappa = abs(imag(th));
  const C i(R(0), R(1));
  C ep = exp(C(i * th - kappa));
  C em = exp(C(-i * th - kappa));
  PieceMatrix<C> M;
  M.c = (ep + em) / R(2);
  C sn = (ep - em) / C(R(0), R(2));
  if (abs(th) < R(1e-3))
    M.S = C(len) * sinc(th) * exp(-kappa);
  else
    M.S = sn / w;
  M.T = w * sn;
  M.kappa = kappa;
  R r1 = abs(M.c) + abs(M.S), r2 = abs(M.T) + abs(M.c);
  M.norm = r1 > r2 ? r1 : r2;
  M.cond = R(4) + abs(th);
  return M;
}

template <class C>
inline void step_backward(PropState<C>& s, const C& z, const C& v, const real_t<C>& len) {
  using std::abs;
  using R = real_t<C>;
  auto M = piece_matrix(z, v, len);
  C y = M.c * s.y - M.S * s.dy;
  C dy = M.T * s.y + M.c * s.dy;
  R st = abs(s.y) + abs(s.dy);
  s.err = M.norm * s.err + std::numeric_limits<R>::epsilon() * M.cond * M.norm * st;
  s.y = y;
  s.dy = dy;
  s.log_scale += M.kappa;
  renormalize(s);
}

template <class C>
inline void step_forward(PropState<C>& s, const C& z, const C& v, const real_t<C>& len) {
  using std::abs;
  using R = real_t<C>;
  auto M = piece_matrix(z, v, len);
  C y = M.c * s.y + M.S * s.dy;
  C dy = -M.T * s.y + M.c * s.dy;
  R st = abs(s.y) + abs(s.dy);
  s.err = M.norm * s.err + std::numeric_limits<R>::epsilon() * M.cond * M.norm * st;
  s.y = y;
  s.dy = dy;
  s.log_scale += M.kappa;
  renormalize(s);
}

// e^{+-izx} and its derivative, split into a unit phase and a log scale
template <class C>
inline PropState<C> plane_wave(const C& z, const real_t<C>& x, int sign) {
  using std::exp;
  using std::imag;
  using std::real;
  using R = real_t<C>;
  PropState<C> s;
  const C i(R(0), R(1));
  s.y = exp(C(i * (R(sign) * real(z) * x)));
  s.dy = C(R(sign)) * i * z * s.y;
  s.log_scale = -R(sign) * imag(z) * x;
  renormalize(s);
  return s;
}

// Jost solution e+(x) of a step profile (line or half-line): backward from
// the right end
template <class C>
inline PropState<C> jost_plus_at(const StepProfile& sp, const C& z, double x) {
  using R = real_t<C>;
  double x0 = std::max(sp.right(), x);
  auto s = plane_wave(z, R(x0), +1);
  for (std::size_t k = sp.pieces(); k-- > 0;) {
    double a = std::max(sp.breakpoints[k], x), b = std::min(sp.breakpoints[k + 1], x0);
    if (b <= a) continue;
    step_backward(s, z, C(R(sp.values[k].real()), R(sp.values[k].imag())), R(b - a));
  }
  if (x < sp.left() && !sp.values.empty()) step_backward(s, z, C(R(0)), R(sp.left() - x));
  return s;
}

// e-(x) ~ e^{-izx} at -inf: forward from the left end
template <class C>
inline PropState<C> jost_minus_at(const StepProfile& sp, const C& z, double x) {
  using R = real_t<C>;
  double x0 = std::min(sp.left(), x);
  auto s = plane_wave(z, R(x0), -1);
  for (std::size_t k = 0; k < sp.pieces(); ++k) {
    double a = std::max(sp.breakpoints[k], x0), b = std::min(sp.breakpoints[k + 1], x);
    if (b <= a) continue;
    step_forward(s, z, C(R(sp.values[k].real()), R(sp.values[k].imag())), R(b - a));
  }
  if (x > sp.right() && !sp.values.empty()) step_forward(s, z, C(R(0)), R(x - sp.right()));
  return s;
}

template <class C>
struct ScaledValue {
  C mantissa;
  real_t<C> log_scale{0};
  real_t<C> err{0};
};

// W = e+(0) e-'(0) - e-(0) e+'(0), both solutions propagated toward 0
template <class C>
inline ScaledValue<C> line_wronskian_two_sided(const LinePotential& ql, const C& z) {
  using std::abs;
  auto p = jost_plus_at(ql.steps(), z, 0.0);
  auto m = jost_minus_at(ql.steps(), z, 0.0);
  ScaledValue<C> w;
  w.mantissa = p.y * m.dy - m.y * p.dy;
  w.log_scale = p.log_scale + m.log_scale;
  w.err = p.err * (abs(m.y) + abs(m.dy)) + m.err * (abs(p.y) + abs(p.dy));
  return w;
}

// even potential: W = -2 e+(0) e+'(0) of the half-line restriction
template <class C>
inline ScaledValue<C> line_wronskian_even(const LinePotential& ql, const C& z) {
  using std::abs;
  using R = real_t<C>;
  auto p = jost_plus_at(ql.steps(), z, 0.0);
  ScaledValue<C> w;
  w.mantissa = C(R(-2)) * p.y * p.dy;
  w.log_scale = R(2) * p.log_scale;
  w.err = R(2) * p.err * (abs(p.y) + abs(p.dy));
  return w;
}

inline void check_spectral_parameter(cplx z, bool strict_upper = false) {
  if (!is_finite(z)) throw DomainError("spectral parameter is not finite");
  if (z == cplx(0, 0)) throw DomainError("z = 0 is not allowed");
  if (z.imag() < 0 || (strict_upper && z.imag() == 0))
    throw DomainError("spectral parameter must lie in the closed upper half-plane");
}

inline JostEvaluation jost_transfer_matrix(const Potential& q, cplx z) {
  check_spectral_parameter(z);
  const auto& sp = q.steps();
  auto s = jost_plus_at(sp, z, 0.0);
  JostEvaluation r;
  r.z = z;
  r.value = s.y;
  r.derivative = s.dy;
  r.log_scale = s.log_scale;
  r.method = JostMethod::transfer_matrix;
  r.error_estimate = s.err;
  r.terms = static_cast<int>(sp.pieces());
  if (!is_finite(r.value) || !is_finite(r.derivative))
    throw NumericalError("transfer matrix produced a non-finite value");
  return r.folded();
}

inline ScaledComplex line_wronskian(const LinePotential& ql, cplx z) {
  check_spectral_parameter(z, true);
  auto w = ql.is_even() ? line_wronskian_even(ql, z) : line_wronskian_two_sided(ql, z);
  return ScaledComplex(w.mantissa, w.log_scale).normalized();
}

// W with a size built from |e+-| and |e+-'| for zero searches
struct WronskianEvaluation {
  ScaledComplex value;
  double rel_modulus = 1.0;
};

inline WronskianEvaluation line_wronskian_eval(const LinePotential& ql, cplx z) {
  check_spectral_parameter(z, true);
  auto p = jost_plus_at(ql.steps(), z, 0.0);
  auto m = jost_minus_at(ql.steps(), z, 0.0);
  cplx w = p.y * m.dy - m.y * p.dy;
  // the last two terms keep the measure from degenerating when e+ and e- are
  // mirror images (even potentials, W = -2 e+ e+')
  double az = std::abs(z);
  double size = std::abs(p.y) * std::abs(m.dy) + std::abs(m.y) * std::abs(p.dy) +
                std::abs(p.dy) * std::abs(m.dy) / az + az * std::abs(p.y) * std::abs(m.y);
  return {ScaledComplex(w, p.log_scale + m.log_scale).normalized(), size > 0 ? std::abs(w) / size : 1.0};
}

// e+(x; ql) for a line step potential
inline ScaledComplex line_jost_plus(const LinePotential& ql, cplx z, double x) {
  check_spectral_parameter(z);
  auto s = jost_plus_at(ql.steps(), z, x);
  return ScaledComplex(s.y, s.log_scale);
}

// ---------------------------------------------------------------------------
// upper bounds on |e+ - 1|

inline double jost_upper_bound(const Potential& q, cplx z, const WeightPair* w = nullptr) {
  check_spectral_parameter(z);
  double az = std::abs(z);
  if (!w) return std::expm1(q.l1_norm() / az);
  return std::expm1(w->ahat(1.0 / az) * weighted_norm(q, *w));
}

// |e+(0,z;q) - e+(0,z;q_X)|, Gronwall on the Volterra equation
inline double truncation_bound(double tail, double l1, double az) {
  if (tail <= 0) return 0.0;
  return tail / az * std::exp((l1 + tail) / az);
}

// ---------------------------------------------------------------------------
// successive approximations

struct SeriesNotConverged : NumericalError {
  int terms = 0;
  cplx partial_sum;
  double term_bound = 0;
  SeriesNotConverged(int n, cplx s, double b)
      : NumericalError("series did not converge within the term limit"), terms(n), partial_sum(s), term_bound(b) {}
};

struct SeriesOptions {
  double tol = 1e-10;
  int max_terms = 400;
  double max_step = 0.005;
  double phase_per_step = 0.02;  // 2|z| d
  double tail_tol = 1e-13;
};

namespace detail {

struct SeriesGrid {
  std::vector<double> x;                 // 2P+1 nodes
  std::vector<std::array<cplx, 3>> qp;   // q at (left, mid, right) of each panel
};

inline SeriesGrid series_grid(const Potential& q, double x_end, double d) {
  std::vector<double> cuts;
  for (double b : q.nodes())
    if (b >= 0 && b < x_end) cuts.push_back(b);
  cuts.push_back(x_end);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  if (cuts.front() != 0.0) cuts.insert(cuts.begin(), 0.0);
  SeriesGrid g;
  g.x.push_back(0.0);
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    double a = cuts[s], b = cuts[s + 1];
    int np = std::max(1, static_cast<int>(std::ceil((b - a) / (2 * d))));
    double h = (b - a) / (2 * np);
    cplx qc = q.is_step() ? q(0.5 * (a + b)) : cplx{};
    for (int p = 0; p < np; ++p) {
      double xa = a + 2 * p * h;
      double xm = xa + h;
      double xb = (p + 1 == np) ? b : xa + 2 * h;
      g.x.push_back(xm);
      g.x.push_back(xb);
      if (q.is_step())
        g.qp.push_back({qc, qc, qc});
      else
        g.qp.push_back({q(xa), q(xm), q(xb)});
    }
  }
  return g;
}

struct SeriesPass {
  cplx f0;
  cplx df0;
  int terms = 0;
  double sum_sup = 0;
  double last_sup = 0;
  bool converged = false;
};

inline SeriesPass series_pass(const SeriesGrid& g, cplx z, const SeriesOptions& opt) {
  const std::size_t N = g.x.size();
  const std::size_t P = g.qp.size();
  const cplx i2z(-2 * z.imag(), 2 * z.real());  // 2iz
  std::vector<cplx> ep(P), em(P), epp(P);
  std::vector<double> d(P);
  for (std::size_t p = 0; p < P; ++p) {
    d[p] = g.x[2 * p + 1] - g.x[2 * p];
    ep[p] = std::exp(i2z * d[p]);
    em[p] = std::exp(-i2z * d[p]);
    epp[p] = ep[p] * ep[p];
  }
  std::vector<cplx> F(N, cplx(1, 0)), E(N), Pv(N);
  SeriesPass out;
  for (int n = 1; n <= opt.max_terms; ++n) {
    E[N - 1] = 0;
    Pv[N - 1] = 0;
    for (std::size_t p = P; p-- > 0;) {
      std::size_t a = 2 * p, m = a + 1, b = a + 2;
      cplx ha = g.qp[p][0] * F[a], hm = g.qp[p][1] * F[m], hb = g.qp[p][2] * F[b];
      double w = d[p] / 12.0;
      E[m] = w * (-em[p] * ha + 8.0 * hm + 5.0 * ep[p] * hb) + ep[p] * E[b];
      Pv[m] = w * (-ha + 8.0 * hm + 5.0 * hb) + Pv[b];
      E[a] = w * (5.0 * ha + 8.0 * ep[p] * hm - epp[p] * hb) + ep[p] * E[m];
      Pv[a] = w * (5.0 * ha + 8.0 * hm - hb) + Pv[m];
    }
    double sup = 0;
    for (std::size_t k = 0; k < N; ++k) {
      F[k] = (E[k] - Pv[k]) / i2z;
      sup = std::max(sup, std::abs(F[k]));
    }
    out.f0 += F[0];
    out.df0 -= E[0];
    out.sum_sup += sup;
    out.last_sup = sup;
    out.terms = n;
    if (!std::isfinite(sup)) break;
    if (sup < opt.tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace detail

// cutoff where the tail of |q| drops below tol
inline double tail_cutoff(const Potential& q, double tol) {
  double end = q.support_end();
  if (std::isfinite(end)) return end;
  double X = 1.0;
  for (int k = 0; k < 200 && q.tail_bound(X) > tol; ++k) X *= 1.25;
  if (q.tail_bound(X) > tol) throw NumericalError("potential tail does not fall below the requested tolerance");
  return X;
}

inline JostEvaluation jost_series(const Potential& q, cplx z, double tol = 1e-10, SeriesOptions opt = {}) {
  check_spectral_parameter(z);
  opt.tol = tol;
  JostEvaluation r;
  r.z = z;
  r.method = JostMethod::series;
  const cplx iz(-z.imag(), z.real());
  const double az = std::abs(z);
  if (q.l1_norm() == 0.0) {
    r.value = 1.0;
    r.derivative = iz;
    return r;
  }
  double x_end = tail_cutoff(q, opt.tail_tol * az);
  double d = std::min(opt.max_step, opt.phase_per_step / (2 * az));
  auto coarse = detail::series_pass(detail::series_grid(q, x_end, d), z, opt);
  auto fine = detail::series_pass(detail::series_grid(q, x_end, d / 2), z, opt);
  if (!fine.converged) {
    double w1 = q.l1_norm() / az;
    double b = std::pow(w1, fine.terms) / std::tgamma(fine.terms + 1.0);
    throw SeriesNotConverged(fine.terms, 1.0 + fine.f0, b);
  }
  cplx f0 = fine.f0 + (fine.f0 - coarse.f0) / 15.0;
  cplx df0 = fine.df0 + (fine.df0 - coarse.df0) / 15.0;
  double disc = std::max(std::abs(fine.f0 - coarse.f0), std::abs(fine.df0 - coarse.df0) / std::max(az, 1.0));
  const double eps = std::numeric_limits<double>::epsilon();
  double tail = q.tail_bound(x_end);
  r.value = 1.0 + f0;
  r.derivative = iz * r.value + df0;
  r.error_estimate = disc / 15.0 * 4.0 + 2 * fine.last_sup + 64 * eps * (1 + fine.sum_sup) * (1 + 1 / az) +
                     truncation_bound(tail, q.l1_norm(), az);
  r.terms = fine.terms;
  return r;
}

// ---------------------------------------------------------------------------
// RK4 oracle

struct OdeOptions {
  double tail_tol = 1e-10;
};

namespace detail {

struct OdeRun {
  cplx y, dy;
  double log_scale = 0;
  int steps = 0;
};

inline OdeRun rk4_backward(const Potential& q, cplx z, double x_max, double step) {
  std::vector<double> cuts{x_max};
  for (double b : q.nodes())
    if (b > 0 && b < x_max) cuts.push_back(b);
  cuts.push_back(0.0);
  std::sort(cuts.rbegin(), cuts.rend());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto s = plane_wave<cplx>(z, x_max, +1);
  OdeRun out;
  cplx y = s.y, dy = s.dy;
  double ls = s.log_scale;
  const cplx z2 = z * z;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    double b = cuts[c], a = cuts[c + 1];
    int n = std::max(1, static_cast<int>(std::ceil((b - a) / step)));
    double h = -(b - a) / n;
    bool constant = q.is_step();
    cplx qc = constant ? q(0.5 * (a + b)) : cplx{};
    auto Q = [&](double x) { return constant ? qc : q(x); };
    double x = b;
    for (int k = 0; k < n; ++k) {
      double xm = x + 0.5 * h, xe = (k + 1 == n) ? a : x + h;
      cplx q0 = Q(x) - z2, qm = Q(xm) - z2, q1 = Q(xe) - z2;
      cplx k1y = dy, k1d = q0 * y;
      cplx k2y = dy + 0.5 * h * k1d, k2d = qm * (y + 0.5 * h * k1y);
      cplx k3y = dy + 0.5 * h * k2d, k3d = qm * (y + 0.5 * h * k2y);
      cplx k4y = dy + h * k3d, k4d = q1 * (y + h * k3y);
      y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
      dy += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
      x = xe;
      double m = std::max(std::abs(y), std::abs(dy));
      if (m > 0x1p64 || (m < 0x1p-64 && m > 0)) {
        int e;
        std::frexp(m, &e);
        y = std::ldexp(1.0, -e) * y;
        dy = std::ldexp(1.0, -e) * dy;
        ls += e * std::numbers::ln2;
      }
      ++out.steps;
    }
  }
  out.y = y;
  out.dy = dy;
  out.log_scale = ls;
  return out;
}

}  // namespace detail

inline JostEvaluation jost_ode(const Potential& q, cplx z, double x_max, double step, OdeOptions opt = {}) {
  check_spectral_parameter(z);
  if (!(step > 0)) throw DomainError("ode step must be positive");
  double tail = q.tail_bound(x_max);
  if (tail > opt.tail_tol) throw DomainError("ode cutoff too short: tail bound exceeds the tolerance");
  const double az = std::abs(z);
  auto coarse = detail::rk4_backward(q, z, x_max, step);
  auto fine = detail::rk4_backward(q, z, x_max, step / 2);
  // coarse at fine's scale
  double rel = std::exp(coarse.log_scale - fine.log_scale);
  cplx cy = coarse.y * rel, cdy = coarse.dy * rel;
  double disc = std::max(std::abs(fine.y - cy), std::abs(fine.dy - cdy) / std::max(az, 1.0));
  const double eps = std::numeric_limits<double>::epsilon();
  JostEvaluation r;
  r.z = z;
  r.method = JostMethod::ode;
  r.value = fine.y;
  r.derivative = fine.dy;
  r.log_scale = fine.log_scale;
  double mag = std::max(std::abs(fine.y), std::abs(fine.dy) / std::max(az, 1.0));
  r.error_estimate = 2.0 * disc / 15.0 + 8 * eps * fine.steps * mag +
                     truncation_bound(tail, q.l1_norm(), az) * std::exp(-fine.log_scale);
  r.terms = fine.steps;
  return r.folded();
}

inline double ode_default_step(cplx z) { return std::min(1e-3, 0.02 / std::max(1.0, std::abs(z))); }

inline JostEvaluation jost_ode(const Potential& q, cplx z) {
  return jost_ode(q, z, tail_cutoff(q, 1e-12), ode_default_step(z));
}

// preferred evaluator: exact for step potentials
inline JostEvaluation jost(const Potential& q, cplx z) {
  if (q.is_step()) return jost_transfer_matrix(q, z);
  return jost_ode(q, z);
}

}  // namespace jostspec
