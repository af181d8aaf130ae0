#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "branchmath.hpp"

namespace jostspec {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

// adaptive Gauss-Kronrod on a finite interval
template <class F>
QuadResult integrate(F&& f, double a, double b, double rel_tol = 1e-12) {
  if (!(b > a)) return {};
  double err = 0.0, l1 = 0.0;
  double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      std::function<double(double)>(f), a, b, 20, rel_tol, &err, &l1);
  if (!std::isfinite(v)) throw NumericalError("quadrature produced a non-finite value");
  return {v, err};
}

// same, split at interior kinks
template <class F>
QuadResult integrate_split(F&& f, double a, double b, const std::vector<double>& kinks,
                           double rel_tol = 1e-12) {
  std::vector<double> pts{a};
  for (double k : kinks)
    if (k > a && k < b) pts.push_back(k);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  QuadResult r;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    auto p = integrate(f, pts[i], pts[i + 1], rel_tol);
    r.value += p.value;
    r.error += p.error;
  }
  return r;
}

struct TailIntegral {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
  bool divergent = false;
  double reached = 0.0;  // last x covered
};

struct HalfLineIntegrand {
  std::function<double(double)> in_x;        // f(x) >= 0
  std::function<double(double)> in_log;      // f(e^u) e^u, optional
  std::function<double(double)> tail_bound;  // >= int_X^inf f, optional
  bool tail_is_exact = false;
  std::vector<double> kinks;
};

// Integrate a nonnegative f over [start, inf) in doubling windows, first in x
// and (if a log-space form is given) then in u = log x. Stops on a tail
// bound, or when window contributions decay geometrically. Contributions that
// stop decreasing are reported as divergence.
inline TailIntegral integrate_halfline(const HalfLineIntegrand& f, double start,
                                       double rel_tol = 1e-10, int max_windows = 400) {
  TailIntegral out;
  double X = start;
  double prev_c = -1.0;
  int nondecreasing = 0;
  int windows = 0;
  int zero_run = 0;
  double prev_ratio = -1.0;
  double last_kink = 0.0;
  for (double k : f.kinks) last_kink = std::max(last_kink, k);
  const double x_switch = f.in_log ? 64.0 : std::numeric_limits<double>::infinity();

  auto settle = [&](double c) -> bool {
    ++windows;
    out.value += c;
    out.reached = X;
    if (f.tail_bound) {
      double t = f.tail_bound(X);
      if (f.tail_is_exact && std::isfinite(t)) {
        out.value += t;
        out.error = 1e-14 * out.value;
        out.converged = true;
        return true;
      }
      if (t <= rel_tol * out.value || t == 0.0) {
        out.error = t;
        out.converged = true;
        return true;
      }
    }
    if (X <= last_kink) {
      prev_c = -1.0;
      return false;
    }
    if (prev_c >= 0.0) {
      if (c == 0.0 && prev_c == 0.0) {
        if (++zero_run >= 3) {
          out.converged = true;
          return true;
        }
        return false;
      }
      zero_run = 0;
      if (out.value == 0.0) {
        prev_c = c;
        return false;
      }
      double ratio = prev_c > 0.0 ? c / prev_c : (c > 0.0 ? 2.0 : 0.0);
      if (ratio < 0.75) {
        double est = c * ratio / (1.0 - ratio);
        if (est <= rel_tol * out.value) {
          out.error = est;
          out.converged = true;
          return true;
        }
        // power-law tails are geometric in doubling windows: extrapolate once
        // the ratio has settled. The ratio drifts toward its limit by about
        // the last change per window, so the tail lies between the sums at
        // the current and the limiting ratio
        double drift = std::abs(ratio - prev_ratio);
        if (prev_ratio >= 0.0 && drift < 1e-3 && est <= 1e-3 * out.value) {
          double r_lim = std::max(0.0, ratio - drift);
          double low = c * r_lim / (1.0 - r_lim);
          out.value += 0.5 * (est + low);
          out.error = 0.5 * std::abs(est - low) + rel_tol * out.value;
          out.converged = true;
          return true;
        }
      }
      prev_ratio = ratio;
      if (windows > 4 && ratio >= 1.0) {
        if (++nondecreasing >= 4) {
          out.divergent = true;
          return true;
        }
      } else {
        nondecreasing = 0;
      }
    }
    prev_c = c;
    return false;
  };

  while (X < x_switch && windows < max_windows) {
    double next = std::max(2.0 * X, X + 1.0);
    double c = integrate_split(f.in_x, X, next, f.kinks, 1e-12).value;
    X = next;
    if (settle(c)) return out;
  }
  if (!f.in_log) return out;
  // log phase
  double U = std::log(X);
  while (windows < max_windows && U < 700.0) {
    double next = 2.0 * U;
    double c = integrate(f.in_log, U, next, 1e-12).value;
    U = next;
    X = std::exp(std::min(U, 700.0));
    if (settle(c)) return out;
  }
  return out;
}

// bisection for the inverse of an increasing function
template <class F>
double invert_increasing(F&& g, double target, double lo, double hi, double rel_tol = 1e-13) {
  for (int it = 0; it < 400; ++it) {
    double mid = 0.5 * (lo + hi);
    if (g(mid) < target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= rel_tol * hi) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace jostspec
