#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "branchmath.hpp"
#include "scaled.hpp"

namespace jostspec {

// value of an analytic function with a dimensionless size indicator
// (rel_modulus ~ 0 only near a zero)
struct AnalyticSample {
  cplx mantissa;
  double log_scale = 0.0;
  double rel_modulus = 1.0;
};

using AnalyticFn = std::function<AnalyticSample(cplx)>;

struct ContourTooClose : NumericalError {
  cplx where;
  explicit ContourTooClose(cplx w, const std::string& why) : NumericalError(why), where(w) {}
};

struct WindingOptions {
  int samples_per_edge = 8;
  int max_depth = 48;
  double max_phase_step = std::numbers::pi / 2;
  double min_modulus = 1e-9;
  // bound on |d arg f / dz| (e.g. 2x support for e+); sets the initial
  // sampling so that no edge step can hide a full turn
  double phase_rate = 0.0;
  // keep every sample (quadtree reuse); one-shot counts over long contours
  // turn this off to bound memory
  bool cache_samples = true;
};

struct Box {
  double x0, x1, y0, y1;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double size() const { return std::max(width(), height()); }
  cplx center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  bool contains(cplx z, double slack = 0.0) const {
    return z.real() >= x0 - slack && z.real() <= x1 + slack && z.imag() >= y0 - slack && z.imag() <= y1 + slack;
  }
  std::vector<cplx> corners() const { return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}; }
};

// Phase continuation with a cache of edge increments so that quadtree
// children reuse the halves of their parent's edges.
class WindingCounter {
 public:
  WindingCounter(AnalyticFn f, WindingOptions opt) : f_(std::move(f)), opt_(opt) {}

  AnalyticSample sample(cplx z) {
    auto it = samples_.find(key(z));
    if (it != samples_.end()) return it->second;
    auto s = f_(z);
    ++evaluations_;
    if (!std::isfinite(s.mantissa.real()) || !std::isfinite(s.mantissa.imag()))
      throw ContourTooClose(z, "non-finite function value on contour");
    if (opt_.cache_samples) samples_.emplace(key(z), s);
    return s;
  }

  // total phase change along a -> b
  double edge_phase(cplx a, cplx b) {
    auto k = std::make_pair(key(a), key(b));
    if (auto it = edges_.find(k); it != edges_.end()) return it->second;
    auto kr = std::make_pair(key(b), key(a));
    if (auto it = edges_.find(kr); it != edges_.end()) return -it->second;
    double total = 0;
    int n = opt_.samples_per_edge;
    if (opt_.phase_rate > 0) {
      double need = std::ceil(std::abs(b - a) * opt_.phase_rate / (std::numbers::pi / 4));
      if (need > n) n = static_cast<int>(std::min(need, 1e7));
    }
    cplx prev = a;
    AnalyticSample sp = checked(a);
    for (int i = 1; i <= n; ++i) {
      cplx p = (i == n) ? b : a + (b - a) * (double(i) / n);
      auto s = checked(p);
      total += segment(prev, sp, p, s, 0);
      prev = p;
      sp = s;
    }
    edges_.emplace(k, total);
    return total;
  }

  // winding number of a closed polygon, counted edge by edge with each edge
  // split at its midpoint (so sub-boxes hit the cache)
  int winding(const std::vector<cplx>& poly) {
    double total = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      cplx a = poly[i], b = poly[(i + 1) % poly.size()];
      total += edge_phase(a, b);
    }
    double w = total / (2 * std::numbers::pi);
    long r = std::lround(w);
    if (std::abs(w - r) > 0.05) throw NumericalError("winding number is not close to an integer");
    return static_cast<int>(r);
  }

  int count(const Box& b) {
    cplx c[4] = {{b.x0, b.y0}, {b.x1, b.y0}, {b.x1, b.y1}, {b.x0, b.y1}};
    std::vector<cplx> poly;
    for (int i = 0; i < 4; ++i) {
      poly.push_back(c[i]);
      poly.push_back(0.5 * (c[i] + c[(i + 1) % 4]));
    }
    return winding(poly);
  }

  long evaluations() const { return evaluations_; }
  const WindingOptions& options() const { return opt_; }
  const AnalyticFn& function() const { return f_; }

 private:
  static std::pair<double, double> key(cplx z) { return {z.real(), z.imag()}; }

  AnalyticSample checked(cplx z) {
    auto s = sample(z);
    if (s.rel_modulus < opt_.min_modulus || s.mantissa == cplx(0, 0))
      throw ContourTooClose(z, "contour passes too close to a zero");
    return s;
  }

  double segment(cplx a, const AnalyticSample& fa, cplx b, const AnalyticSample& fb, int depth) {
    double d = std::arg(fb.mantissa * std::conj(fa.mantissa));
    if (std::abs(d) <= opt_.max_phase_step) return d;
    if (depth >= opt_.max_depth) throw ContourTooClose(0.5 * (a + b), "phase step failure after max refinement");
    cplx m = 0.5 * (a + b);
    auto fm = checked(m);
    return segment(a, fa, m, fm, depth + 1) + segment(m, fm, b, fb, depth + 1);
  }

  AnalyticFn f_;
  WindingOptions opt_;
  std::map<std::pair<double, double>, AnalyticSample> samples_;
  std::map<std::pair<std::pair<double, double>, std::pair<double, double>>, double> edges_;
  long evaluations_ = 0;
};

struct NewtonResult {
  cplx z;
  bool converged = false;
  int iterations = 0;
  double rel_modulus = 1.0;
};

// Newton with a central-difference derivative; values compared at a common
// log scale
inline NewtonResult newton_refine(const AnalyticFn& f, cplx z0, double tol = 1e-13, int max_iter = 60) {
  NewtonResult r;
  cplx z = z0;
  for (int it = 0; it < max_iter; ++it) {
    r.iterations = it + 1;
    double h = 1e-7 * (1 + std::abs(z));
    AnalyticSample f0, fp, fm;
    try {
      f0 = f(z);
      fp = f(z + h);
      fm = f(z - h);
    } catch (const std::exception&) {
      break;
    }
    if (f0.mantissa == cplx(0, 0)) {
      r.z = z;
      r.converged = true;
      r.rel_modulus = 0;
      return r;
    }
    double L = f0.log_scale;
    cplx d = (fp.mantissa * std::exp(fp.log_scale - L) - fm.mantissa * std::exp(fm.log_scale - L)) / (2 * h);
    if (d == cplx(0, 0) || !is_finite(d)) break;
    cplx step = f0.mantissa / d;
    z -= step;
    if (!is_finite(z)) break;
    if (std::abs(step) <= tol * (1 + std::abs(z))) {
      r.converged = true;
      break;
    }
  }
  r.z = z;
  try {
    r.rel_modulus = f(z).rel_modulus;
  } catch (const std::exception&) {
    r.converged = false;
  }
  return r;
}

struct FoundZero {
  cplx z;
  int multiplicity = 1;
  double residual = 0.0;
  Box box{};
};

struct UnresolvedRegion {
  Box box{};
  int count = -1;  // -1 when even the count failed
  std::string reason;
};

struct ZeroSearchOptions {
  double tol = 1e-10;  // box size below which a count becomes a multiplicity
  double newton_tol = 1e-13;
  double residual_tol = 1e-8;
  long max_boxes = 200000;
  WindingOptions winding;
};

struct ZeroSearchResult {
  std::vector<FoundZero> zeros;
  std::vector<UnresolvedRegion> unresolved;
  int total_count = 0;
  Box root{};
  long evaluations = 0;
  long boxes = 0;
};

namespace detail {

inline std::optional<std::array<Box, 4>> split_box(WindingCounter& wc, const Box& b, int expect,
                                                   std::array<int, 4>& counts) {
  static constexpr double fractions[] = {0.5, 0.4713, 0.5347, 0.4411, 0.5621, 0.3917, 0.6133};
  for (double fr : fractions) {
    double xm = b.x0 + fr * b.width(), ym = b.y0 + (1 - fr) * b.height();
    std::array<Box, 4> ch{Box{b.x0, xm, b.y0, ym}, Box{xm, b.x1, b.y0, ym}, Box{b.x0, xm, ym, b.y1},
                          Box{xm, b.x1, ym, b.y1}};
    try {
      int sum = 0;
      for (int i = 0; i < 4; ++i) {
        counts[i] = wc.count(ch[i]);
        sum += counts[i];
      }
      if (sum == expect) return ch;
    } catch (const NumericalError&) {
    }
  }
  return std::nullopt;
}

}  // namespace detail

// All zeros of f inside the box, by winding counts and quadtree subdivision.
inline ZeroSearchResult find_zeros(const AnalyticFn& f, Box root, const ZeroSearchOptions& opt = {}) {
  ZeroSearchResult res;
  WindingCounter wc(f, opt.winding);
  res.root = root;
  res.total_count = wc.count(root);
  std::deque<std::pair<Box, int>> work;
  if (res.total_count > 0) work.emplace_back(root, res.total_count);
  while (!work.empty()) {
    auto [b, n] = work.front();
    work.pop_front();
    if (++res.boxes > opt.max_boxes) {
      res.unresolved.push_back({b, n, "box budget exhausted"});
      continue;
    }
    if (n == 1) {
      auto nr = newton_refine(f, b.center(), opt.newton_tol);
      if (nr.converged && b.contains(nr.z, 1e-12 * (1 + std::abs(nr.z))) && nr.rel_modulus < opt.residual_tol) {
        res.zeros.push_back({nr.z, 1, nr.rel_modulus, b});
        continue;
      }
    }
    if (b.size() < opt.tol * (1 + std::abs(b.center()))) {
      auto nr = newton_refine(f, b.center(), opt.newton_tol);
      cplx z = (nr.converged && b.contains(nr.z, b.size())) ? nr.z : b.center();
      res.zeros.push_back({z, n, f(z).rel_modulus, b});
      continue;
    }
    std::array<int, 4> counts{};
    auto ch = detail::split_box(wc, b, n, counts);
    if (!ch) {
      res.unresolved.push_back({b, n, "subdivision failed (zero on a child contour or inconsistent counts)"});
      continue;
    }
    for (int i = 0; i < 4; ++i)
      if (counts[i] > 0) work.emplace_back((*ch)[i], counts[i]);
  }
  res.evaluations = wc.evaluations();
  std::sort(res.zeros.begin(), res.zeros.end(), [](const FoundZero& a, const FoundZero& b) {
    cplx la = a.z * a.z, lb = b.z * b.z;
    if (la.real() != lb.real()) return la.real() < lb.real();
    return la.imag() < lb.imag();
  });
  return res;
}

}  // namespace jostspec
