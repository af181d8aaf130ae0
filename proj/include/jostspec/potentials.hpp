#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "branchmath.hpp"
#include "quadrature.hpp"

namespace jostspec {

inline constexpr double inf = std::numeric_limits<double>::infinity();

struct WeightDivergence : NumericalError {
  using NumericalError::NumericalError;
};

// piecewise constant: values[k] on [breakpoints[k], breakpoints[k+1])
struct StepProfile {
  std::vector<double> breakpoints;
  std::vector<cplx> values;

  std::size_t pieces() const { return values.size(); }
  double left() const { return breakpoints.front(); }
  double right() const { return breakpoints.back(); }
  double length(std::size_t k) const { return breakpoints[k + 1] - breakpoints[k]; }
};

inline void validate_steps(const StepProfile& s) {
  if (s.breakpoints.empty()) throw DomainError("step profile needs at least one breakpoint");
  if (s.breakpoints.size() != s.values.size() + 1)
    throw DomainError("step profile: need one more breakpoint than values");
  for (std::size_t k = 0; k + 1 < s.breakpoints.size(); ++k)
    if (!(s.breakpoints[k + 1] > s.breakpoints[k]))
      throw DomainError("step profile: breakpoints must be strictly increasing");
  for (double b : s.breakpoints)
    if (!std::isfinite(b)) throw DomainError("step profile: non-finite breakpoint");
  for (auto v : s.values)
    if (!is_finite(v)) throw DomainError("step profile: non-finite value");
}

// q given by an evaluator. tail_bound(X) >= int_X^inf |q|.
struct SampledProfile {
  std::function<cplx(double)> q;
  double support_end = inf;
  std::function<double(double)> tail_bound;
  bool tail_is_exact = false;
  std::function<double(double)> abs_log_density;  // |q(e^u)| e^u, optional
  std::vector<double> kinks;
  std::string label = "sampled";
};

class Potential {
 public:
  enum class Kind { step, sampled };

  static Potential step(std::vector<double> breakpoints, std::vector<cplx> values) {
    StepProfile s{std::move(breakpoints), std::move(values)};
    validate_steps(s);
    if (s.breakpoints.front() != 0.0) throw DomainError("half-line step profile must start at x = 0");
    return Potential(std::move(s));
  }

  static Potential zero() { return step({0.0}, {}); }

  static Potential barrier(double gamma, double R) {
    if (!(gamma > 0) || !(R > 0)) throw DomainError("barrier needs gamma > 0 and R > 0");
    return step({0.0, R}, {cplx(0.0, gamma)});
  }

  static Potential sampled(SampledProfile p) {
    if (!p.q) throw DomainError("sampled potential needs an evaluator");
    if (!std::isfinite(p.support_end) && !p.tail_bound)
      throw DomainError("sampled potential without finite support must declare a tail bound");
    return Potential(std::move(p));
  }

  // c exp(-(x-x0)^2 / (2 s^2)) restricted to the half-line
  static Potential gaussian_bump(cplx c, double x0, double s) {
    if (!(s > 0)) throw DomainError("gaussian width must be positive");
    SampledProfile p;
    p.q = [=](double x) { return c * std::exp(-(x - x0) * (x - x0) / (2 * s * s)); };
    double ac = std::abs(c);
    p.tail_bound = [=](double X) {
      return ac * s * std::sqrt(std::numbers::pi / 2) * std::erfc((X - x0) / (s * std::numbers::sqrt2));
    };
    p.tail_is_exact = true;
    p.label = "gaussian";
    return sampled(std::move(p));
  }

  // i / (x log^alpha x) for x >= e
  static Potential log_decay(double alpha) {
    if (!(alpha > 1)) throw DomainError("log potential needs alpha > 1");
    SampledProfile p;
    p.q = [=](double x) {
      if (x < std::numbers::e) return cplx(0.0, 0.0);
      return cplx(0.0, 1.0 / (x * std::pow(std::log(x), alpha)));
    };
    p.tail_bound = [=](double X) {
      double L = std::max(std::log(std::max(X, std::numbers::e)), 1.0);
      return 1.0 / ((alpha - 1) * std::pow(L, alpha - 1));
    };
    p.tail_is_exact = true;
    p.abs_log_density = [=](double u) { return u < 1.0 ? 0.0 : std::pow(u, -alpha); };
    p.kinks = {std::numbers::e};
    p.label = "log";
    return sampled(std::move(p));
  }

  Kind kind() const { return std::holds_alternative<StepProfile>(rep_) ? Kind::step : Kind::sampled; }
  bool is_step() const { return kind() == Kind::step; }

  const StepProfile& steps() const {
    if (!is_step()) throw DomainError("potential is not piecewise constant");
    return std::get<StepProfile>(rep_);
  }
  const SampledProfile& samples() const { return std::get<SampledProfile>(rep_); }

  cplx operator()(double x) const {
    if (x < 0) return {0.0, 0.0};
    if (is_step()) {
      const auto& s = steps();
      if (s.values.empty() || x >= s.right()) return {0.0, 0.0};
      auto it = std::upper_bound(s.breakpoints.begin(), s.breakpoints.end(), x);
      return s.values[static_cast<std::size_t>(it - s.breakpoints.begin()) - 1];
    }
    const auto& p = samples();
    if (x > p.support_end) return {0.0, 0.0};
    return p.q(x);
  }

  double support_end() const { return is_step() ? steps().right() : samples().support_end; }

  // int_X^inf |q|
  double tail_bound(double X) const {
    if (X >= support_end()) return 0.0;
    if (is_step()) {
      const auto& s = steps();
      double t = 0;
      for (std::size_t k = 0; k < s.pieces(); ++k) {
        double a = std::max(s.breakpoints[k], X), b = s.breakpoints[k + 1];
        if (b > a) t += std::abs(s.values[k]) * (b - a);
      }
      return t;
    }
    const auto& p = samples();
    if (p.tail_bound) return p.tail_bound(X);
    return integrate_split([&](double x) { return std::abs(p.q(x)); }, X, p.support_end, p.kinks, 1e-12)
        .value;
  }

  bool tail_is_exact() const { return is_step() || samples().tail_is_exact; }

  double l1_norm() const { return *l1_; }

  // breakpoints (step) or kinks (sampled) inside [0, support)
  std::vector<double> nodes() const {
    if (is_step()) return steps().breakpoints;
    std::vector<double> out{0.0};
    for (double k : samples().kinks)
      if (k > 0) out.push_back(k);
    return out;
  }

 private:
  explicit Potential(StepProfile s) : rep_(std::move(s)) {
    double t = 0;
    const auto& st = std::get<StepProfile>(rep_);
    for (std::size_t k = 0; k < st.pieces(); ++k) t += std::abs(st.values[k]) * st.length(k);
    l1_ = std::make_shared<const double>(t);
  }

  explicit Potential(SampledProfile p) : rep_(std::move(p)) {
    const auto& s = std::get<SampledProfile>(rep_);
    double v;
    if (std::isfinite(s.support_end)) {
      v = integrate_split([&](double x) { return std::abs(s.q(x)); }, 0.0, s.support_end, s.kinks, 1e-12)
              .value;
    } else {
      HalfLineIntegrand f;
      f.in_x = [&](double x) { return std::abs(s.q(x)); };
      if (s.abs_log_density) f.in_log = s.abs_log_density;
      f.tail_bound = s.tail_bound;
      f.tail_is_exact = s.tail_is_exact;
      f.kinks = s.kinks;
      auto r = integrate_halfline(f, 0.0, 1e-10);
      if (!r.converged) throw NumericalError("l1 norm of sampled potential did not converge");
      v = r.value;
    }
    if (!std::isfinite(v)) throw DomainError("potential is not integrable");
    l1_ = std::make_shared<const double>(v);
  }

  std::variant<StepProfile, SampledProfile> rep_;
  std::shared_ptr<const double> l1_;
};

inline double l1_norm(const Potential& q) { return q.l1_norm(); }

// compactly supported step potential on the line
class LinePotential {
 public:
  LinePotential() : s_{{0.0}, {}} {}
  LinePotential(std::vector<double> breakpoints, std::vector<cplx> values)
      : s_{std::move(breakpoints), std::move(values)} {
    validate_steps(s_);
  }

  static LinePotential zero() { return {}; }

  const StepProfile& steps() const { return s_; }
  double left() const { return s_.left(); }
  double right() const { return s_.right(); }
  double radius() const { return std::max(std::abs(left()), std::abs(right())); }
  bool empty() const { return s_.values.empty(); }

  cplx operator()(double x) const {
    if (empty() || x < left() || x >= right()) return {0.0, 0.0};
    auto it = std::upper_bound(s_.breakpoints.begin(), s_.breakpoints.end(), x);
    return s_.values[static_cast<std::size_t>(it - s_.breakpoints.begin()) - 1];
  }

  double l1_norm() const {
    double t = 0;
    for (std::size_t k = 0; k < s_.pieces(); ++k) t += std::abs(s_.values[k]) * s_.length(k);
    return t;
  }

  // part on [0, inf) as a half-line potential
  Potential positive_part() const { return restrict_half(s_, false); }

  // x -> q(-x) on [0, inf)
  Potential reflected_negative_part() const { return restrict_half(s_, true); }

  bool is_even(double tol = 0.0) const {
    const auto& b = s_.breakpoints;
    std::size_t m = b.size();
    for (std::size_t i = 0; i < m; ++i)
      if (std::abs(b[i] + b[m - 1 - i]) > tol) return false;
    for (std::size_t k = 0; k < s_.pieces(); ++k)
      if (std::abs(s_.values[k] - s_.values[s_.pieces() - 1 - k]) > tol) return false;
    return true;
  }

  LinePotential shifted(double X) const {
    auto b = s_.breakpoints;
    for (auto& x : b) x += X;
    return {b, s_.values};
  }

  LinePotential scaled(cplx c) const {
    auto v = s_.values;
    for (auto& x : v) x *= c;
    return {s_.breakpoints, v};
  }

 private:
  static Potential restrict_half(const StepProfile& s, bool reflect) {
    std::vector<double> b{0.0};
    std::vector<cplx> v;
    if (s.values.empty()) return Potential::zero();
    // walk pieces outward from 0
    std::vector<std::pair<double, double>> seg;
    std::vector<cplx> val;
    for (std::size_t k = 0; k < s.pieces(); ++k) {
      double lo = s.breakpoints[k], hi = s.breakpoints[k + 1];
      if (reflect) std::swap(lo, hi), lo = -lo, hi = -hi;
      lo = std::max(lo, 0.0);
      if (hi > lo) {
        seg.emplace_back(lo, hi);
        val.push_back(s.values[k]);
      }
    }
    std::vector<std::size_t> idx(seg.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](auto a, auto c) { return seg[a].first < seg[c].first; });
    for (auto i : idx) {
      if (seg[i].first > b.back()) {
        v.push_back(0.0);
        b.push_back(seg[i].first);
      }
      v.push_back(val[i]);
      b.push_back(seg[i].second);
    }
    return Potential::step(b, v);
  }

  StepProfile s_;
};

// a(x) and â(x) = x / a(x)
struct WeightPair {
  std::function<double(double)> a;
  std::function<double(double)> a_of_log;                     // a(e^u), optional
  std::function<double(double)> tail_integral;                // int_t^inf dx/(x a(x)), optional
  std::vector<double> kinks;
  double ahat_sup = inf;                                       // â(inf)
  std::string name = "custom";

  double ahat(double x) const { return x <= 0 ? 0.0 : x / a(x); }

  // smallest-bracket bisection for â(x) = c
  std::optional<double> try_ahat_inverse(double c) const {
    if (c <= 0) return 0.0;
    if (c >= ahat_sup) return std::nullopt;
    double hi = 1.0;
    int k = 0;
    while (ahat(hi) < c) {
      hi *= 2;
      if (++k > 2000 || !std::isfinite(hi)) return std::nullopt;
    }
    double lo = 0.0;
    return invert_increasing([&](double x) { return ahat(x); }, c, lo, hi, 1e-14);
  }

  double ahat_inverse(double c) const {
    auto r = try_ahat_inverse(c);
    if (!r) throw DomainError("weight: range of x/a(x) does not reach the requested value");
    return *r;
  }

  // int_t^inf dx/(x a(x)); inf if it diverges
  double inverse_tail(double t) const {
    if (tail_integral) return tail_integral(t);
    HalfLineIntegrand f;
    f.in_x = [&](double x) { return 1.0 / (x * a(x)); };
    if (a_of_log) f.in_log = [&](double u) { return 1.0 / a_of_log(u); };
    f.kinks = kinks;
    auto r = integrate_halfline(f, t, 1e-12);
    if (r.divergent) return inf;
    if (!r.converged) throw NumericalError("weight tail integral undecided");
    return r.value;
  }

  static WeightPair unit() {
    WeightPair w;
    w.a = [](double) { return 1.0; };
    w.a_of_log = [](double) { return 1.0; };
    w.tail_integral = [](double) { return inf; };
    w.name = "unit";
    return w;
  }

  static WeightPair poly(double p) {
    if (!(p > 0 && p < 1)) throw DomainError("poly weight needs p in (0,1)");
    WeightPair w;
    w.a = [p](double x) { return 1.0 + std::pow(x, p); };
    w.a_of_log = [p](double u) { return 1.0 + std::exp(p * u); };
    w.tail_integral = [p](double t) { return std::log1p(std::pow(t, -p)) / p; };
    w.name = "poly";
    return w;
  }

  // 1 on [0,R], (log x / log R)^2 beyond
  static WeightPair compact(double R) {
    if (!(R > 1)) throw DomainError("compact-support weight needs R > 1");
    WeightPair w;
    double L = std::log(R);
    w.a = [R, L](double x) { return x <= R ? 1.0 : std::pow(std::log(x) / L, 2); };
    w.a_of_log = [L](double u) { return u <= L ? 1.0 : (u / L) * (u / L); };
    w.tail_integral = [R, L](double t) {
      if (t >= R) return L * L / std::log(t);
      return std::log(R / t) + L;
    };
    w.kinks = {R};
    w.name = "compact";
    return w;
  }

  // beta^beta below e^beta, log^beta x above
  static WeightPair log_power(double beta) {
    if (!(beta > 0)) throw DomainError("log weight needs beta > 0");
    WeightPair w;
    double b0 = std::pow(beta, beta), xb = std::exp(beta);
    w.a = [=](double x) { return x < xb ? b0 : std::pow(std::log(x), beta); };
    w.a_of_log = [=](double u) { return u < beta ? b0 : std::pow(u, beta); };
    if (beta > 1) {
      w.tail_integral = [=](double t) {
        double far = 1.0 / ((beta - 1) * std::pow(beta, beta - 1));
        if (t >= xb) return 1.0 / ((beta - 1) * std::pow(std::log(t), beta - 1));
        return (beta - std::log(t)) / b0 + far;
      };
    } else {
      w.tail_integral = [](double) { return inf; };
    }
    w.kinks = {xb};
    w.name = "log_power";
    return w;
  }
};

// int a |q|; throws WeightDivergence when the tail keeps growing
inline double weighted_norm(const Potential& q, const WeightPair& w) {
  if (q.is_step()) {
    const auto& s = q.steps();
    double t = 0;
    for (std::size_t k = 0; k < s.pieces(); ++k) {
      if (s.values[k] == cplx(0, 0)) continue;
      t += std::abs(s.values[k]) *
           integrate_split(w.a, s.breakpoints[k], s.breakpoints[k + 1], w.kinks, 1e-13).value;
    }
    return t;
  }
  const auto& p = q.samples();
  auto kinks = p.kinks;
  kinks.insert(kinks.end(), w.kinks.begin(), w.kinks.end());
  if (std::isfinite(p.support_end))
    return integrate_split([&](double x) { return w.a(x) * std::abs(p.q(x)); }, 0.0, p.support_end, kinks,
                           1e-12)
        .value;
  HalfLineIntegrand f;
  f.in_x = [&](double x) { return w.a(x) * std::abs(p.q(x)); };
  if (p.abs_log_density && w.a_of_log)
    f.in_log = [&](double u) { return w.a_of_log(u) * p.abs_log_density(u); };
  f.kinks = kinks;
  auto r = integrate_halfline(f, 0.0, 1e-10);
  if (r.divergent) throw WeightDivergence("weighted norm diverges: potential is not in the weight class");
  if (!r.converged) throw NumericalError("weighted norm tail undecided");
  return r.value;
}

inline Potential truncate(const Potential& q, double X) {
  if (!(X > 0)) throw DomainError("truncation level must be positive");
  if (q.is_step()) {
    const auto& s = q.steps();
    if (X >= s.right()) return q;
    std::vector<double> b{0.0};
    std::vector<cplx> v;
    for (std::size_t k = 0; k < s.pieces() && s.breakpoints[k] < X; ++k) {
      b.push_back(std::min(s.breakpoints[k + 1], X));
      v.push_back(s.values[k]);
    }
    return Potential::step(b, v);
  }
  SampledProfile p = q.samples();
  if (X >= p.support_end) return q;
  p.support_end = X;
  auto old_tail = p.tail_bound;
  auto f = p.q;
  p.tail_bound = [f, X](double Y) {
    if (Y >= X) return 0.0;
    return integrate([&](double x) { return std::abs(f(x)); }, Y, X, 1e-12).value;
  };
  p.tail_is_exact = true;
  p.abs_log_density = nullptr;
  return Potential::sampled(std::move(p));
}

struct ShiftedPotential {
  Potential potential;
  bool overlap = false;
};

// q + ql(. - X) for step q and compact ql
inline ShiftedPotential shift_superpose(const Potential& q, const LinePotential& ql, double X) {
  if (!(X > ql.radius()) && !ql.empty())
    throw DomainError("shift must move the line potential into the half-line");
  const auto& s = q.steps();
  if (ql.empty()) return {q, false};
  const auto& t = ql.steps();
  std::vector<double> pts = s.breakpoints;
  for (double b : t.breakpoints) pts.push_back(b + X);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<cplx> v;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    double mid = 0.5 * (pts[k] + pts[k + 1]);
    v.push_back(q(mid) + ql(mid - X));
  }
  bool overlap = (ql.left() + X) < s.right();
  return {Potential::step(pts, v), overlap};
}

inline LinePotential even_extension(const Potential& q) {
  const auto& s = q.steps();
  if (s.values.empty()) return LinePotential::zero();
  std::vector<double> b;
  std::vector<cplx> v;
  for (std::size_t i = s.breakpoints.size(); i-- > 1;) b.push_back(-s.breakpoints[i]);
  for (std::size_t k = s.pieces(); k-- > 0;) v.push_back(s.values[k]);
  for (double x : s.breakpoints) b.push_back(x);
  for (auto x : s.values) v.push_back(x);
  return {b, v};
}

}  // namespace jostspec
