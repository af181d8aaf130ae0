#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "barrier.hpp"
#include "jost.hpp"
#include "limits.hpp"
#include "potentials.hpp"
#include "spectra.hpp"
#include "sums.hpp"
#include "zeros.hpp"

// Finite stages of q_n = sum_k i gamma_k chi[X_k, X_k + 2R_k]. The line
// barriers i gamma chi[-R,R] are placed with their centre at X_k + R_k.

namespace jostspec {

struct StageParameters {
  int n = 1;
  double gamma = 0.0;
  double R = 0.0;
  long M_R = 0;
  bool bigr = false;
};

inline StageParameters stage_parameters(int n) {
  if (n < 1) throw DomainError("stage index starts at 1");
  double L = std::log(n + 2.0);
  double t = n * L * L;
  StageParameters p;
  p.n = n;
  p.gamma = 1.0 / (t * t * t * t);
  p.R = 1200.0 * t * t * t;  // 1200 gamma^{-3/4}
  BarrierSpec b(p.gamma, p.R);
  p.M_R = b.M_R();
  p.bigr = b.satisfies_bigr();
  return p;
}

// parameters of a stage family: the divergent schedule, or a desk-scale toy
struct Profile {
  std::string name;
  std::function<double(int)> gamma;
  std::function<double(int)> R;

  static Profile paper() {
    return {"paper", [](int n) { return stage_parameters(n).gamma; }, [](int n) { return stage_parameters(n).R; }};
  }
  // a few eigenvalues per stage, so shifts can be tracked root by root
  static Profile toy() {
    return {"toy", [](int n) { return 5.0 / n; }, [](int) { return 2.0; }};
  }
};

inline LinePotential line_barrier(double gamma, double R) { return {{-R, R}, {cplx(0, gamma)}}; }

inline double app_tolerance(int n) { return 3.0 / (std::numbers::pi * std::numbers::pi * n * n); }

// |mu - lambda| + |Im sqrt mu - Im sqrt lambda|
inline double app_distance(cplx mu, cplx lambda) {
  return std::abs(mu - lambda) + std::abs(im_sqrt_plus(mu) - im_sqrt_plus(lambda));
}

struct TrackedEigenvalue {
  cplx source;   // lambda_j of the line operator it came from
  int born = 0;  // stage of that operator
  cplx current;  // lambda_{j,n}
  double margin = 0.0;  // tolerance minus achieved distance at the current stage
};

struct StageRecord {
  int n = 0;
  double gamma = 0, R = 0;
  double X = 0;      // left end of the new barrier
  double center = 0;
  long tries = 0;
  bool accepted = false;
  double worst_margin = inf;
  std::vector<double> tried_X;
  std::vector<double> tried_worst;  // worst margin per tried X
  std::vector<double> deviation;    // shift-limit deviation per tried X on the tracked z
  int new_roots = 0;
};

struct ConstructionState {
  Profile profile;
  Potential q = Potential::zero();
  std::vector<StageRecord> stages;
  std::vector<TrackedEigenvalue> tracked;

  double right_end() const { return q.is_step() ? q.steps().right() : 0.0; }
};

struct ShiftOptions {
  double first_gap = 1.0;
  double gap_cap = 4096.0;
  Box search{-12, 12, 1e-3, 12};  // z-box for zeros of the line Wronskian
};

// zeros of W(., i gamma chi[-R,R]) in the z-box, refined at 50 digits
inline std::vector<cplx> line_barrier_zeros(const LinePotential& ql, const Box& box) {
  auto fw = [ql](cplx z) -> AnalyticSample {
    auto w = line_wronskian_eval(ql, z);
    return {w.value.mantissa, w.value.log_scale, w.rel_modulus};
  };
  ZeroSearchOptions zo;
  zo.winding.phase_rate = 2 * (ql.right() - ql.left()) + 2;
  std::vector<cplx> out;
  for (const auto& z : find_zeros(fw, box, zo).zeros)
    out.push_back(to_double(ext_newton([&](const ext_complex& s) { return ext_wronskian(ql, s); }, to_ext(z.z))));
  return out;
}

inline StageRecord choose_shift(ConstructionState& st, int n, const ShiftOptions& opt = {}) {
  StageRecord rec;
  rec.n = n;
  rec.gamma = st.profile.gamma(n);
  rec.R = st.profile.R(n);
  auto ql = line_barrier(rec.gamma, rec.R);
  const double tol = app_tolerance(n);
  const double base = st.right_end();

  // limit roots: old eigenvalues of q_{n-1} and the new line operator's zeros
  std::vector<TrackedEigenvalue> cand = st.tracked;
  std::size_t n_old = cand.size();
  for (cplx z : line_barrier_zeros(ql, opt.search)) cand.push_back({z * z, n, z * z, 0.0});
  rec.new_roots = static_cast<int>(cand.size() - n_old);

  if (cand.empty()) {
    // nothing to track: any disjoint placement works
    rec.X = base + opt.first_gap;
    rec.center = rec.X + rec.R;
    rec.accepted = true;
    rec.worst_margin = inf;
    st.q = shift_superpose(st.q, ql, rec.center).potential;
    st.stages.push_back(rec);
    return rec;
  }

  std::vector<cplx> start;
  for (const auto& c : cand) start.push_back(sq_plus(c.current));
  for (double gap = opt.first_gap; gap <= opt.gap_cap; gap *= 2) {
    double X = base + gap;
    double center = X + rec.R;
    auto qn = shift_superpose(st.q, ql, center).potential;
    std::vector<TrackedEigenvalue> now = cand;
    double worst = inf, dev = 0;
    for (std::size_t k = 0; k < now.size(); ++k) {
      ext_complex r = ext_newton([&](const ext_complex& z) { return ext_jost(qn, z); }, to_ext(start[k]));
      cplx z = to_double(r);
      cplx mu = z * z;
      // the reference is lambda_{j,n-1} for old roots and lambda_j for new ones
      cplx ref = cand[k].current;
      double m = tol * im_sqrt_plus(cand[k].source) - app_distance(mu, ref);
      if (!(z.imag() > 0) || !std::isfinite(m)) m = -inf;
      now[k].current = mu;
      now[k].margin = m;
      worst = std::min(worst, m);
      // product-limit deviation at the limit root
      ext_complex zl = to_ext(start[k]);
      dev = std::max(dev, static_cast<double>(abs(ext_jost(qn, zl) - ext_shift_limit(st.q, ql, zl))));
    }
    ++rec.tries;
    rec.tried_X.push_back(X);
    rec.tried_worst.push_back(worst);
    rec.deviation.push_back(dev);
    rec.X = X;
    rec.center = center;
    rec.worst_margin = worst;
    if (worst >= 0 || gap * 2 > opt.gap_cap) {
      rec.accepted = worst >= 0;
      st.q = qn;
      st.tracked = now;
      break;
    }
  }
  st.stages.push_back(rec);
  return rec;
}

inline ConstructionState build_stages(const Profile& p, int stages, const ShiftOptions& opt = {}) {
  ConstructionState st{p};
  for (int n = 1; n <= stages; ++n) choose_shift(st, n, opt);
  return st;
}

// intervals [X_k, X_k + 2R_k] pairwise disjoint
inline bool supports_disjoint(const ConstructionState& st) {
  for (std::size_t k = 1; k < st.stages.size(); ++k)
    if (!(st.stages[k].X > st.stages[k - 1].X + 2 * st.stages[k - 1].R)) return false;
  return true;
}

// Im sqrt(current) >= Im sqrt(source)/2 for every tracked eigenvalue
inline bool half_retention(const ConstructionState& st) {
  return std::all_of(st.tracked.begin(), st.tracked.end(), [](const TrackedEigenvalue& t) {
    return im_sqrt_plus(t.current) >= 0.5 * im_sqrt_plus(t.source);
  });
}

// ---------------------------------------------------------------------------
// growth of the certified lower bound for J(H_{q_inf})

struct GrowthRow {
  long n;
  double gamma, R, contribution, partial, comparison_term, comparison_partial, log_ratio, l1_partial;
};

struct GrowthReport {
  std::vector<GrowthRow> rows;
  bool partial_increasing = true;
};

inline bool growth_checkpoint(long n) {
  if (n <= 10) return true;
  long p = 1;
  while (p * 10 <= n) p *= 10;
  return n == p || n == 2 * p || n == 5 * p;
}

// per stage: gamma R log R/(64 pi) and the series 600/(32 pi) sum log R_k/(k log^2(k+2))
inline GrowthReport jensen_growth_report(long n_max) {
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  GrowthReport g;
  double partial = 0, cpartial = 0, l1 = 0;
  double cc = 0, ccc = 0, lc = 0;  // Neumaier carries
  auto add = [](double& s, double& c, double x) {
    double t = s + x;
    c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  };
  double prev = 0;
  for (long n = 1; n <= n_max; ++n) {
    double L = std::log(n + 2.0);
    double t = n * L * L;
    double gamma = std::pow(t, -4.0);
    double logR = std::log(1200.0) + 3 * std::log(t);
    double R = 1200.0 * t * t * t;
    double contribution = gamma * R * logR / (64 * std::numbers::pi);
    double cterm = logR / t;
    add(partial, cc, contribution);
    add(cpartial, ccc, cterm);
    add(l1, lc, 2400.0 / t);
    double cur = partial + cc;
    if (!(cur > prev)) g.partial_increasing = false;
    prev = cur;
    if (growth_checkpoint(n) || n == n_max)
      g.rows.push_back({n, gamma, R, contribution, cur, cterm, 600 / (32 * std::numbers::pi) * (cpartial + ccc),
                        n > 1 ? logR / (3 * std::log(double(n))) : 0.0, l1 + lc});
  }
  return g;
}

// each half-line eigenvalue z of the barrier is a zero of the two-sided
// Wronskian of its even extension; returns the worst relative modulus
inline double even_extension_bridge(const BarrierSpec& b, const std::vector<Eigenvalue>& eig) {
  auto ql = even_extension(b.potential());
  double worst = 0;
  for (const auto& e : eig) worst = std::max(worst, line_wronskian_eval(ql, e.z).rel_modulus);
  return worst;
}

}  // namespace jostspec
