#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "branchmath.hpp"

namespace jostspec {

// mantissa * exp(log_scale). Keeps e^{izX}-type factors representable.
struct ScaledComplex {
  cplx mantissa{0.0, 0.0};
  double log_scale = 0.0;

  ScaledComplex() = default;
  ScaledComplex(cplx m, double ls = 0.0) : mantissa(m), log_scale(ls) {}

  static ScaledComplex from_exp(cplx exponent) {
    // e^{exponent}
    return {std::polar(1.0, exponent.imag()), exponent.real()};
  }

  bool is_zero() const { return mantissa == cplx(0.0, 0.0); }

  // ln |value|, -inf for zero
  double log_abs() const {
    double m = std::abs(mantissa);
    if (m == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(m) + log_scale;
  }

  double phase() const { return std::arg(mantissa); }

  // may over/underflow; callers that care use log_abs
  cplx value() const { return mantissa * std::exp(log_scale); }

  ScaledComplex normalized() const {
    double m = std::max(std::abs(mantissa.real()), std::abs(mantissa.imag()));
    if (m == 0.0 || !std::isfinite(m)) return *this;
    int e = 0;
    std::frexp(m, &e);
    return {cplx(std::ldexp(mantissa.real(), -e), std::ldexp(mantissa.imag(), -e)),
            log_scale + e * std::numbers::ln2};
  }

  // express at a target log scale
  cplx at_scale(double target) const {
    if (is_zero()) return {0.0, 0.0};
    return mantissa * std::exp(log_scale - target);
  }
};

inline ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
  return ScaledComplex(a.mantissa * b.mantissa, a.log_scale + b.log_scale).normalized();
}

inline ScaledComplex operator*(const ScaledComplex& a, cplx b) {
  return ScaledComplex(a.mantissa * b, a.log_scale).normalized();
}

inline ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b) {
  if (b.is_zero()) throw NumericalError("scaled division by zero");
  return ScaledComplex(a.mantissa / b.mantissa, a.log_scale - b.log_scale).normalized();
}

inline ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  double s = std::max(a.log_scale, b.log_scale);
  return ScaledComplex(a.at_scale(s) + b.at_scale(s), s).normalized();
}

inline ScaledComplex operator-(const ScaledComplex& a) { return {-a.mantissa, a.log_scale}; }

inline ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b) { return a + (-b); }

}  // namespace jostspec
