#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace jostspec {

using cplx = std::complex<double>;

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// -0.0 on the imaginary part would flip the branch on the cut
template <class C>
inline C unsign_zero(const C& z) {
  using std::imag;
  using std::real;
  if (imag(z) == 0) return C(real(z), 0);
  return z;
}

inline bool is_finite(const cplx& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require_finite(const cplx& z, const char* what) {
  if (!is_finite(z)) throw NumericalError(std::string(what) + ": non-finite value");
}

// arg+ in [0, 2pi)
inline double arg_plus(cplx zeta) {
  zeta = unsign_zero(zeta);
  double a = std::atan2(zeta.imag(), zeta.real());
  if (a < 0) {
    a += two_pi;
    if (a >= two_pi) a = std::nextafter(two_pi, 0.0);
  }
  return a;
}

// arg- in [-pi, pi)
inline double arg_minus(cplx zeta) {
  zeta = unsign_zero(zeta);
  double a = std::atan2(zeta.imag(), zeta.real());
  if (a >= std::numbers::pi) a = -std::numbers::pi;
  return a;
}

// Both roots come from the principal sqrt and a sign flip. The principal
// root is more accurate than the polar form and shares the cut on R-.
template <class C>
inline C sq_plus(C zeta) {
  using std::imag;
  using std::sqrt;
  zeta = unsign_zero(zeta);
  C r = sqrt(zeta);
  if (imag(r) < 0) r = -r;
  return unsign_zero(r);
}

template <class C>
inline C sq_minus(C zeta) {
  using std::abs;
  using std::imag;
  using std::real;
  using std::sqrt;
  zeta = unsign_zero(zeta);
  if (imag(zeta) == 0 && real(zeta) < 0) {
    // arg- = -pi on the negative axis
    return C(0, -sqrt(abs(real(zeta))));
  }
  return unsign_zero(C(sqrt(zeta)));
}

inline double dist_to_halfline(cplx lambda) {
  if (lambda.real() >= 0) return std::abs(lambda.imag());
  return std::abs(lambda);
}

inline double im_sqrt_plus(cplx lambda) { return sq_plus(lambda).imag(); }

// sin(x)/x, Taylor branch below 1e-3
template <class C>
inline C sinc(const C& x) {
  using std::abs;
  using std::sin;
  if (abs(x) < 1e-3) {
    C x2 = x * x;
    // 1 - x^2/3! + x^4/5! - x^6/7! + x^8/9! - x^10/11!
    C s = C(1) - x2 / C(6) *
                   (C(1) - x2 / C(20) *
                               (C(1) - x2 / C(42) *
                                           (C(1) - x2 / C(72) * (C(1) - x2 / C(110)))));
    return s;
  }
  return sin(x) / x;
}

}  // namespace jostspec
