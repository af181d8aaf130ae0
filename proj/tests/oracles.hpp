#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

// Reference computations that share no code with the library: closed forms
// and plain long double propagation.

namespace oracle {

using lc = std::complex<long double>;

// principal root turned into the upper half-plane
inline lc root_up(lc w) {
  lc r = std::sqrt(w);
  return r.imag() < 0 ? -r : r;
}

// e+(0,z) for values[k] on [bp[k], bp[k+1]], zero beyond bp.back():
// [y, y'] carried right to left with the exact solutions on each piece
inline lc step_jost(const std::vector<double>& bp, const std::vector<std::complex<double>>& v, std::complex<double> zd) {
  lc z(zd.real(), zd.imag());
  lc I(0, 1);
  long double b = bp.back();
  lc y = std::exp(I * z * b), dy = I * z * y;
  for (std::size_t k = v.size(); k-- > 0;) {
    long double L = bp[k + 1] - bp[k];
    lc k2 = z * z - lc(v[k].real(), v[k].imag());
    lc s = std::sqrt(k2);
    lc c = std::cos(s * L);
    lc sn = std::abs(s) < 1e-12L ? lc(L) : std::sin(s * L) / s;  // sin(sL)/s
    lc y0 = y * c - dy * sn;
    lc d0 = y * k2 * sn + dy * c;
    y = y0;
    dy = d0;
  }
  return y;
}

// e+(0,z) for i gamma on [0,R]: e^{iRz}(cos Rs - i z sin(Rs)/s), s^2 = z^2 - i gamma
inline lc barrier_jost(long double gamma, long double R, lc z) {
  lc I(0, 1);
  lc s = std::sqrt(z * z - I * gamma);
  return std::exp(I * R * z) * (std::cos(R * s) - I * z * std::sin(R * s) / s);
}

// d/dz of the closed form by a central difference in long double
inline lc barrier_jost_dz(long double gamma, long double R, lc z) {
  long double h = 1e-7L * (1 + std::abs(z));
  return (barrier_jost(gamma, R, z + h) - barrier_jost(gamma, R, z - h)) / (2 * h);
}

// Newton on the closed form
inline lc barrier_zero(long double gamma, long double R, lc z, int iters = 60) {
  for (int i = 0; i < iters; ++i) {
    lc d = barrier_jost(gamma, R, z) / barrier_jost_dz(gamma, R, z);
    z -= d;
    if (std::abs(d) < 1e-17L) break;
  }
  return z;
}

inline long double M_R(long double gamma, long double R) {
  return std::floor(gamma * R * R / (32 * std::numbers::pi_v<long double> * std::log(R)));
}

// Lieb-Thirring term dist(lambda, [0,inf)) / |lambda|^{(1-eps)/2}
inline long double lt_term(std::complex<double> lam, long double eps) {
  long double re = lam.real(), im = lam.imag();
  long double a = std::hypot(re, im);
  long double d = re >= 0 ? std::fabs(im) : a;
  return d / std::pow(a, (1 - eps) / 2);
}

// Im sqrt(lambda) on the upper branch, from the half-angle formula
inline long double jensen_term(std::complex<double> lam) {
  long double a = std::hypot((long double)lam.real(), (long double)lam.imag());
  return std::sqrt((a - lam.real()) / 2);
}

}  // namespace oracle
