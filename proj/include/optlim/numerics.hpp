#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "optlim/error.hpp"

namespace optlim {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kPi2 = kPi * kPi;
inline constexpr double kZeta2 = kPi2 / 6.0;
inline const cplx kTwoPiI{0.0, 2.0 * kPi};

namespace detail {

inline void require_finite(cplx z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw InputError(std::string(what) + ": non-finite argument");
}

// Signed zeros would otherwise put the negative real axis on the wrong side
// of the cut (std::log(-1 - 0i) == -i*pi).
inline cplx unsign_zero(cplx z) {
  return {z.real(), z.imag() == 0.0 ? 0.0 : z.imag()};
}

inline cplx log_nz(cplx z) {
  z = unsign_zero(z);
  return {std::log(std::abs(z)), std::atan2(z.imag(), z.real())};
}

// B_n / (n+1)! for n = 2, 4, ..., 20. The n = 1 term (-1/4) is handled inline.
inline constexpr double kBernoulliLi2[] = {
    1.0 / 36.0,
    -1.0 / 3600.0,
    1.0 / 211680.0,
    -1.0 / 10886400.0,
    1.0 / 526901760.0,
    -4.0647616451442255e-11,
    8.9216910204564526e-13,
    -1.9939295860721076e-14,
    4.5189800296199182e-16,
    -1.0356517612181247e-17,
};

inline cplx li2_bernoulli(cplx u) {
  const cplx u2 = u * u;
  cplx acc = 0.0;
  for (int i = 9; i >= 0; --i) acc = kBernoulliLi2[i] + u2 * acc;
  return u - 0.25 * u2 + u * u2 * acc;
}

inline cplx li2_power(cplx z) {
  cplx term = z, sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    const cplx add = term / double(k) / double(k);
    sum += add;
    if (std::abs(add) <= 1e-18 * std::abs(sum)) break;
    term *= z;
  }
  return sum;
}

}  // namespace detail

/// Principal logarithm, arg in (-pi, pi]. Throws DegenerateError at 0.
inline cplx plog(cplx z) {
  detail::require_finite(z, "plog");
  if (z == cplx(0.0, 0.0)) throw DegenerateError("plog: log of zero");
  return detail::log_nz(z);
}

/// Principal-branch dilogarithm. On the cut (1, inf) the value is the limit
/// from below, matching plog(1 - z) with arg = +pi.
inline cplx li2(cplx z) {
  detail::require_finite(z, "li2");
  z = detail::unsign_zero(z);
  const double x = z.real();
  if (z == cplx(0.0, 0.0)) return 0.0;
  if (z == cplx(1.0, 0.0)) return kZeta2;
  if (std::norm(z) <= 0.25) return detail::li2_power(z);

  const double nz = std::norm(z);
  cplx u, rest = 0.0;
  double sgn = 1.0;
  if (x <= 0.5) {
    if (nz > 1.0) {
      const cplx lmz = detail::log_nz(-z);
      u = -detail::log_nz(1.0 - 1.0 / z);
      rest = -0.5 * lmz * lmz - kZeta2;
      sgn = -1.0;
    } else {
      u = -detail::log_nz(1.0 - z);
    }
  } else if (nz <= 2.0 * x) {
    u = -detail::log_nz(z);
    rest = u * detail::log_nz(1.0 - z) + kZeta2;
    sgn = -1.0;
  } else {
    const cplx lmz = detail::log_nz(-z);
    u = -detail::log_nz(1.0 - 1.0 / z);
    rest = -0.5 * lmz * lmz - kZeta2;
    sgn = -1.0;
  }
  return sgn * detail::li2_bernoulli(u) + rest;
}

/// D(z) = Im Li2(z) + log|z| arg(1 - z).
inline double bloch_wigner(cplx z) {
  detail::require_finite(z, "bloch_wigner");
  if (z == cplx(0.0, 0.0) || z == cplx(1.0, 0.0))
    throw DegenerateError("bloch_wigner: argument is 0 or 1");
  return li2(z).imag() + std::log(std::abs(z)) * plog(1.0 - z).imag();
}

/// Shape companions u' = 1/(1-u) and u'' = 1 - 1/u.
inline cplx prime(cplx u) { return 1.0 / (1.0 - u); }
inline cplx dprime(cplx u) { return 1.0 - 1.0 / u; }

/// Representative of x modulo m in (-m/2, m/2].
inline double reduce_centered(double x, double m) {
  return x - m * std::ceil(x / m - 0.5);
}

}  // namespace optlim
