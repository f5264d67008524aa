#pragma once

// Extended-precision reference values built from defining series only.

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>

#include <complex>

namespace oracle {

using Real = boost::multiprecision::cpp_dec_float_100;

inline Real dunkl_number(unsigned n, const Real& nu) { return n % 2 ? Real(n) + 2 * nu : Real(n); }

/// Σ z^n / [n]_ν! with z real, summed until terms fall below 1e-60 relative.
inline Real dunkl_series(const Real& z, const Real& nu) {
  Real term = 1, sum = 1;
  for (unsigned n = 1; n < 5000; ++n) {
    term *= z / dunkl_number(n, nu);
    sum += term;
    if (abs(term) < 1e-60 * abs(sum) && n > abs(z)) break;
  }
  return sum;
}

/// E_ν(ix) split into real (even) and imaginary (odd) sums.
inline std::complex<double> dunkl_series_imag(double x, double nu_d) {
  const Real nu = nu_d, xx = x;
  Real term = 1, re = 1, im = 0;
  for (unsigned n = 1; n < 5000; ++n) {
    term *= xx / dunkl_number(n, nu);
    const Real signed_term = (n / 2) % 2 ? -term : term;
    if (n % 2) im += signed_term; else re += signed_term;
    if (abs(term) < 1e-60 && n > abs(xx)) break;
  }
  return {re.convert_to<double>(), im.convert_to<double>()};
}

/// Ascending series Σ (∓1)^k (x/2)^{2k+α} / (k! Γ(k+α+1)).
inline Real bessel_series(const Real& order, const Real& x, bool modified) {
  const Real half = x / 2, q = half * half;
  Real term = pow(half, order) / boost::math::tgamma(order + 1), sum = term;
  for (unsigned k = 1; k < 5000; ++k) {
    term *= q / (Real(k) * (order + k));
    if (!modified) term = -term;
    sum += term;
    if (abs(term) < 1e-60 * abs(sum) && k > x) break;
  }
  return sum;
}

inline double bessel_i(double order, double x) { return bessel_series(order, x, true).convert_to<double>(); }
inline double bessel_j(double order, double x) { return bessel_series(order, x, false).convert_to<double>(); }

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
inline double rel(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

}  // namespace oracle
