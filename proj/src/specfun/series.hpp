#pragma once

// Ascending series shared by the Bessel functions and the Dunkl kernel.
// Templated on the working precision so the kernel can run the same sums in
// quad precision where a cancellation cannot be avoided.

#include <quadmath.h>

#include <cmath>
#include <complex>
#include <type_traits>

namespace wdqm::detail {

inline long double gamma_fn(long double x) { return std::tgamma(x); }
inline __float128 gamma_fn(__float128 x) { return tgammaq(x); }
inline long double abs_fn(long double x) { return std::fabs(x); }
inline __float128 abs_fn(__float128 x) { return fabsq(x); }
inline long double exp_fn(long double x) { return std::exp(x); }
inline __float128 exp_fn(__float128 x) { return expq(x); }

template <class T>
constexpr T series_eps() {
  if constexpr (std::is_same_v<T, __float128>) return T(1e-33);
  else return T(1e-20);
}

// Σ_k w^k / (k! (a)_k), the 0F1(;a;w) series; w may be negative.
template <class T>
T hyp0f1(T a, T w) {
  T term = 1, sum = 1;
  for (int k = 0; k < 2000; ++k) {
    term *= w / (T(k + 1) * (a + T(k)));
    sum += term;
    if (abs_fn(term) <= series_eps<T>() * abs_fn(sum) && T(k + 1) * (a + T(k)) > abs_fn(w)) break;
  }
  return sum;
}

// (x/2)^{-order} I_order(x) for sign = +1, (x/2)^{-order} J_order(x) for sign = -1.
template <class T>
T reduced_bessel_series(T order, T x, int sign) {
  const T w = T(sign) * x * x / T(4);
  return hyp0f1(order + T(1), w) / gamma_fn(order + T(1));
}

// Complex 0F1 for the power series of E_ν at complex argument.
inline std::complex<long double> hyp0f1(long double a, std::complex<long double> w) {
  std::complex<long double> term = 1, sum = 1;
  const long double aw = std::abs(w);
  for (int k = 0; k < 2000; ++k) {
    term *= w / ((long double)(k + 1) * (a + k));
    sum += term;
    if (std::abs(term) <= 1e-20L * std::abs(sum) && (k + 1) * (a + k) > aw) break;
  }
  return sum;
}

// Kummer M(a, b, w) = Σ (a)_n w^n / ((b)_n n!), complex argument.
inline std::complex<long double> kummer_m(long double a, long double b, std::complex<long double> w) {
  std::complex<long double> term = 1, sum = 1;
  const long double aw = std::abs(w);
  for (int n = 0; n < 4000; ++n) {
    term *= w * ((a + n) / ((b + n) * (n + 1)));
    sum += term;
    if (term == 0.0L) break;
    if (std::abs(term) <= 1e-20L * std::abs(sum) && n > aw) break;
  }
  return sum;
}

}  // namespace wdqm::detail
