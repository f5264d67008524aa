#pragma once

// Dunkl combinatorics, Bessel functions of real order and the Z2 Dunkl kernel.

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <type_traits>

#include "wdqm/errors.hpp"

namespace wdqm {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Deformation parameter ν > -1/2 together with the constants derived from it.
class DunklParam {
 public:
  explicit DunklParam(double nu);

  double nu() const noexcept { return nu_; }
  /// c_ν = 2^{ν+1/2} Γ(ν+1/2).
  double c_nu() const noexcept { return c_nu_; }
  /// Γ(ν+1/2), shared by every Bessel representation of the kernel.
  double gamma_half() const noexcept { return gamma_half_; }

 private:
  double nu_;
  double gamma_half_;
  double c_nu_;
};

/// Second expression for c_ν, √(2π) Γ(2ν+1) / (2^ν Γ(ν+1)). Kept separate so the
/// two closed forms can be compared.
double c_nu_duplication_form(double nu);

/// [n]_ν = n + ν(1 - (-1)^n).
double dunkl_number(unsigned n, const DunklParam& p) noexcept;

/// [n]_ν! = [1]_ν ... [n]_ν with [0]_ν! = 1. Throws OverflowError when the
/// product leaves double range.
double dunkl_factorial(unsigned n, const DunklParam& p);

/// Closed form of the Dunkl factorial through Pochhammer symbols.
double dunkl_factorial_closed_form(unsigned n, const DunklParam& p);

// ---------------------------------------------------------------------------
// Bessel functions of real order > -1 and argument x >= 0.
//
// J: ascending series in extended precision for x <= 20, Hankel expansion
// beyond. I: ascending series (positive terms) for x <= 35 + order²/2,
// large-argument expansion beyond. Accuracy targets hold for order <= 10.
// ---------------------------------------------------------------------------

double bessel_j(double order, double x);
double bessel_i(double order, double x);
/// e^{-x} I_order(x); finite for all x where I is.
double bessel_i_scaled(double order, double x);

/// (x/2)^{-order} J_order(x). Entire in x, equal to 1/Γ(order+1) at 0.
double bessel_j_reduced(double order, double x);
/// e^{-x} (x/2)^{-order} I_order(x). Equal to 1/Γ(order+1) at 0.
double bessel_i_reduced_scaled(double order, double x);

// ---------------------------------------------------------------------------
// Dunkl kernel E_ν
// ---------------------------------------------------------------------------

enum class Regime { series, bessel_real, bessel_imag, asymptotic };

const char* to_string(Regime r) noexcept;

/// Handover points between evaluation regimes, in |argument|.
struct RegimeThresholds {
  double series_max = 12.0;
  double bessel_max = 60.0;
};

inline constexpr RegimeThresholds kRegimeThresholds{};

Regime select_regime(double abs_arg, bool imaginary,
                     const RegimeThresholds& th = kRegimeThresholds) noexcept;

/// E_ν(z) for z real or purely imaginary. Any other z is a DomainError.
/// Real arguments beyond the double range of e^{|x|} raise OverflowError.
Complex dunkl_kernel(Complex z, const DunklParam& p);

/// Same, with the evaluation route pinned. Used to cross-check regimes; the
/// forced route must be meaningful for z (bessel_imag needs imaginary z,
/// bessel_real needs real z).
Complex dunkl_kernel(Complex z, const DunklParam& p, Regime forced);

inline double dunkl_kernel_real(double x, const DunklParam& p) {
  return dunkl_kernel(Complex(x, 0.0), p).real();
}
inline Complex dunkl_kernel_imag(double x, const DunklParam& p) {
  return dunkl_kernel(Complex(0.0, x), p);
}

namespace detail {

/// E_ν(z) e^{-|Re z|} for arbitrary complex z. Internal: the propagators need
/// it for complex mass and complex time; accuracy is ~1e-10 relative except
/// close to the real axis with 12 < |z| < 40, where the real-argument path
/// should be used (dunkl_kernel_scaled dispatches there automatically).
Complex dunkl_kernel_scaled(Complex z, const DunklParam& p);

/// Power series, split into the even and odd 0F1 parts. Long double inside.
Complex dunkl_series(Complex z, const DunklParam& p);
/// e^{-u} M(ν, 2ν+1, 2u) = E_ν(-u) for u >= 0; positive-term series.
double dunkl_kummer_negative(double u, const DunklParam& p);
/// Two-exponential large-|z| expansion, optimally truncated, scaled by e^{-|Re z|}.
Complex dunkl_asymptotic_scaled(Complex z, const DunklParam& p);
/// Leading two terms of the large-x expansion (as commonly quoted), for
/// comparison with the full expansion. sign=+1 gives E(x), -1 gives E(-x),
/// both scaled by e^{-x}.
double dunkl_two_term_scaled(double x, int sign, const DunklParam& p);

}  // namespace detail

// ---------------------------------------------------------------------------
// Dunkl derivative D_x f = f'(x) + (ν/x)(f(x) - f(-x))
// ---------------------------------------------------------------------------

struct DerivativeOptions {
  /// Central-difference step; 0 selects max(1e-6, 1e-8 |x|).
  double step = 0.0;
  /// Caller certifies that the odd part of f vanishes linearly at 0, which
  /// makes x = 0 evaluable as (1 + 2ν) f'(0).
  bool odd_part_vanishes_linearly = false;
};

template <class F>
concept ScalarFunction = requires(F f, double x) {
  { f(x) };
  requires std::is_convertible_v<decltype(f(x)), Complex>;
};

template <ScalarFunction F>
auto dunkl_derivative(F&& f, double x, const DunklParam& p, DerivativeOptions opt = {}) {
  using R = std::decay_t<decltype(f(x))>;
  const double h = opt.step > 0.0 ? opt.step : std::max(1e-6, 1e-8 * std::abs(x));
  const R slope = (f(x + h) - f(x - h)) / (2.0 * h);
  if (x == 0.0) {
    if (!opt.odd_part_vanishes_linearly)
      throw SingularityError("dunkl_derivative: x = 0 requires a certified odd part");
    return R(slope * (1.0 + 2.0 * p.nu()));
  }
  return R(slope + (p.nu() / x) * (f(x) - f(-x)));
}

}  // namespace wdqm
