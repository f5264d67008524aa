// Evaluation of E_ν(z) = Σ z^n / [n]_ν!.
//
// Routes:
//   series       even/odd 0F1 split of the power series; for negative real z
//                the Kummer-transformed series e^{z} M(ν, 2ν+1, -2z), whose
//                terms are all of one sign.
//   bessel_real  Γ(ν+1/2) [Ĩ_{ν-1/2}(|x|) ± (|x|/2) Ĩ_{ν+1/2}(|x|)] with
//                reduced Bessel functions Ĩ_μ(u) = (u/2)^{-μ} I_μ(u).
//   bessel_imag  Γ(ν+1/2) [J̃_{ν-1/2}(|x|) + i sgn(x) (|x|/2) J̃_{ν+1/2}(|x|)].
//   asymptotic   two-exponential expansion from the large-argument behaviour
//                of M(ν+1, 2ν+1, 2z), truncated at its smallest term.

#include <cmath>
#include <limits>
#include <string>

#include "series.hpp"
#include "wdqm/specfun.hpp"

namespace wdqm {
namespace {

using cld = std::complex<long double>;
constexpr long double kPiL = 3.14159265358979323846264338327950288L;

// e^{-2u} M(ν, 2ν+1, 2u) = E_ν(-u) e^{-u}, u >= 0.
long double kummer_negative_scaled(long double u, long double nu) {
  const long double w = 2.0L * u;
  long double term = 1.0L, sum = 1.0L;
  for (int n = 0; n < 4000; ++n) {
    term *= w * ((nu + n) / ((2.0L * nu + 1.0L + n) * (n + 1)));
    sum += term;
    if (term == 0.0L) break;
    if (std::fabs(term) <= 1e-20L * std::fabs(sum) && n > w) break;
  }
  return sum * std::exp(-2.0L * u);
}

// E_ν(x) e^{-x}, x >= 0, from modified Bessel functions.
long double bessel_real_positive_scaled(long double x, const DunklParam& p) {
  const double nu = p.nu();
  const long double ia = bessel_i_reduced_scaled(nu - 0.5, double(x));
  const long double ib = bessel_i_reduced_scaled(nu + 0.5, double(x));
  return p.gamma_half() * (ia + 0.5L * x * ib);
}

// E_ν(-u) e^{-u} through the sign decomposition. The two terms cancel to
// O(e^{-2u}) when ν is near 0, so the sums run in quad precision; this keeps
// 1e-12 relative accuracy up to u ≈ 25 for every ν.
long double bessel_real_negative_scaled(long double u, const DunklParam& p) {
  const __float128 nu = p.nu();
  const __float128 uq = u;
  const __float128 ia = detail::reduced_bessel_series<__float128>(nu - 0.5Q, uq, +1);
  const __float128 ib = detail::reduced_bessel_series<__float128>(nu + 0.5Q, uq, +1);
  const __float128 diff = (ia - 0.5Q * uq * ib) * expq(-uq);
  return (long double)(p.gamma_half() * diff);
}

Complex bessel_imag(double y, const DunklParam& p) {
  const double nu = p.nu();
  const double u = std::abs(y);
  const double ja = bessel_j_reduced(nu - 0.5, u);
  const double jb = bessel_j_reduced(nu + 0.5, u);
  const double s = y < 0.0 ? -1.0 : 1.0;
  return p.gamma_half() * Complex(ja, s * 0.5 * u * jb);
}

Complex series_real_axis(double x, const DunklParam& p) {
  const long double nu = p.nu();
  const long double w = (long double)x * x / 4.0L;
  const long double even = detail::hyp0f1<long double>(nu + 0.5L, w);
  const long double odd = detail::hyp0f1<long double>(nu + 1.5L, w);
  return Complex(double(even + x / (2.0L * nu + 1.0L) * odd), 0.0);
}

Complex series_imag_axis(double y, const DunklParam& p) {
  const long double nu = p.nu();
  const long double w = -(long double)y * y / 4.0L;
  const long double even = detail::hyp0f1<long double>(nu + 0.5L, w);
  const long double odd = detail::hyp0f1<long double>(nu + 1.5L, w);
  return Complex(double(even), double(y / (2.0L * nu + 1.0L) * odd));
}

bool on_real_axis(Complex z) { return z.imag() == 0.0; }
bool on_imag_axis(Complex z) { return z.real() == 0.0 && z.imag() != 0.0; }

// E_ν(x) e^{-|x|} for real x, production route.
double real_scaled(double x, const DunklParam& p) {
  const double u = std::abs(x);
  const Regime r = select_regime(u, false);
  if (x < 0.0 && r != Regime::asymptotic) return double(kummer_negative_scaled(u, p.nu()));
  switch (r) {
    case Regime::series:
      return double(series_real_axis(x, p).real() * std::exp(-(long double)u));
    case Regime::bessel_real:
      return double(bessel_real_positive_scaled(u, p));
    default:
      return detail::dunkl_asymptotic_scaled(Complex(x, 0.0), p).real();
  }
}

Complex imag_value(double y, const DunklParam& p) {
  switch (select_regime(std::abs(y), true)) {
    case Regime::series: return series_imag_axis(y, p);
    case Regime::bessel_imag: return bessel_imag(y, p);
    default: return detail::dunkl_asymptotic_scaled(Complex(0.0, y), p);
  }
}

Complex unscale(Complex scaled, double abs_re, const char* what) {
  if (abs_re > 700.0) {
    const long double mag = std::abs(cld(scaled)) * std::exp((long double)abs_re);
    if (mag > std::numeric_limits<double>::max())
      throw OverflowError(std::string(what) + ": |E_nu| exceeds double range");
    const long double f = std::exp((long double)abs_re);
    return Complex(double(scaled.real() * f), double(scaled.imag() * f));
  }
  return scaled * std::exp(abs_re);
}

void require_axis(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("dunkl_kernel: argument must be finite");
  if (z.real() != 0.0 && z.imag() != 0.0)
    throw DomainError("dunkl_kernel: argument must be real or purely imaginary");
}

}  // namespace

const char* to_string(Regime r) noexcept {
  switch (r) {
    case Regime::series: return "series";
    case Regime::bessel_real: return "bessel_real";
    case Regime::bessel_imag: return "bessel_imag";
    case Regime::asymptotic: return "asymptotic";
  }
  return "?";
}

Regime select_regime(double abs_arg, bool imaginary, const RegimeThresholds& th) noexcept {
  if (abs_arg <= th.series_max) return Regime::series;
  if (abs_arg <= th.bessel_max) return imaginary ? Regime::bessel_imag : Regime::bessel_real;
  return Regime::asymptotic;
}

namespace detail {

Complex dunkl_series(Complex z, const DunklParam& p) {
  if (on_real_axis(z)) return series_real_axis(z.real(), p);
  if (on_imag_axis(z)) return series_imag_axis(z.imag(), p);
  const long double nu = p.nu();
  const cld zl(z);
  const cld w = zl * zl / 4.0L;
  const cld v = hyp0f1(nu + 0.5L, w) + zl / (2.0L * nu + 1.0L) * hyp0f1(nu + 1.5L, w);
  return Complex(double(v.real()), double(v.imag()));
}

double dunkl_kummer_negative(double u, const DunklParam& p) {
  if (!(u >= 0.0)) throw DomainError("dunkl_kummer_negative: u must be >= 0");
  return double(kummer_negative_scaled(u, p.nu()) * std::exp((long double)u));
}

Complex dunkl_asymptotic_scaled(Complex z, const DunklParam& p) {
  const double nu = p.nu();
  const Complex two_z = 2.0 * z;
  const double az = std::abs(two_z);

  // Σ (a)_s (b)_s / s! step^{-s}, stopped at the smallest term.
  auto sum_series = [&](double a, double b, Complex step) {
    Complex term = 1.0, sum = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int s = 0; s < 4 * int(az) + 20; ++s) {
      const Complex next = term * ((a + s) * (b + s) / (s + 1.0)) / step;
      const double mag = std::abs(next);
      if (mag == 0.0 || mag >= prev) break;
      term = next;
      sum += term;
      if (mag < 1e-17 * std::abs(sum)) break;
      prev = mag;
    }
    return sum;
  };
  const Complex s1 = sum_series(nu, -nu, two_z);
  const Complex s2 = sum_series(nu + 1.0, 1.0 - nu, -two_z);

  const double log_ratio = std::lgamma(2.0 * nu + 1.0) - std::lgamma(nu + 1.0);
  const double sign = z.imag() >= 0.0 ? 1.0 : -1.0;
  const Complex log_two_z = std::log(two_z);
  const double re = std::abs(z.real());
  const Complex first = std::exp(log_ratio - nu * log_two_z + z - re) * s1;
  const Complex second = nu * std::exp(log_ratio - (nu + 1.0) * log_two_z - z - re +
                                       Complex(0.0, sign * kPi * (nu + 1.0))) * s2;
  return first + second;
}

double dunkl_two_term_scaled(double x, int sign, const DunklParam& p) {
  const double nu = p.nu();
  const double lead = p.c_nu() / std::sqrt(2.0 * kPi);
  if (sign > 0) return lead * std::pow(x, -nu) * (1.0 - nu * nu / (2.0 * x));
  return 0.5 * nu * lead * std::pow(x, -nu - 1.0) * (1.0 - (nu * nu - 1.0) / (2.0 * x));
}

Complex dunkl_kernel_scaled(Complex z, const DunklParam& p) {
  if (on_real_axis(z)) return Complex(real_scaled(z.real(), p), 0.0);
  if (on_imag_axis(z)) return imag_value(z.imag(), p);
  const double az = std::abs(z);
  const double re = z.real();
  if (az <= kRegimeThresholds.bessel_max && az - std::abs(re) <= 9.0) {
    // Close to the real axis the Kummer series has no cancellation.
    const long double nu = p.nu();
    const cld zl(z);
    cld v;
    if (re >= 0.0) v = std::exp(-zl - zl.real()) * kummer_m(nu + 1.0L, 2.0L * nu + 1.0L, 2.0L * zl);
    else v = std::exp(zl + zl.real()) * kummer_m(nu, 2.0L * nu + 1.0L, -2.0L * zl);
    return Complex(double(v.real()), double(v.imag()));
  }
  if (az <= kRegimeThresholds.series_max) return dunkl_series(z, p) * std::exp(-std::abs(re));
  return dunkl_asymptotic_scaled(z, p);
}

}  // namespace detail

Complex dunkl_kernel(Complex z, const DunklParam& p) {
  require_axis(z);
  if (on_imag_axis(z)) return imag_value(z.imag(), p);
  const double x = z.real();
  return unscale(Complex(real_scaled(x, p), 0.0), std::abs(x), "dunkl_kernel");
}

Complex dunkl_kernel(Complex z, const DunklParam& p, Regime forced) {
  require_axis(z);
  const bool imag = on_imag_axis(z);
  const double x = imag ? z.imag() : z.real();
  const double u = std::abs(x);
  switch (forced) {
    case Regime::series:
      if (imag) return series_imag_axis(x, p);
      if (x < 0.0) return detail::dunkl_kummer_negative(u, p);
      return series_real_axis(x, p);
    case Regime::bessel_real: {
      if (imag) throw DomainError("dunkl_kernel: bessel_real route needs a real argument");
      const long double s = x < 0.0 ? bessel_real_negative_scaled(u, p) : bessel_real_positive_scaled(u, p);
      return unscale(Complex(double(s), 0.0), u, "dunkl_kernel");
    }
    case Regime::bessel_imag:
      if (!imag) throw DomainError("dunkl_kernel: bessel_imag route needs an imaginary argument");
      return bessel_imag(x, p);
    case Regime::asymptotic: {
      const Complex s = detail::dunkl_asymptotic_scaled(z, p);
      if (imag) return s;
      return unscale(Complex(s.real(), 0.0), u, "dunkl_kernel");
    }
  }
  return {};
}

}  // namespace wdqm
