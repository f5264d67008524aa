#include <cmath>
#include <limits>
#include <string>

#include "series.hpp"
#include "wdqm/specfun.hpp"

namespace wdqm {
namespace {

constexpr double kJSeriesMax = 20.0;
// Above this the alternating J series cancels by more than long double can carry.
constexpr double kJQuadMin = 8.0;

long double j_series(double order, double x) {
  if (x <= kJQuadMin) return detail::reduced_bessel_series<long double>(order, x, -1);
  return (long double)detail::reduced_bessel_series<__float128>(order, x, -1);
}

double i_series_max(double order) { return 35.0 + 0.5 * order * order; }

void check_args(double order, double x, const char* fn) {
  if (!(order > -1.0))
    throw DomainError(std::string(fn) + ": order must exceed -1");
  if (!(x >= 0.0) || std::isinf(x))
    throw DomainError(std::string(fn) + ": argument must be finite and >= 0");
}

// Hankel expansion: J_μ(x) = √(2/πx) (P cos χ - Q sin χ), χ = x - (μ/2 + 1/4)π.
long double hankel_j(long double mu, long double x) {
  const long double four_mu2 = 4.0L * mu * mu;
  long double p = 1.0L, q = 0.0L, ak = 1.0L, prev = std::numeric_limits<long double>::infinity();
  for (int k = 1; k < 200; ++k) {
    ak *= (four_mu2 - (2.0L * k - 1) * (2.0L * k - 1)) / (8.0L * k * x);
    const long double mag = std::fabs(ak);
    if (mag == 0.0L || mag > prev) break;
    // (-1)^{k/2} for even k, (-1)^{(k-1)/2} for odd k
    const long double s = ((k / 2) % 2 == 0) ? 1.0L : -1.0L;
    if (k % 2 == 0) p += s * ak;
    else q += s * ak;
    if (mag < 1e-19L) break;
    prev = mag;
  }
  const long double chi = x - (0.5L * mu + 0.25L) * 3.14159265358979323846264338327950288L;
  return std::sqrt(2.0L / (3.14159265358979323846264338327950288L * x)) *
         (p * std::cos(chi) - q * std::sin(chi));
}

// e^{-x} I_μ(x) ~ (2πx)^{-1/2} Σ (-1)^k a_k(μ) x^{-k}
long double asymptotic_i_scaled(long double mu, long double x) {
  const long double four_mu2 = 4.0L * mu * mu;
  long double sum = 1.0L, ak = 1.0L, prev = std::numeric_limits<long double>::infinity();
  for (int k = 1; k < 200; ++k) {
    ak *= -(four_mu2 - (2.0L * k - 1) * (2.0L * k - 1)) / (8.0L * k * x);
    const long double mag = std::fabs(ak);
    if (mag == 0.0L || mag > prev) break;
    sum += ak;
    if (mag < 1e-19L) break;
    prev = mag;
  }
  return sum / std::sqrt(2.0L * 3.14159265358979323846264338327950288L * x);
}

}  // namespace

double bessel_j_reduced(double order, double x) {
  check_args(order, x, "bessel_j");
  if (x <= kJSeriesMax)
    return double(j_series(order, x));
  const long double half = 0.5L * x;
  return double(hankel_j(order, x) * std::pow(half, -(long double)order));
}

double bessel_i_reduced_scaled(double order, double x) {
  check_args(order, x, "bessel_i");
  if (x <= i_series_max(order))
    return double(detail::reduced_bessel_series<long double>(order, x, +1) * std::exp(-(long double)x));
  const long double half = 0.5L * x;
  return double(asymptotic_i_scaled(order, x) * std::pow(half, -(long double)order));
}

double bessel_j(double order, double x) {
  check_args(order, x, "bessel_j");
  if (x == 0.0) {
    if (order == 0.0) return 1.0;
    if (order > 0.0) return 0.0;
    throw DomainError("bessel_j: unbounded at x = 0 for negative order");
  }
  if (x <= kJSeriesMax) {
    const long double r = j_series(order, x);
    return double(r * std::pow(0.5L * x, (long double)order));
  }
  return double(hankel_j(order, x));
}

double bessel_i_scaled(double order, double x) {
  check_args(order, x, "bessel_i");
  if (x == 0.0) {
    if (order == 0.0) return 1.0;
    if (order > 0.0) return 0.0;
    throw DomainError("bessel_i: unbounded at x = 0 for negative order");
  }
  if (x <= i_series_max(order)) {
    const long double r = detail::reduced_bessel_series<long double>(order, x, +1);
    return double(r * std::pow(0.5L * x, (long double)order) * std::exp(-(long double)x));
  }
  return double(asymptotic_i_scaled(order, x));
}

double bessel_i(double order, double x) {
  const double s = bessel_i_scaled(order, x);
  if (x > 700.0) {
    const long double v = (long double)s * std::exp((long double)x);
    if (v > std::numeric_limits<double>::max()) throw OverflowError("bessel_i: result exceeds double range");
    return double(v);
  }
  return s * std::exp(x);
}

}  // namespace wdqm
