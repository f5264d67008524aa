#include <cmath>
#include <string>

#include "wdqm/specfun.hpp"

namespace wdqm {

DunklParam::DunklParam(double nu) : nu_(nu) {
  if (!(nu > -0.5) || !std::isfinite(nu))
    throw DomainError("DunklParam: nu must be finite and > -1/2, got " + std::to_string(nu));
  gamma_half_ = std::tgamma(nu + 0.5);
  c_nu_ = require_finite(std::pow(2.0, nu + 0.5) * gamma_half_, "DunklParam: c_nu");
}

double c_nu_duplication_form(double nu) {
  return std::sqrt(2.0 * kPi) * std::tgamma(2.0 * nu + 1.0) / (std::pow(2.0, nu) * std::tgamma(nu + 1.0));
}

double dunkl_number(unsigned n, const DunklParam& p) noexcept {
  return n % 2 == 0 ? double(n) : double(n) + 2.0 * p.nu();
}

double dunkl_factorial(unsigned n, const DunklParam& p) {
  double f = 1.0;
  for (unsigned k = 1; k <= n; ++k) {
    f *= dunkl_number(k, p);
    if (!std::isfinite(f)) throw OverflowError("dunkl_factorial: overflow at n = " + std::to_string(n));
  }
  return f;
}

double dunkl_factorial_closed_form(unsigned n, const DunklParam& p) {
  const double nu = p.nu();
  const unsigned m = n / 2;
  const auto pochhammer = [](double a, unsigned k) { return std::tgamma(a + k) / std::tgamma(a); };
  double v = std::pow(2.0, double(n)) * std::tgamma(m + 1.0);
  if (n % 2 == 0) v *= pochhammer(nu + 0.5, m);
  else v *= (nu + 0.5) * pochhammer(nu + 1.5, m);
  return require_finite(v, "dunkl_factorial_closed_form");
}

}  // namespace wdqm
