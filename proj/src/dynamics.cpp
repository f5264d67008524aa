#include "wdqm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>
#include <string>

#include "wdqm/quadrature.hpp"
#include "wdqm/transform.hpp"

namespace wdqm {

void MassTime::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("MassTime: mass must be positive");
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw DomainError("MassTime: hbar must be positive");
  if (!(eps_m >= 0.0) || !std::isfinite(eps_m)) throw DomainError("MassTime: eps_m must be >= 0");
  if (!std::isfinite(t)) throw DomainError("MassTime: t must be finite");
}

Complex plane_wave(double k, double x, const DunklParam& p) {
  return std::pow(std::abs(k), p.nu()) / p.c_nu() * dunkl_kernel_imag(k * x, p);
}

// ---------------------------------------------------------------------------

PacketState evolve_gaussian(double beta0, double t, const DunklParam& p, const MassTime& mt) {
  if (!(beta0 > 0.0) || !std::isfinite(beta0)) throw DomainError("evolve_gaussian: beta0 must be positive");
  if (!std::isfinite(t)) throw DomainError("evolve_gaussian: t must be finite");
  mt.validate();
  PacketState s;
  s.beta0 = beta0;
  s.t = t;
  s.nu = p.nu();
  s.mt = mt;
  s.mt.t = t;
  const Complex spread = 1.0 + Complex(0.0, mt.hbar * beta0 * t) / mt.complex_mass();
  s.beta_t = beta0 / spread;
  const double a = p.nu() + 0.5;
  s.norm_factor = std::sqrt(std::pow(beta0, a) / p.gamma_half()) * std::pow(spread, -a);
  return s;
}

Complex PacketState::psi(double x) const { return norm_factor * std::exp(-0.5 * beta_t * x * x); }

double PacketState::density_width() const {
  const double tau = mt.hbar * beta0 * t / mt.mass;
  return beta0 / (1.0 + tau * tau);
}

double PacketState::density(double x) const {
  if (mt.eps_m != 0.0) return std::norm(psi(x));
  const double tau = mt.hbar * beta0 * t / mt.mass;
  const double a = nu + 0.5;
  return std::pow(beta0, a) / std::tgamma(a) * std::pow(1.0 + tau * tau, -a) *
         std::exp(-density_width() * x * x);
}

namespace {

struct Moments {
  double mass = 0.0, second = 0.0;
  double variance() const { return second / mass; }
};

// Zeroth and second moments of an even density on the half line, doubled.
template <class F>
Moments even_moments(const WeightedGrid& g, F&& rho) {
  Moments m;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.nodes[i], r = rho(x);
    m.mass += 2.0 * g.weights[i] * r;
    m.second += 2.0 * g.weights[i] * x * x * r;
  }
  return m;
}

WeightedGrid half_grid(double length, double power, double nu, int panels = 40, int order = 20) {
  std::vector<double> b(panels + 1);
  for (int i = 0; i <= panels; ++i) b[i] = length * i / panels;
  return make_weighted_grid(b, order, power, 1.0, Domain::half_line, nu);
}

}  // namespace

PacketObservables packet_observables(const PacketState& ps, const DunklParam& p) {
  if (ps.nu != p.nu()) throw DomainError("packet_observables: packet was evolved for another nu");
  PacketObservables o;
  const double hbar = ps.mt.hbar;
  const double tau = hbar * ps.beta0 * ps.t / ps.mt.mass;
  const double a = p.nu() + 0.5;
  o.dx2 = (1.0 + tau * tau) / (2.0 * ps.beta0);
  o.dk2 = ps.beta0 / 2.0;
  o.product = hbar * hbar * o.dx2 * o.dk2;
  o.dx2_weighted = 2.0 * a * o.dx2;
  o.dk2_weighted = 2.0 * a * o.dk2;

  const double bx = std::real(ps.beta_t);
  const double lx = std::sqrt(42.0 / bx);
  auto rho_x = [&](double x) { return std::norm(ps.psi(x)); };
  const Moments mx = even_moments(half_grid(lx, 0.0, p.nu()), rho_x);
  const Moments mxw = even_moments(half_grid(lx, 2.0 * p.nu(), p.nu()), rho_x);
  o.dx2_quadrature = mx.variance();
  o.dx2_weighted_quadrature = mxw.variance();
  o.norm_x = mxw.mass;

  // a(k) by numerical transform of Ψ(·, t); |a|² decays like exp(-Re(1/β(t)) k²).
  const double bk = std::real(1.0 / ps.beta_t);
  const double lk = std::sqrt(42.0 / bk);
  TransformOptions topt;
  topt.length = std::sqrt(90.0 / bx);
  topt.order = 16;
  // at most ~6 radians of chirp phase per panel
  topt.max_panel = std::min(1.0, 6.0 / (std::abs(std::imag(ps.beta_t)) * topt.length + 1e-300));
  const WeightedGrid gk = half_grid(lk, 0.0, p.nu(), 12, 16);
  const WeightedGrid gkw = half_grid(lk, 2.0 * p.nu(), p.nu(), 12, 16);
  const ComplexFunction f = [&](double x) { return ps.psi(x); };
  const SampledFunction ak = dunkl_transform(f, p, gk, topt);
  const SampledFunction akw = dunkl_transform(f, p, gkw, topt);
  Moments mk, mkw;
  for (std::size_t i = 0; i < gk.size(); ++i) {
    const double k = gk.nodes[i], r = std::norm(ak.values[i]);
    mk.mass += 2.0 * gk.weights[i] * r;
    mk.second += 2.0 * gk.weights[i] * k * k * r;
  }
  for (std::size_t i = 0; i < gkw.size(); ++i) {
    const double k = gkw.nodes[i], r = std::norm(akw.values[i]);
    mkw.mass += 2.0 * gkw.weights[i] * r;
    mkw.second += 2.0 * gkw.weights[i] * k * k * r;
  }
  o.dk2_quadrature = mk.variance();
  o.dk2_weighted_quadrature = mkw.variance();
  o.norm_k = mkw.mass;
  o.product_quadrature = hbar * hbar * o.dx2_quadrature * o.dk2_quadrature;
  return o;
}

// ---------------------------------------------------------------------------

namespace detail {

Complex gaussian_kernel(double x, double y, Complex a, Complex s, double phase, const DunklParam& p) {
  const Complex z = a * (x * y);
  const Complex e = dunkl_kernel_scaled(z, p);
  const Complex exponent = -0.5 * a * s * (x * x + y * y) + std::abs(z.real());
  const double order = p.nu() + 0.5;
  const Complex power = std::pow(std::abs(a), order) * std::exp(Complex(0.0, order * phase));
  return require_finite(power * std::exp(exponent) * e / p.c_nu(), "propagator");
}

Complex free_kernel(double x, double y, Complex t, Complex mass, double hbar, const DunklParam& p) {
  const Complex a = mass / (Complex(0.0, hbar) * t);
  return gaussian_kernel(x, y, a, 1.0, std::arg(a), p);
}

Complex ho_kernel(double x, double y, Complex t, Complex omega, Complex mass, double hbar,
                  const DunklParam& p) {
  const Complex wt = omega * t;
  const Complex sn = std::sin(wt);
  if (std::abs(sn) < 1e-8) throw CausticError("ho_propagator: sin(omega t) vanishes (caustic)");
  const Complex a = mass * omega / (Complex(0.0, hbar) * sn);
  // Continuity in t: each caustic crossed adds a phase -π to arg(a).
  const double reference = -0.5 * kPi - kPi * std::floor(wt.real() / kPi);
  double phase = std::arg(a);
  phase += 2.0 * kPi * std::round((reference - phase) / (2.0 * kPi));
  return gaussian_kernel(x, y, a, std::cos(wt), phase, p);
}

}  // namespace detail

Complex free_propagator(double x, double y, double t, const DunklParam& p, const MassTime& mt) {
  mt.validate();
  if (!(t > 0.0)) throw DomainError("free_propagator: t must be positive, got " + std::to_string(t));
  return detail::free_kernel(x, y, t, mt.complex_mass(), mt.hbar, p);
}

Complex ho_propagator(double x, double y, double t, double omega, const DunklParam& p, const MassTime& mt) {
  mt.validate();
  if (!(t > 0.0)) throw DomainError("ho_propagator: t must be positive");
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("ho_propagator: omega must be positive");
  const Complex m = mt.complex_mass();
  // V = mω²x²/2 keeps the real mass, so ω² scales by m/m_c for complex mass.
  const Complex w = omega * std::sqrt(mt.mass / m);
  return detail::ho_kernel(x, y, t, w, m, mt.hbar, p);
}

// ---------------------------------------------------------------------------

namespace {

void require_regularized(const MassTime& mt, const char* what) {
  mt.validate();
  if (!(mt.eps_m > 0.0)) throw DomainError(std::string(what) + ": needs eps_m > 0");
}

// Panels on [0, L] resolving the phase q z² + l z: each panel spans at most
// one local oscillation.
std::vector<double> chirp_breakpoints(double length, double q, double l) {
  std::vector<double> b{0.0};
  while (b.back() < length) {
    const double freq = 2.0 * q * b.back() + l;
    const double width = std::min(0.5, freq > 0.0 ? kPi / freq : 0.5);
    b.push_back(std::min(length, b.back() + width));
  }
  return b;
}

WeightedGrid chirp_grid(double length, double q, double l, const DunklParam& p, Domain domain) {
  const auto b = chirp_breakpoints(length, q, l);
  return make_weighted_grid(b, 16, 2.0 * p.nu(), 1.0, domain, p.nu());
}

// Decay rate of |exp(±i m z² / 2ħt)| for complex mass: Re(m_c / iħt) / 2.
double gaussian_decay(const MassTime& mt, double t) { return 0.5 * mt.eps_m / (mt.hbar * t); }

}  // namespace

Complex free_propagator_spectral(double x, double y, double t, const DunklParam& p, const MassTime& mt) {
  require_regularized(mt, "free_propagator_spectral");
  if (!(t > 0.0)) throw DomainError("free_propagator_spectral: t must be positive");
  const Complex m = mt.complex_mass();
  const Complex rate = Complex(0.0, mt.hbar * t / 2.0) / m;  // exp(-rate k²)
  const double length = std::sqrt(40.0 / rate.real());
  const WeightedGrid g = chirp_grid(length, std::abs(rate.imag()), std::abs(x) + std::abs(y), p, Domain::half_line);
  // ψ_{-k}(x) ψ*_{-k}(y) is the conjugate of the k term; the rest is even in k.
  const Complex sum = integrate(g, [&](double k) {
    const Complex e = dunkl_kernel_imag(k * x, p) * std::conj(dunkl_kernel_imag(k * y, p));
    return 2.0 * e.real() * std::exp(-rate * k * k);
  });
  return require_finite(sum / (p.c_nu() * p.c_nu()), "free_propagator_spectral");
}

Complex free_convolution(double x, double y, double t1, double t2, const DunklParam& p, const MassTime& mt) {
  require_regularized(mt, "free_convolution");
  if (!(t1 > 0.0) || !(t2 > 0.0)) throw DomainError("free_convolution: times must be positive");
  const double decay = gaussian_decay(mt, t1) + gaussian_decay(mt, t2);
  const double length = std::abs(x) + std::abs(y) + std::sqrt(40.0 / decay);
  const double q = 0.5 * mt.mass / mt.hbar * (1.0 / t1 + 1.0 / t2);
  const double l = mt.mass / mt.hbar * (std::abs(x) / t1 + std::abs(y) / t2);
  const WeightedGrid g = chirp_grid(length, q, l, p, Domain::full_line);
  const Complex m = mt.complex_mass();
  return integrate(g, [&](double z) {
    return detail::free_kernel(x, z, t1, m, mt.hbar, p) * detail::free_kernel(z, y, t2, m, mt.hbar, p);
  });
}

Complex evolve_by_convolution(double x, double beta0, double t, const DunklParam& p, const MassTime& mt) {
  require_regularized(mt, "evolve_by_convolution");
  if (!(t > 0.0)) throw DomainError("evolve_by_convolution: t must be positive");
  const PacketState initial = evolve_gaussian(beta0, 0.0, p, mt);
  const double decay = 0.5 * beta0 + gaussian_decay(mt, t);
  const double length = std::sqrt(40.0 / decay);
  const double q = 0.5 * mt.mass / (mt.hbar * t);
  const double l = mt.mass / (mt.hbar * t) * std::abs(x);
  const WeightedGrid g = chirp_grid(length, q, l, p, Domain::full_line);
  const Complex m = mt.complex_mass();
  return integrate(g, [&](double y) { return detail::free_kernel(x, y, t, m, mt.hbar, p) * initial.psi(y); });
}

}  // namespace wdqm
