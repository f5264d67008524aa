#pragma once

// Real-time quantities of the Dunkl free particle and harmonic oscillator.

#include "wdqm/specfun.hpp"

namespace wdqm {

/// Mass, ħ and time. eps_m is a non-negative imaginary part added to the
/// mass; it turns the oscillatory kernels into decaying ones.
struct MassTime {
  double mass = 1.0;
  double hbar = 1.0;
  double t = 0.0;
  double eps_m = 0.0;

  Complex complex_mass() const noexcept { return {mass, eps_m}; }
  void validate() const;

  /// Regularizer used by every integral over an oscillatory kernel.
  static constexpr double kDefaultRegularization = 0.05;
  static MassTime regularized(double mass, double hbar, double t,
                              double fraction = kDefaultRegularization) {
    return {mass, hbar, t, fraction * mass};
  }
};

/// ψ_k(x) = |k|^ν E_ν(ikx) / c_ν.
Complex plane_wave(double k, double x, const DunklParam& p);

/// Freely evolved Gaussian Ψ(x,t) = N(t) exp(-β(t) x² / 2), β(t) = β/(1 + iħβt/m).
struct PacketState {
  double beta0 = 1.0;
  double t = 0.0;
  Complex beta_t;
  Complex norm_factor;
  double nu = 0.0;
  MassTime mt;

  Complex psi(double x) const;
  /// |Ψ(x,t)|² from the dispersion formula (not from psi()).
  double density(double x) const;
  /// Width parameter of |Ψ|², β / (1 + (ħβt/m)²).
  double density_width() const;
};

PacketState evolve_gaussian(double beta0, double t, const DunklParam& p, const MassTime& mt = {});

struct PacketObservables {
  // Variances of |Ψ|² dx and |a(k)|² dk, with their product ħ²(Δx)²(Δk)².
  double dx2 = 0.0;
  double dk2 = 0.0;
  double product = 0.0;
  // Same quantities from quadrature of |Ψ|² and of the numerically transformed a(k).
  double dx2_quadrature = 0.0;
  double dk2_quadrature = 0.0;
  double product_quadrature = 0.0;
  // Moments against the weighted measure |x|^{2ν} dx, |k|^{2ν} dk.
  double dx2_weighted = 0.0;
  double dk2_weighted = 0.0;
  double dx2_weighted_quadrature = 0.0;
  double dk2_weighted_quadrature = 0.0;
  // ∫|x|^{2ν}|Ψ|² and ∫|k|^{2ν}|a|² by quadrature.
  double norm_x = 0.0;
  double norm_k = 0.0;
};

PacketObservables packet_observables(const PacketState& ps, const DunklParam& p);

/// Free propagator
///   (1/c_ν) (m/iħt)^{ν+1/2} exp(im(x²+y²)/2ħt) E_ν(mxy/iħt),
/// with m replaced by m + i eps_m. Requires t > 0.
Complex free_propagator(double x, double y, double t, const DunklParam& p, const MassTime& mt = {});

/// Harmonic-oscillator propagator for V = mω²x²/2,
///   (1/c_ν) (mω/iħ sin ωt)^{ν+1/2} exp(imω(x²+y²)cot(ωt)/2ħ) E_ν(mωxy/iħ sin ωt).
/// The power follows the branch that is continuous in t from 0⁺. Throws
/// CausticError when |sin ωt| < 1e-8.
Complex ho_propagator(double x, double y, double t, double omega, const DunklParam& p,
                      const MassTime& mt = {});

/// Spectral form ∫dk |k|^{2ν} ψ_k(x) ψ*_k(y) exp(-iħk²t/2m) by quadrature.
/// Needs eps_m > 0 for the k integral to converge.
Complex free_propagator_spectral(double x, double y, double t, const DunklParam& p, const MassTime& mt);

/// ∫dz |z|^{2ν} K(x,z;t1) K(z,y;t2) for the free propagator, by quadrature.
/// Needs eps_m > 0.
Complex free_convolution(double x, double y, double t1, double t2, const DunklParam& p, const MassTime& mt);

/// ∫dy |y|^{2ν} K(x,y;t) Ψ(y,0) for the Gaussian of width beta0, by quadrature.
/// Needs eps_m > 0 and t > 0.
Complex evolve_by_convolution(double x, double beta0, double t, const DunklParam& p, const MassTime& mt);

namespace detail {

/// Free kernel at complex mass and complex time. t = -iτ with m = ħ = 1 is
/// the heat kernel.
Complex free_kernel(double x, double y, Complex t, Complex mass, double hbar, const DunklParam& p);

/// Oscillator kernel for complex mass, frequency and time, with ω²m fixed by
/// the caller. The branch of the power is continuous along real t.
Complex ho_kernel(double x, double y, Complex t, Complex omega, Complex mass, double hbar,
                  const DunklParam& p);

/// (1/c_ν) a^{ν+1/2} exp(-a·s·(x²+y²)/2) E_ν(a x y), with the power taken on the
/// branch arg(a) = phase. Shared by every Gaussian-type kernel.
Complex gaussian_kernel(double x, double y, Complex a, Complex s, double phase, const DunklParam& p);

}  // namespace detail

}  // namespace wdqm
