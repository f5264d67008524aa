#pragma once

// Time-sliced propagation on a weighted grid. A TransferKernel holds
// K(x_i, x_j; ε) at grid nodes; composing slices inserts ∫dz |z|^{2ν} as the
// grid weights between factors.

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

#include "wdqm/dynamics.hpp"
#include "wdqm/quadrature.hpp"

namespace wdqm {

struct NamedPotential {
  std::string id;
  std::function<double(double)> fn;

  static NamedPotential free_particle();
  /// m ω² x² / 2
  static NamedPotential harmonic(double mass, double omega);
};

enum class Scheme { exact_dunkl, naive_asymptotic };

const char* to_string(Scheme s) noexcept;

struct SliceConfig {
  int n_slices = 1;
  double total_time = 1.0;
  WeightedGrid grid;
  double eps_m = 0.0;
  double mass = 1.0;
  double hbar = 1.0;

  double epsilon() const noexcept { return total_time / n_slices; }
  MassTime slice_mass_time() const { return {mass, hbar, epsilon(), eps_m}; }
  void validate() const;
};

/// Full-line grid of uniform panels for the weight |x|^{2ν}.
WeightedGrid trotter_grid(const DunklParam& p, double length, int panels, int order);

/// Half-width of a grid holding a free packet of width parameter beta0 after
/// time t, plus six standard deviations.
double dispersion_length(double beta0, double t, double mass = 1.0, double hbar = 1.0);

struct TransferKernel {
  Eigen::MatrixXcd matrix;  // K(x_i, x_j)
  double slice_time = 0.0;
  int slices = 1;
  std::string potential_id;
  Scheme scheme = Scheme::exact_dunkl;
  WeightedGrid grid;
};

/// One slice of length ε = t/N:
///   exact_dunkl       K_ν(x_i, x_j; ε) exp(-(i/ħ)(V(x_i)+V(x_j)) ε/2)
///   naive_asymptotic  |x_i x_j|^{-ν} √(m/2πiħε)
///                     exp{(i/ħ)[m(x_i-x_j)²/2ε - ħ²ν²ε/(m x_i x_j)]}
///                     × exp(-(i/ħ)(V(x_i)+V(x_j)) ε/2)
/// The complex mass m + i eps_m enters both schemes.
TransferKernel short_time_kernel(const NamedPotential& V, const SliceConfig& cfg, const DunklParam& p,
                                 Scheme scheme);

/// Kernel of n successive slices: K (W K)^{n-1}, multiplied left to right.
TransferKernel compose(const TransferKernel& kernel, int n);

/// Applies n slices to column vectors sampled at the grid nodes:
/// states ← K W states, n times. With states = K(·, y) this yields columns of
/// compose(kernel, n + 1) at a cost linear in the number of columns.
Eigen::MatrixXcd propagate(const TransferKernel& kernel, const Eigen::MatrixXcd& states, int n);

/// Kernel of `second` after `first`, ∫dz |z|^{2ν} K₂(x,z) K₁(z,y).
TransferKernel chain(const TransferKernel& second, const TransferKernel& first);

/// Matrix of an arbitrary two-point function on the grid nodes.
Eigen::MatrixXcd kernel_matrix(const WeightedGrid& grid, const std::function<Complex(double, double)>& k);

/// ‖A - B‖_max / ‖B‖_max restricted to nodes with |x| <= window.
double max_relative_error(const Eigen::MatrixXcd& approx, const Eigen::MatrixXcd& exact, const WeightedGrid& grid,
                          double window);

struct NaiveDiagnosticRow {
  int n_slices = 0;
  double exact_error = 0.0;
  double naive_error = 0.0;
};

struct NaiveDiagnostic {
  double nu = 0.0;
  double omega = 0.0;
  std::vector<NaiveDiagnosticRow> rows;
  bool exact_monotone = false;   // exact-scheme error decreases strictly with N
  bool naive_converges = false;  // naive error decreases strictly and ends below the exact-scheme tolerance
  double tolerance = 1e-3;
};

/// Composes both schemes for V = mω²x²/2 at every N in `schedule`, measuring
/// each against the closed-form oscillator propagator with the same complex
/// mass. cfg.n_slices is ignored.
NaiveDiagnostic naive_kernel_diagnostic(const SliceConfig& cfg, const DunklParam& p, double omega,
                                        const std::vector<int>& schedule, double window, double tolerance = 1e-3);

}  // namespace wdqm
