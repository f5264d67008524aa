#pragma once

// Euclidean side: Dunkl heat kernel, Bessel transition densities, exact
// Bessel-process sampling and Feynman-Kac Monte Carlo.
//
// Random numbers: paths are grouped in blocks of kBlockSize. Block b draws from
// an mt19937_64 seeded with splitmix64(seed ^ splitmix64(b)), and block sums are
// reduced in block order. Estimates therefore depend on (seed, n_paths,
// n_steps) only, not on the number of worker threads.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "wdqm/quadrature.hpp"
#include "wdqm/specfun.hpp"

namespace wdqm {

/// d_τ(x,y) = τ^{-(ν+1/2)} exp(-(x²+y²)/2τ) E_ν(xy/τ) / c_ν, the transition
/// density of the Dunkl process against |x|^{2ν} dx.
double dunkl_heat_kernel(double x, double y, double tau, const DunklParam& p);

/// Euclidean oscillator kernel for V = ω²x²/2 (unit mass and ħ):
///   (1/c_ν) (ω/sinh ωτ)^{ν+1/2} exp(-(ω/2)(x²+y²) coth ωτ) E_ν(ωxy/sinh ωτ).
double ho_heat_kernel(double x, double y, double tau, double omega, const DunklParam& p);

enum class Boundary { reflecting, absorbing };

struct BesselIndex {
  double alpha = 0.0;
  Boundary boundary = Boundary::reflecting;

  void validate() const;
  /// Sector indices of the Dunkl process: (ν-1/2, reflecting), (ν+1/2, absorbing).
  static BesselIndex even_sector(const DunklParam& p) { return {p.nu() - 0.5, Boundary::reflecting}; }
  static BesselIndex odd_sector(const DunklParam& p) { return {p.nu() + 0.5, Boundary::absorbing}; }
};

enum class DensityForm { symmetric, asymmetric };

/// symmetric:  b_τ(x,y) = (xy)^{-α} exp(-(x²+y²)/2τ) I_α(xy/τ) / 2τ, against 2x^{2α+1} dx
/// asymmetric: 2x^{2α+1} b_τ(x,y), the density of x given a start at y.
double bessel_density(double x, double y, double tau, const BesselIndex& idx,
                      DensityForm form = DensityForm::symmetric);

/// Radial oscillator kernel for V = ω²z²/2 against the speed measure:
///   (xy)^{-α} (ω/2 sinh ωτ) exp(-(ω/2)(x²+y²) coth ωτ) I_α(ωxy/sinh ωτ).
double bessel_ho_kernel(double x, double y, double tau, double omega, const BesselIndex& idx);

/// |d_τ(x,y) - b^{(ν-1/2)}_τ(|x|,|y|) - xy b^{(ν+1/2)}_τ(|x|,|y|)|.
double density_decomposition_check(double x, double y, double tau, const DunklParam& p);

enum class DeltaConvention {
  weighted,   // ∫dx |x|^{2ν} d_τ(x,y) g(x) → g(y)
  unweighted  // ∫dx d_τ(x,y) g(x) → g(y)
};

/// Pairing of d_τ(·, y) with g(x) = exp(-(x-y)²/2w²) under the chosen
/// convention, minus g(y) = 1.
double smeared_initial_condition_error(double y, double tau, double width, const DunklParam& p,
                                       DeltaConvention convention);

/// Next position of a Bessel process after time dt. Z²/dt is noncentral
/// chi-square with 2α+2 degrees of freedom and noncentrality current²/dt,
/// sampled as a Poisson mixture of Gamma variables.
double sample_bessel_step(double current, double dt, const BesselIndex& idx, std::mt19937_64& rng);

struct BesselPath {
  BesselIndex index;
  std::vector<double> times;
  std::vector<double> positions;
  std::uint64_t rng_seed = 0;
};

BesselPath sample_bessel_path(double start, double tau, int n_steps, const BesselIndex& idx, std::uint64_t seed);

inline constexpr std::size_t kBlockSize = 1024;

/// Generator for block `block` of a run with master seed `seed`.
std::mt19937_64 block_generator(std::uint64_t seed, std::uint64_t block);

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  int n_steps = 0;
  unsigned workers = 1;
  double clamp_rate = 0.0;
};

struct MCConfig {
  std::size_t n_paths = 100000;
  int n_steps = 64;
  std::uint64_t seed = 1;
  /// 0 selects the available hardware parallelism.
  unsigned workers = 0;

  static constexpr std::size_t kMinPaths = 100;
  static constexpr int kStepsPerUnitTime = 64;
  static int default_steps(double tau);
};

using RealFunction = std::function<double(double)>;

/// Estimates ∫dx |x|^{2ν} f(x) ⟨x| e^{τ(L-V)} |y⟩ from the two Bessel sectors:
///   E_α[f₊(Z_τ) w] + y E_β[f₋(Z_τ)/Z_τ w],  α = ν-1/2, β = ν+1/2,
/// both started at |y|, with w the trapezoid weight exp(-∫V) on the skeleton.
/// V must be symmetric.
MCEstimate feynman_kac_mc(const RealFunction& V, double y, double tau, const DunklParam& p, const RealFunction& f,
                          const MCConfig& cfg);

struct SkeletonRefinement {
  MCEstimate coarse;  // trapezoid on every other skeleton point
  MCEstimate fine;    // trapezoid on the full skeleton
  double shift = 0.0; // fine.mean - coarse.mean
};

/// Runs feynman_kac_mc at 2·cfg.n_steps and also evaluates the cfg.n_steps
/// trapezoid on the even skeleton points of the same paths. By the Markov
/// property the coarse estimate has the law of a cfg.n_steps run, so the shift
/// isolates the skeleton bias from sampling noise.
SkeletonRefinement feynman_kac_refinement(const RealFunction& V, double y, double tau, const DunklParam& p,
                                          const RealFunction& f, const MCConfig& cfg);

/// Quadrature of ∫dx |x|^{2ν} f(x) k(x, y) over the real line, for checking
/// Monte Carlo estimates against closed-form kernels.
double weighted_pairing(const std::function<double(double)>& kernel_at_x, const RealFunction& f, const DunklParam& p,
                        double length = 12.0);

struct RadonNikodymReport {
  MCEstimate reweighted;  // α paths with the index-change weight
  MCEstimate direct;      // β paths
  double reference = 0.0; // quadrature of the closed-form β kernel
  double z_score = 0.0;   // (reweighted - direct) / combined standard error
  double clamp_rate = 0.0;
};

struct IndexChangeOptions {
  /// V = ω² z² / 2; 0 for the free process.
  double omega = 0.0;
  /// Terminal test function; defaults to exp(-(z-1)²).
  RealFunction f;
  /// Skeleton points below this radius use it in the 1/z² weight.
  double clamp_radius = 1e-6;
};

/// Compares E_β[f(Z_τ) e^{-∫V}] with
///   E_α[f(Z_τ) (Z_τ/y)^{β-α} exp(-∫[V + (β²-α²)/2z²])]
/// for Bessel processes started at y.
RadonNikodymReport radon_nikodym_check(double alpha, double beta, double y, double tau, const MCConfig& cfg,
                                       const IndexChangeOptions& opt = {});

}  // namespace wdqm
