#pragma once

// Dunkl transform on the weighted line.
//
//   forward  Df(k) = (1/c_ν) ∫ dx |x|^{2ν} f(x) E_ν(-ikx)
//   inverse  f(x)  = (1/c_ν) ∫ dk |k|^{2ν} Df(k) E_ν(ikx)
//
// Callable inputs are split into even and odd parts and integrated on the half
// line, where the kernel reduces to its J_{ν-1/2} and J_{ν+1/2} pieces. Sampled
// inputs use the weights of their own grid.

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "wdqm/quadrature.hpp"
#include "wdqm/specfun.hpp"

namespace wdqm {

enum class Parity { even, odd, none };

const char* to_string(Parity p) noexcept;

/// Values on the nodes of a grid. A grid with empty weights is an
/// evaluation-only node set: it can be written out but not integrated.
struct SampledFunction {
  WeightedGrid grid;
  std::vector<Complex> values;
  Parity parity_hint = Parity::none;

  const std::vector<double>& nodes() const noexcept { return grid.nodes; }
  std::size_t size() const noexcept { return values.size(); }
  bool integrable() const noexcept { return grid.weights.size() == grid.nodes.size(); }
  /// Throws DomainError if sizes disagree or the parity hint is violated by
  /// more than 1e-10 on a symmetric grid.
  void validate() const;
};

SampledFunction sample(const std::function<Complex(double)>& f, const WeightedGrid& grid,
                       Parity hint = Parity::none);

/// Node set without weights.
WeightedGrid evaluation_nodes(std::span<const double> nodes, double nu_or_alpha);

struct TransformOptions {
  /// Half-line truncation; 0 finds it from the decay of the integrand.
  double length = 0.0;
  int order = 20;
  double max_panel = 0.5;
  /// Allowed ∫_L^{2L} |f| x^{2ν} relative to ∫_0^L |f| x^{2ν}.
  double tail_tolerance = 1e-10;
};

using ComplexFunction = std::function<Complex(double)>;

SampledFunction dunkl_transform(const ComplexFunction& f, const DunklParam& p, const WeightedGrid& k_grid,
                                const TransformOptions& opt = {});
SampledFunction dunkl_transform(const ComplexFunction& f, const DunklParam& p, std::span<const double> k_nodes,
                                const TransformOptions& opt = {});
SampledFunction dunkl_transform(const SampledFunction& f, const DunklParam& p, const WeightedGrid& k_grid);

SampledFunction inverse_dunkl_transform(const ComplexFunction& g, const DunklParam& p,
                                        const WeightedGrid& x_grid, const TransformOptions& opt = {});
SampledFunction inverse_dunkl_transform(const ComplexFunction& g, const DunklParam& p,
                                        std::span<const double> x_nodes, const TransformOptions& opt = {});
SampledFunction inverse_dunkl_transform(const SampledFunction& g, const DunklParam& p,
                                        const WeightedGrid& x_grid);

/// Pairing of E*_ν(ik₁z) E_ν(iκz) against the weighted measure in z, regulated
/// by exp(-width² z²/2). Returns its integral over κ divided by c_ν²/k₁^{2ν},
/// which tends to 1 as width → 0.
double smeared_orthogonality_check(double k1, double width, const DunklParam& p);

/// Closed form of the same ratio (modified-Bessel representation of the
/// regulated pairing), used as an oracle.
double smeared_orthogonality_closed_form(double k1, double width, const DunklParam& p);

/// CSV with columns node,re,im. write adds `#` metadata lines.
void write_csv(std::ostream& os, const SampledFunction& f);
SampledFunction read_csv(std::istream& is, double nu_or_alpha = 0.0);

}  // namespace wdqm
