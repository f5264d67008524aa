#pragma once

// Panel quadrature on the weighted line.
//
// A WeightedGrid carries nodes together with weights that already include the
// measure density: |x|^{2ν} for the Dunkl measure, 2x^{2α+1} for the speed
// measure of a Bessel process. The panel touching the origin uses a
// Gauss-Jacobi rule so the algebraic factor is integrated exactly and no node
// sits at x = 0.

#include <span>
#include <vector>

#include "wdqm/specfun.hpp"

namespace wdqm {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

/// n-point Gauss-Jacobi rule on [-1, 1] for the weight (1-t)^a (1+t)^b,
/// a, b > -1 (Golub-Welsch).
QuadratureRule gauss_jacobi(int n, double a, double b);

enum class Domain { full_line, half_line };

struct WeightedGrid {
  std::vector<double> nodes;    // strictly increasing
  std::vector<double> weights;  // positive, measure folded in
  Domain domain = Domain::full_line;
  double nu_or_alpha = 0.0;

  std::size_t size() const noexcept { return nodes.size(); }
  bool same_as(const WeightedGrid& other) const noexcept;
};

/// Grid on [0, L] (half line) or [-L, L] (full line, mirrored) for the density
/// factor * x^power. Panels are [b_i, b_{i+1}] for the given breakpoints, which
/// must start at 0 and increase strictly.
WeightedGrid make_weighted_grid(std::span<const double> breakpoints, int order, double power,
                                double factor, Domain domain, double label);

/// Uniform panels of the Dunkl measure |x|^{2ν} dx.
WeightedGrid make_dunkl_grid(const DunklParam& p, double length, int panels, int order,
                             Domain domain = Domain::full_line);

/// Uniform panels of the speed measure 2 x^{2α+1} dx on [0, L].
WeightedGrid make_speed_measure_grid(double alpha, double length, int panels, int order);

/// Breakpoints on [0, L] with panel width at most `max_width`, additionally
/// split at the estimated zeros of J_order(k x) (McMahon's leading term), so
/// every panel covers at most half an oscillation.
std::vector<double> oscillation_breakpoints(double length, double max_width, double k, double order);

/// Σ w_i f(x_i).
template <class F>
auto integrate(const WeightedGrid& g, F&& f) {
  using R = std::decay_t<decltype(f(0.0))>;
  R acc{};
  for (std::size_t i = 0; i < g.size(); ++i) acc += g.weights[i] * f(g.nodes[i]);
  return acc;
}

}  // namespace wdqm
