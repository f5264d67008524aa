#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "wdqm/errors.hpp"
#include "wdqm/trotter.hpp"

using namespace wdqm;

namespace {

SliceConfig slices(const DunklParam& p, int n, double eps_m, int panels = 25, int order = 8, double length = 5.0) {
  SliceConfig c;
  c.n_slices = n;
  c.total_time = 1.0;
  c.eps_m = eps_m;
  c.grid = trotter_grid(p, length, panels, order);
  return c;
}

Eigen::MatrixXcd free_matrix(const SliceConfig& c, const DunklParam& p, double t) {
  const MassTime mt{c.mass, c.hbar, t, c.eps_m};
  return kernel_matrix(c.grid, [&](double x, double y) { return free_propagator(x, y, t, p, mt); });
}

Eigen::MatrixXcd ho_matrix(const SliceConfig& c, const DunklParam& p, double omega) {
  const MassTime mt{c.mass, c.hbar, c.total_time, c.eps_m};
  return kernel_matrix(c.grid, [&](double x, double y) { return ho_propagator(x, y, c.total_time, omega, p, mt); });
}

}  // namespace

TEST(SliceConfig, Validation) {
  const DunklParam p(0.5);
  SliceConfig c = slices(p, 8, 0.5);
  EXPECT_EQ(c.epsilon() * c.n_slices, c.total_time);
  c.n_slices = 0;
  EXPECT_THROW(c.validate(), DomainError);
  c = slices(p, 8, 0.5);
  c.grid = make_dunkl_grid(p, 5.0, 10, 8, Domain::half_line);
  EXPECT_THROW(c.validate(), DomainError);
}

TEST(TrotterGrid, AvoidsOrigin) {
  for (double nu : {-0.3, 0.0, 1.0}) {
    const WeightedGrid g = trotter_grid(DunklParam(nu), 5.0, 25, 8);
    for (double x : g.nodes) EXPECT_NE(x, 0.0);
  }
  EXPECT_NEAR(dispersion_length(2.0, 3.0), 7.0 * std::sqrt(9.25), 1e-12);
}

TEST(ShortTimeKernel, FreeExactSchemeIsPropagatorMatrix) {
  const DunklParam p(0.7);
  const SliceConfig c = slices(p, 4, 0.05, 6, 6);
  const TransferKernel k = short_time_kernel(NamedPotential::free_particle(), c, p, Scheme::exact_dunkl);
  EXPECT_EQ((k.matrix - free_matrix(c, p, c.epsilon())).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(k.potential_id, "free");
}

TEST(ShortTimeKernel, NaiveMatchesExactWithoutDeformation) {
  const DunklParam p(0.0);
  const SliceConfig c = slices(p, 16, 0.5, 6, 6);
  const auto V = NamedPotential::harmonic(1.0, 1.0);
  const auto a = short_time_kernel(V, c, p, Scheme::exact_dunkl).matrix;
  const auto b = short_time_kernel(V, c, p, Scheme::naive_asymptotic).matrix;
  EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-12 * a.cwiseAbs().maxCoeff());
}

TEST(ShortTimeKernel, NaiveActionBookkeeping) {
  // K / (|xy|^{-ν} √(m/2πiħε)) = exp{(i/ħ)[m(x-y)²/2ε - ħ²ν²ε/(m xy) - ε(V(x)+V(y))/2]}
  const DunklParam p(1.2);
  SliceConfig c = slices(p, 10, 0.0, 4, 4);
  c.hbar = 0.8;
  c.mass = 1.3;
  const auto V = NamedPotential::harmonic(c.mass, 0.9);
  const auto k = short_time_kernel(V, c, p, Scheme::naive_asymptotic);
  const double eps = c.epsilon(), nu = p.nu();
  const Complex pre = std::sqrt(c.mass / (Complex(0.0, 2.0 * kPi * c.hbar) * eps));
  for (std::size_t i = 0; i < c.grid.size(); i += 3)
    for (std::size_t j = 0; j < c.grid.size(); j += 5) {
      const double x = c.grid.nodes[i], y = c.grid.nodes[j];
      const double action = c.mass * (x - y) * (x - y) / (2 * eps) - c.hbar * c.hbar * nu * nu * eps / (c.mass * x * y) -
                            eps * (V.fn(x) + V.fn(y)) / 2;
      const Complex ratio = k.matrix(i, j) / (std::pow(std::abs(x * y), -nu) * pre);
      EXPECT_LE(std::abs(ratio - std::exp(Complex(0.0, action / c.hbar))), 1e-9);
    }
}

TEST(ShortTimeKernel, NaiveSchemeNeedsNodesAwayFromZero) {
  const DunklParam p(1.0);
  SliceConfig c = slices(p, 4, 0.5, 2, 2);
  c.grid.nodes = {-1.0, 0.0, 1.0};
  c.grid.weights = {1.0, 1.0, 1.0};
  EXPECT_THROW(short_time_kernel(NamedPotential::free_particle(), c, p, Scheme::naive_asymptotic), SingularityError);
}

TEST(Compose, SingleSliceIsIdentityOperation) {
  const DunklParam p(0.5);
  const auto k = short_time_kernel(NamedPotential::free_particle(), slices(p, 4, 0.5, 5, 5), p, Scheme::exact_dunkl);
  EXPECT_EQ((compose(k, 1).matrix - k.matrix).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_THROW(compose(k, 0), DomainError);
}

TEST(Compose, ConsistentWithChaining) {
  const DunklParam p(0.5);
  const auto k = short_time_kernel(NamedPotential::harmonic(1, 1), slices(p, 8, 0.5, 10, 6), p, Scheme::exact_dunkl);
  const auto two = compose(k, 2);
  const auto four = compose(k, 4);
  const auto chained = chain(two, two);
  EXPECT_EQ(chained.slices, 4);
  EXPECT_LE((four.matrix - chained.matrix).cwiseAbs().maxCoeff(), 1e-12 * four.matrix.cwiseAbs().maxCoeff());
  Eigen::MatrixXcd col = k.matrix.col(7);
  EXPECT_LE((propagate(k, col, 3) - four.matrix.col(7)).cwiseAbs().maxCoeff(), 1e-12 * four.matrix.cwiseAbs().maxCoeff());
}

TEST(Compose, RejectsGridMismatch) {
  const DunklParam p(0.5);
  const auto a = short_time_kernel(NamedPotential::free_particle(), slices(p, 4, 0.5, 5, 5), p, Scheme::exact_dunkl);
  const auto b = short_time_kernel(NamedPotential::free_particle(), slices(p, 4, 0.5, 6, 5), p, Scheme::exact_dunkl);
  EXPECT_THROW(chain(a, b), GridMismatchError);
  EXPECT_THROW(propagate(a, b.matrix, 1), GridMismatchError);
}

TEST(Compose, FreeSemigroupIsExact) {
  for (double nu : {-0.3, 0.5, 1.0}) {
    const DunklParam p(nu);
    for (int n : {2, 4, 8, 16}) {
      const SliceConfig c = slices(p, n, 0.5);
      const auto k = compose(short_time_kernel(NamedPotential::free_particle(), c, p, Scheme::exact_dunkl), n);
      EXPECT_LE(max_relative_error(k.matrix, free_matrix(c, p, 1.0), c.grid, 2.0), 1e-4) << nu << " " << n;
    }
  }
}

TEST(Compose, FreeEightSlicesAtDefaultRegularization) {
  // ε_m = 0.05 m leaves the kernel nearly undamped; resolving it needs a fine grid,
  // so the columns inside the window are propagated instead of forming the full product.
  const DunklParam p(0.5);
  const SliceConfig c = slices(p, 8, 0.05, 60, 20, 12.0);
  const auto k = short_time_kernel(NamedPotential::free_particle(), c, p, Scheme::exact_dunkl);
  std::vector<Eigen::Index> cols;
  for (std::size_t j = 0; j < c.grid.size(); ++j)
    if (std::abs(c.grid.nodes[j]) <= 2.0) cols.push_back(Eigen::Index(j));
  Eigen::MatrixXcd states(k.matrix.rows(), Eigen::Index(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) states.col(Eigen::Index(j)) = k.matrix.col(cols[j]);
  const Eigen::MatrixXcd out = propagate(k, states, 7);
  const MassTime mt{1.0, 1.0, 1.0, 0.05};
  double diff = 0.0, scale = 0.0;
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      if (std::abs(c.grid.nodes[i]) > 2.0) continue;
      const Complex ref = free_propagator(c.grid.nodes[i], c.grid.nodes[cols[j]], 1.0, p, mt);
      diff = std::max(diff, std::abs(out(i, Eigen::Index(j)) - ref));
      scale = std::max(scale, std::abs(ref));
    }
  EXPECT_LE(diff / scale, 1e-4);
}

TEST(Compose, GridRefinementConverges) {
  const DunklParam p(0.5);
  double previous = std::numeric_limits<double>::infinity();
  for (int panels : {5, 10, 20}) {
    const SliceConfig c = slices(p, 16, 0.5, panels, 4);
    const auto k = compose(short_time_kernel(NamedPotential::harmonic(1, 1), c, p, Scheme::exact_dunkl), 16);
    const double err = max_relative_error(k.matrix, ho_matrix(c, p, 1.0), c.grid, 2.0);
    EXPECT_LE(err, 0.5 * previous) << panels;
    previous = err;
  }
}

TEST(Compose, UnitarityProxy) {
  const DunklParam p(0.5);
  const SliceConfig c = slices(p, 8, 0.0, 30, 10, 6.0);
  const auto k = short_time_kernel(NamedPotential::harmonic(1, 1), c, p, Scheme::exact_dunkl);
  const PacketState s = evolve_gaussian(2.5, 0.0, p);
  Eigen::MatrixXcd v(k.matrix.rows(), 1);
  for (std::size_t i = 0; i < c.grid.size(); ++i) v(Eigen::Index(i), 0) = s.psi(c.grid.nodes[i]);
  const Eigen::MatrixXcd out = propagate(k, v, 8);
  double norm = 0.0;
  for (std::size_t i = 0; i < c.grid.size(); ++i) norm += c.grid.weights[i] * std::norm(out(Eigen::Index(i), 0));
  EXPECT_NEAR(norm, 1.0, 1e-3);
}

TEST(MaxRelativeError, Edges) {
  const DunklParam p(0.5);
  const WeightedGrid g = trotter_grid(p, 2.0, 1, 2);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Ones(4, 4), b = a;
  b(0, 0) = Complex(NAN, 0.0);
  EXPECT_EQ(max_relative_error(b, a, g, 5.0), std::numeric_limits<double>::infinity());
  EXPECT_THROW(max_relative_error(a, a, g, 1e-3), DomainError);
  EXPECT_THROW(max_relative_error(a, Eigen::MatrixXcd::Ones(3, 3), g, 5.0), GridMismatchError);
}

TEST(NaiveDiagnostic, UndeformedControl) {
  const DunklParam p(0.0);
  const auto d = naive_kernel_diagnostic(slices(p, 1, 0.5, 12, 8), p, 1.0, {8, 16}, 2.0);
  ASSERT_EQ(d.rows.size(), 2u);
  for (const auto& r : d.rows) EXPECT_LE(std::abs(r.naive_error - r.exact_error), 1e-10);
  EXPECT_TRUE(d.exact_monotone);
}
