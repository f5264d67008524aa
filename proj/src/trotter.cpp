#include "wdqm/trotter.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace wdqm {

NamedPotential NamedPotential::free_particle() {
  return {"free", [](double) { return 0.0; }};
}

NamedPotential NamedPotential::harmonic(double mass, double omega) {
  return {"harmonic(omega=" + std::to_string(omega) + ")",
          [k = 0.5 * mass * omega * omega](double x) { return k * x * x; }};
}

const char* to_string(Scheme s) noexcept {
  return s == Scheme::exact_dunkl ? "exact_dunkl" : "naive_asymptotic";
}

void SliceConfig::validate() const {
  if (n_slices < 1) throw DomainError("SliceConfig: n_slices must be positive");
  if (!(total_time > 0.0) || !std::isfinite(total_time)) throw DomainError("SliceConfig: total_time must be positive");
  if (grid.domain != Domain::full_line || grid.size() == 0 || grid.weights.size() != grid.size())
    throw DomainError("SliceConfig: needs a weighted full-line grid");
  slice_mass_time().validate();
}

WeightedGrid trotter_grid(const DunklParam& p, double length, int panels, int order) {
  return make_dunkl_grid(p, length, panels, order, Domain::full_line);
}

double dispersion_length(double beta0, double t, double mass, double hbar) {
  const double tau = hbar * beta0 * t / mass;
  const double sigma = std::sqrt((1.0 + tau * tau) / (2.0 * beta0));
  return 7.0 * sigma;  // packet width plus six standard deviations
}

Eigen::MatrixXcd kernel_matrix(const WeightedGrid& grid, const std::function<Complex(double, double)>& k) {
  const Eigen::Index n = Eigen::Index(grid.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = j; i < n; ++i) {
      m(i, j) = k(grid.nodes[i], grid.nodes[j]);
      m(j, i) = m(i, j);
    }
  return m;
}

TransferKernel short_time_kernel(const NamedPotential& V, const SliceConfig& cfg, const DunklParam& p,
                                 Scheme scheme) {
  cfg.validate();
  const double eps = cfg.epsilon();
  const double hbar = cfg.hbar;
  const Complex m = Complex(cfg.mass, cfg.eps_m);
  const double nu = p.nu();
  std::vector<double> v(cfg.grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = V.fn(cfg.grid.nodes[i]);
    if (!std::isfinite(v[i])) throw DomainError("short_time_kernel: potential is not finite on the grid");
  }
  const Complex minus_i_over_hbar(0.0, -1.0 / hbar);

  TransferKernel k;
  k.slice_time = eps;
  k.potential_id = V.id;
  k.scheme = scheme;
  k.grid = cfg.grid;
  const Eigen::Index n = Eigen::Index(cfg.grid.size());
  k.matrix.resize(n, n);
  const Complex prefactor = std::sqrt(m / (Complex(0.0, 2.0 * kPi * hbar) * eps));
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j; i < n; ++i) {
      const double x = cfg.grid.nodes[i], y = cfg.grid.nodes[j];
      const Complex potential = std::exp(minus_i_over_hbar * 0.5 * (v[i] + v[j]) * eps);
      Complex free;
      if (scheme == Scheme::exact_dunkl) {
        free = detail::free_kernel(x, y, eps, m, hbar, p);
      } else {
        const double xhat2 = x * y;
        if (xhat2 == 0.0) throw SingularityError("short_time_kernel: naive scheme needs nodes away from 0");
        // The centrifugal term is a potential: it keeps the real mass, like V.
        const Complex phase = Complex(0.0, 1.0 / hbar) * (m * (x - y) * (x - y) / (2.0 * eps) -
                                                          hbar * hbar * nu * nu * eps / (cfg.mass * xhat2));
        free = std::pow(std::abs(xhat2), -nu) * prefactor * std::exp(phase);
      }
      k.matrix(i, j) = free * potential;
      k.matrix(j, i) = k.matrix(i, j);
    }
  }
  return k;
}

namespace {
void require_same_grid(const TransferKernel& a, const TransferKernel& b) {
  if (!a.grid.same_as(b.grid)) throw GridMismatchError("compose: kernels live on different grids");
}
}  // namespace

TransferKernel compose(const TransferKernel& kernel, int n) {
  if (n < 1) throw DomainError("compose: n must be positive");
  const Eigen::Index size = kernel.matrix.rows();
  if (size != Eigen::Index(kernel.grid.size()) || kernel.matrix.cols() != size)
    throw GridMismatchError("compose: matrix does not match its grid");
  TransferKernel out = kernel;
  if (n == 1) return out;
  const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(kernel.grid.weights.data(), size);
  const Eigen::MatrixXcd weighted = w.cast<Complex>().asDiagonal() * kernel.matrix;
  for (int s = 1; s < n; ++s) out.matrix = (out.matrix * weighted).eval();
  out.slices = kernel.slices * n;
  return out;
}

Eigen::MatrixXcd propagate(const TransferKernel& kernel, const Eigen::MatrixXcd& states, int n) {
  if (n < 0) throw DomainError("propagate: n must be non-negative");
  const Eigen::Index size = kernel.matrix.rows();
  if (states.rows() != size) throw GridMismatchError("propagate: state length does not match the grid");
  const Eigen::VectorXcd w = Eigen::Map<const Eigen::VectorXd>(kernel.grid.weights.data(), size).cast<Complex>();
  Eigen::MatrixXcd out = states;
  for (int s = 0; s < n; ++s) out = (kernel.matrix * (w.asDiagonal() * out)).eval();
  return out;
}

TransferKernel chain(const TransferKernel& second, const TransferKernel& first) {
  require_same_grid(second, first);
  const Eigen::Index size = first.matrix.rows();
  const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(first.grid.weights.data(), size);
  TransferKernel out = second;
  out.matrix = second.matrix * w.cast<Complex>().asDiagonal() * first.matrix;
  out.slices = second.slices + first.slices;
  if (second.slice_time != first.slice_time) out.slice_time = 0.0;
  if (second.potential_id != first.potential_id) out.potential_id = second.potential_id + "+" + first.potential_id;
  return out;
}

double max_relative_error(const Eigen::MatrixXcd& approx, const Eigen::MatrixXcd& exact, const WeightedGrid& grid,
                          double window) {
  if (approx.rows() != exact.rows() || approx.cols() != exact.cols() || exact.rows() != Eigen::Index(grid.size()))
    throw GridMismatchError("max_relative_error: shape mismatch");
  double diff = 0.0, scale = 0.0;
  for (Eigen::Index i = 0; i < exact.rows(); ++i) {
    if (std::abs(grid.nodes[i]) > window) continue;
    for (Eigen::Index j = 0; j < exact.cols(); ++j) {
      if (std::abs(grid.nodes[j]) > window) continue;
      const double d = std::abs(approx(i, j) - exact(i, j));
      if (!std::isfinite(d)) return std::numeric_limits<double>::infinity();
      diff = std::max(diff, d);
      scale = std::max(scale, std::abs(exact(i, j)));
    }
  }
  if (scale == 0.0) throw DomainError("max_relative_error: no grid nodes inside the window");
  return diff / scale;
}

NaiveDiagnostic naive_kernel_diagnostic(const SliceConfig& cfg, const DunklParam& p, double omega,
                                        const std::vector<int>& schedule, double window, double tolerance) {
  if (schedule.empty()) throw DomainError("naive_kernel_diagnostic: empty N schedule");
  NaiveDiagnostic d;
  d.nu = p.nu();
  d.omega = omega;
  d.tolerance = tolerance;
  const MassTime mt{cfg.mass, cfg.hbar, cfg.total_time, cfg.eps_m};
  const Eigen::MatrixXcd exact = kernel_matrix(
      cfg.grid, [&](double x, double y) { return ho_propagator(x, y, cfg.total_time, omega, p, mt); });
  const NamedPotential V = NamedPotential::harmonic(cfg.mass, omega);
  for (int n : schedule) {
    SliceConfig c = cfg;
    c.n_slices = n;
    NaiveDiagnosticRow row;
    row.n_slices = n;
    row.exact_error =
        max_relative_error(compose(short_time_kernel(V, c, p, Scheme::exact_dunkl), n).matrix, exact, cfg.grid, window);
    row.naive_error = max_relative_error(compose(short_time_kernel(V, c, p, Scheme::naive_asymptotic), n).matrix,
                                         exact, cfg.grid, window);
    d.rows.push_back(row);
  }
  d.exact_monotone = d.naive_converges = true;
  for (std::size_t i = 1; i < d.rows.size(); ++i) {
    if (!(d.rows[i].exact_error < d.rows[i - 1].exact_error)) d.exact_monotone = false;
    if (!(d.rows[i].naive_error < d.rows[i - 1].naive_error)) d.naive_converges = false;
  }
  if (!(d.rows.back().naive_error <= tolerance)) d.naive_converges = false;
  return d;
}

}  // namespace wdqm
