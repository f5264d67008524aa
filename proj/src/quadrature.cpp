#include "wdqm/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <limits>
#include <cmath>
#include <string>

namespace wdqm {

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n must be positive");
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

QuadratureRule gauss_jacobi(int n, double a, double b) {
  if (n < 1) throw DomainError("gauss_jacobi: n must be positive");
  if (!(a > -1.0) || !(b > -1.0)) throw DomainError("gauss_jacobi: exponents must exceed -1");
  Eigen::VectorXd diag(n), off(std::max(n - 1, 1));
  const double ab = a + b;
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + ab;
    diag(k) = (k == 0) ? (b - a) / (ab + 2.0) : (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    const double beta = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    off(k - 1) = std::sqrt(beta);
  }
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                              std::lgamma(ab + 2.0));
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  if (n == 1) {
    r.nodes[0] = diag(0);
    r.weights[0] = mu0;
    return r;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off.head(n - 1), Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw QuadratureError("gauss_jacobi: eigensolver failed");
  for (int k = 0; k < n; ++k) {
    r.nodes[k] = es.eigenvalues()(k);
    const double v = es.eigenvectors()(0, k);
    r.weights[k] = mu0 * v * v;
  }
  return r;
}

bool WeightedGrid::same_as(const WeightedGrid& other) const noexcept {
  return domain == other.domain && nu_or_alpha == other.nu_or_alpha && nodes == other.nodes &&
         weights == other.weights;
}

WeightedGrid make_weighted_grid(std::span<const double> breakpoints, int order, double power,
                                double factor, Domain domain, double label) {
  if (breakpoints.size() < 2 || breakpoints.front() != 0.0)
    throw DomainError("make_weighted_grid: breakpoints must start at 0 and contain a panel");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i] > breakpoints[i - 1]))
      throw DomainError("make_weighted_grid: breakpoints must increase strictly");
  if (!(power > -1.0)) throw DomainError("make_weighted_grid: weight exponent must exceed -1");

  const QuadratureRule gl = gauss_legendre(order);
  const QuadratureRule gj = power == 0.0 ? gl : gauss_jacobi(order, 0.0, power);

  std::vector<double> xs, ws;
  xs.reserve(order * (breakpoints.size() - 1));
  ws.reserve(xs.capacity());
  {
    // ∫_0^h x^p f dx = (h/2)^{p+1} ∫ (1+t)^p f(h(1+t)/2) dt
    const double h = breakpoints[1];
    const double scale = std::pow(0.5 * h, power + 1.0);
    for (int i = 0; i < order; ++i) {
      xs.push_back(0.5 * h * (1.0 + gj.nodes[i]));
      ws.push_back(factor * scale * gj.weights[i]);
    }
  }
  for (std::size_t pnl = 1; pnl + 1 < breakpoints.size(); ++pnl) {
    const double lo = breakpoints[pnl], hi = breakpoints[pnl + 1];
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (int i = 0; i < order; ++i) {
      const double x = mid + half * gl.nodes[i];
      xs.push_back(x);
      ws.push_back(factor * half * gl.weights[i] * std::pow(x, power));
    }
  }

  WeightedGrid g;
  g.domain = domain;
  g.nu_or_alpha = label;
  if (domain == Domain::half_line) {
    g.nodes = std::move(xs);
    g.weights = std::move(ws);
  } else {
    const std::size_t n = xs.size();
    g.nodes.resize(2 * n);
    g.weights.resize(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      g.nodes[n - 1 - i] = -xs[i];
      g.weights[n - 1 - i] = ws[i];
      g.nodes[n + i] = xs[i];
      g.weights[n + i] = ws[i];
    }
  }
  return g;
}

namespace {
std::vector<double> uniform_breakpoints(double length, int panels) {
  if (!(length > 0.0) || panels < 1) throw DomainError("grid: length and panel count must be positive");
  std::vector<double> b(panels + 1);
  for (int i = 0; i <= panels; ++i) b[i] = length * i / panels;
  b.back() = length;
  return b;
}
}  // namespace

WeightedGrid make_dunkl_grid(const DunklParam& p, double length, int panels, int order, Domain domain) {
  const auto b = uniform_breakpoints(length, panels);
  return make_weighted_grid(b, order, 2.0 * p.nu(), 1.0, domain, p.nu());
}

WeightedGrid make_speed_measure_grid(double alpha, double length, int panels, int order) {
  if (!(alpha > -1.0)) throw DomainError("make_speed_measure_grid: alpha must exceed -1");
  const auto b = uniform_breakpoints(length, panels);
  return make_weighted_grid(b, order, 2.0 * alpha + 1.0, 2.0, Domain::half_line, alpha);
}

std::vector<double> oscillation_breakpoints(double length, double max_width, double k, double order) {
  if (!(length > 0.0) || !(max_width > 0.0)) throw DomainError("oscillation_breakpoints: bad extent");
  std::vector<double> b{0.0};
  const double ak = std::abs(k);
  double next_zero = std::numeric_limits<double>::infinity();
  int s = 1;
  auto mcmahon = [&](int idx) { return (idx + 0.5 * order - 0.25) * kPi / ak; };
  if (ak > 0.0) {
    while (mcmahon(s) <= 0.0) ++s;
    next_zero = mcmahon(s);
  }
  while (b.back() < length) {
    double cand = std::min(b.back() + max_width, length);
    if (next_zero < cand) {
      cand = next_zero;
      next_zero = mcmahon(++s);
    }
    if (cand - b.back() < 1e-3 * max_width) {
      // merge sliver panels produced by coinciding breakpoints
      if (cand >= length) b.back() = length;
      continue;
    }
    b.push_back(cand);
  }
  b.back() = length;
  return b;
}

}  // namespace wdqm
