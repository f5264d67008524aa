#include "wdqm/transform.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "parallel.hpp"

namespace wdqm {

const char* to_string(Parity p) noexcept {
  switch (p) {
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    case Parity::none: return "none";
  }
  return "?";
}

void SampledFunction::validate() const {
  if (values.size() != grid.nodes.size())
    throw DomainError("SampledFunction: " + std::to_string(values.size()) + " values for " +
                      std::to_string(grid.nodes.size()) + " nodes");
  if (parity_hint == Parity::none || grid.domain != Domain::full_line) return;
  const std::size_t n = values.size();
  double scale = 0.0;
  for (const auto& v : values) scale = std::max(scale, std::abs(v));
  const double sign = parity_hint == Parity::even ? 1.0 : -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = n - 1 - i;
    if (std::abs(grid.nodes[i] + grid.nodes[j]) > 1e-12 * (1.0 + std::abs(grid.nodes[i]))) return;
    if (std::abs(values[i] - sign * values[j]) > 1e-10 * std::max(scale, 1e-300))
      throw DomainError(std::string("SampledFunction: values are not ") + to_string(parity_hint));
  }
}

SampledFunction sample(const std::function<Complex(double)>& f, const WeightedGrid& grid, Parity hint) {
  SampledFunction s{grid, {}, hint};
  s.values.reserve(grid.size());
  for (double x : grid.nodes) s.values.push_back(f(x));
  s.validate();
  return s;
}

WeightedGrid evaluation_nodes(std::span<const double> nodes, double nu_or_alpha) {
  WeightedGrid g;
  g.nodes.assign(nodes.begin(), nodes.end());
  g.nu_or_alpha = nu_or_alpha;
  g.domain = std::any_of(nodes.begin(), nodes.end(), [](double x) { return x < 0.0; }) ? Domain::full_line
                                                                                       : Domain::half_line;
  return g;
}

namespace {

struct Rules {
  QuadratureRule gl, gj;
  double power;
  Rules(int order, double power)
      : gl(gauss_legendre(order)), gj(power == 0.0 ? gl : gauss_jacobi(order, 0.0, power)), power(power) {}
};

// ∫_0^{b.back()} x^power g(x) dx over the given panels.
template <class G>
auto panel_integral(const std::vector<double>& b, const Rules& r, G&& g) {
  using R = std::decay_t<decltype(g(1.0))>;
  R acc{};
  const double h = b[1];
  const double scale = std::pow(0.5 * h, r.power + 1.0);
  for (std::size_t i = 0; i < r.gj.nodes.size(); ++i)
    acc += scale * r.gj.weights[i] * g(0.5 * h * (1.0 + r.gj.nodes[i]));
  for (std::size_t p = 1; p + 1 < b.size(); ++p) {
    const double half = 0.5 * (b[p + 1] - b[p]), mid = 0.5 * (b[p + 1] + b[p]);
    for (std::size_t i = 0; i < r.gl.nodes.size(); ++i) {
      const double x = mid + half * r.gl.nodes[i];
      acc += half * r.gl.weights[i] * std::pow(x, r.power) * g(x);
    }
  }
  return acc;
}

double magnitude(const ComplexFunction& f, double x, double power) {
  return 0.5 * (std::abs(f(x)) + std::abs(f(-x))) * std::pow(x, power);
}

// Half-line length past which |f| x^{2ν} is negligible.
double find_length(const ComplexFunction& f, double power) {
  double peak = 0.0;
  for (double x = 0.125; x <= 1.0e4; x *= 1.0 + 1.0 / 16.0) {
    peak = std::max(peak, magnitude(f, x, power));
    if (x < 1.0 || peak == 0.0) continue;
    bool small = true;
    for (double s : {1.0, 1.25, 1.5, 2.0, 3.0})
      if (magnitude(f, s * x, power) * s * x > 1e-18 * peak) small = false;
    if (small) return x;
  }
  throw TruncationError("dunkl_transform: integrand does not decay within |x| <= 1e4");
}

void check_tail(const ComplexFunction& f, double length, double power, double tol) {
  const Rules r(16, power);
  std::vector<double> body{0.0};
  for (int i = 1; i <= 32; ++i) body.push_back(length * i / 32.0);
  const double inner = panel_integral(body, r, [&](double x) { return std::abs(f(x)) + std::abs(f(-x)); });
  const QuadratureRule gl = gauss_legendre(16);
  double tail = 0.0;
  for (int p = 0; p < 16; ++p) {
    const double lo = length * (1.0 + p / 16.0), hi = length * (1.0 + (p + 1) / 16.0);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gl.nodes[i];
      tail += 0.5 * (hi - lo) * gl.weights[i] * std::pow(x, power) * (std::abs(f(x)) + std::abs(f(-x)));
    }
  }
  if (!(tail <= tol * inner))
    throw TruncationError("dunkl_transform: tail beyond L = " + std::to_string(length) + " is " +
                          std::to_string(tail / std::max(inner, 1e-300)) + " of the integral");
}

// (2/c_ν) ∫_0^L r^{2ν} [f₊(r) Re E(isr) + sign·i f₋(r) Im E(isr)] dr at each s.
std::vector<Complex> half_line_transform(const ComplexFunction& f, const DunklParam& p,
                                         std::span<const double> out_nodes, int sign,
                                         const TransformOptions& opt) {
  const double power = 2.0 * p.nu();
  const double length = opt.length > 0.0 ? opt.length : find_length(f, power);
  check_tail(f, length, power, opt.tail_tolerance);
  const Rules rules(opt.order, power);
  std::vector<Complex> out(out_nodes.size());
  detail::parallel_for(out_nodes.size(), [&](std::size_t j) {
    const double s = out_nodes[j];
    const auto b = oscillation_breakpoints(length, opt.max_panel, s, p.nu() - 0.5);
    const Complex v = panel_integral(b, rules, [&](double r) {
      const Complex fp = f(r), fm = f(-r);
      const Complex e = dunkl_kernel_imag(s * r, p);
      return 0.5 * (fp + fm) * e.real() + double(sign) * Complex(0.0, 1.0) * (0.5 * (fp - fm)) * e.imag();
    });
    out[j] = require_finite(2.0 * v / p.c_nu(), "dunkl_transform");
  });
  return out;
}

std::vector<Complex> sampled_transform(const SampledFunction& f, const DunklParam& p,
                                       std::span<const double> out_nodes, int sign) {
  f.validate();
  if (!f.integrable()) throw DomainError("dunkl_transform: sampled input has no quadrature weights");
  if (f.grid.nu_or_alpha != p.nu())
    throw GridMismatchError("dunkl_transform: grid weight was built for nu = " +
                            std::to_string(f.grid.nu_or_alpha));
  const bool half = f.grid.domain == Domain::half_line;
  if (half && f.parity_hint == Parity::none)
    throw DomainError("dunkl_transform: half-line samples need an even or odd parity hint");
  std::vector<Complex> out(out_nodes.size());
  const Complex i(0.0, 1.0);
  detail::parallel_for(out_nodes.size(), [&](std::size_t n) {
    const double s = out_nodes[n];
    Complex acc{};
    for (std::size_t j = 0; j < f.size(); ++j) {
      const double x = f.grid.nodes[j];
      const Complex e = dunkl_kernel_imag(s * x, p);
      Complex term;
      if (!half) term = sign > 0 ? e : std::conj(e);
      else if (f.parity_hint == Parity::even) term = 2.0 * e.real();
      else term = 2.0 * double(sign) * i * e.imag();
      acc += f.grid.weights[j] * f.values[j] * term;
    }
    out[n] = acc / p.c_nu();
  });
  return out;
}

}  // namespace

SampledFunction dunkl_transform(const ComplexFunction& f, const DunklParam& p, const WeightedGrid& k_grid,
                                const TransformOptions& opt) {
  return {k_grid, half_line_transform(f, p, k_grid.nodes, -1, opt), Parity::none};
}

SampledFunction dunkl_transform(const ComplexFunction& f, const DunklParam& p, std::span<const double> k_nodes,
                                const TransformOptions& opt) {
  return {evaluation_nodes(k_nodes, p.nu()), half_line_transform(f, p, k_nodes, -1, opt), Parity::none};
}

SampledFunction dunkl_transform(const SampledFunction& f, const DunklParam& p, const WeightedGrid& k_grid) {
  return {k_grid, sampled_transform(f, p, k_grid.nodes, -1), f.parity_hint};
}

SampledFunction inverse_dunkl_transform(const ComplexFunction& g, const DunklParam& p,
                                        const WeightedGrid& x_grid, const TransformOptions& opt) {
  return {x_grid, half_line_transform(g, p, x_grid.nodes, +1, opt), Parity::none};
}

SampledFunction inverse_dunkl_transform(const ComplexFunction& g, const DunklParam& p,
                                        std::span<const double> x_nodes, const TransformOptions& opt) {
  return {evaluation_nodes(x_nodes, p.nu()), half_line_transform(g, p, x_nodes, +1, opt), Parity::none};
}

SampledFunction inverse_dunkl_transform(const SampledFunction& g, const DunklParam& p,
                                        const WeightedGrid& x_grid) {
  return {x_grid, sampled_transform(g, p, x_grid.nodes, +1), g.parity_hint};
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> uniform(double lo, double hi, int n) {
  std::vector<double> b(n + 1);
  for (int i = 0; i <= n; ++i) b[i] = lo + (hi - lo) * i / n;
  return b;
}

// Σ over panels of GL on [b_i, b_{i+1}].
template <class G>
double gl_panels(const std::vector<double>& b, const QuadratureRule& gl, G&& g) {
  double acc = 0.0;
  for (std::size_t p = 0; p + 1 < b.size(); ++p) {
    const double half = 0.5 * (b[p + 1] - b[p]), mid = 0.5 * (b[p + 1] + b[p]);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) acc += half * gl.weights[i] * g(mid + half * gl.nodes[i]);
  }
  return acc;
}

void check_smearing_args(double k1, double width) {
  if (!(k1 > 0.0) || !std::isfinite(k1)) throw DomainError("smeared_orthogonality: k1 must be positive");
  if (!(width > 0.0) || !std::isfinite(width)) throw DomainError("smeared_orthogonality: width must be positive");
}

}  // namespace

double smeared_orthogonality_closed_form(double k1, double width, const DunklParam& p) {
  check_smearing_args(k1, width);
  const double nu = p.nu(), w2 = width * width;
  const double g2 = p.gamma_half() * p.gamma_half();
  auto pairing = [&](double kappa) {
    const double u = k1 * kappa / w2;
    const double bessel = bessel_i_scaled(nu - 0.5, u) + bessel_i_scaled(nu + 0.5, u);
    const double d = kappa - k1;
    return 2.0 * g2 * std::pow(0.25 * k1 * kappa, 0.5 - nu) / w2 * std::exp(-d * d / (2.0 * w2)) * bessel;
  };
  const double lo = std::max(0.0, k1 - 12.0 * width), hi = k1 + 12.0 * width;
  const double mass = gl_panels(uniform(lo, hi, 24), gauss_legendre(20), pairing);
  return mass * std::pow(k1, 2.0 * nu) / (p.c_nu() * p.c_nu());
}

double smeared_orthogonality_check(double k1, double width, const DunklParam& p) {
  check_smearing_args(k1, width);
  const double nu = p.nu();
  const double zmax = std::sqrt(2.0 * 40.0) / width;
  const double lo = std::max(0.0, k1 - 9.0 * width), hi = k1 + 9.0 * width;
  const QuadratureRule glk = gauss_legendre(12);
  const auto kb = uniform(lo, hi, 6);

  // z nodes and the fixed factor z^{2ν} e^{-w²z²/2} E*(ik₁z), shared by every κ.
  const auto zb = oscillation_breakpoints(zmax, std::min(0.5, kPi / (k1 + hi)), 0.0, 0.0);
  const WeightedGrid zg = make_weighted_grid(zb, 16, 2.0 * nu, 1.0, Domain::half_line, nu);
  std::vector<Complex> fixed(zg.size());
  for (std::size_t i = 0; i < zg.size(); ++i) {
    const double z = zg.nodes[i];
    fixed[i] = zg.weights[i] * std::exp(-0.5 * width * width * z * z) * std::conj(dunkl_kernel_imag(k1 * z, p));
  }
  std::vector<double> kappas, kweights;
  for (std::size_t q = 0; q + 1 < kb.size(); ++q) {
    const double half = 0.5 * (kb[q + 1] - kb[q]), mid = 0.5 * (kb[q + 1] + kb[q]);
    for (std::size_t i = 0; i < glk.nodes.size(); ++i) {
      kappas.push_back(mid + half * glk.nodes[i]);
      kweights.push_back(half * glk.weights[i]);
    }
  }
  std::vector<double> pairing(kappas.size());
  detail::parallel_for(kappas.size(), [&](std::size_t j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < zg.size(); ++i)
      acc += (fixed[i] * dunkl_kernel_imag(kappas[j] * zg.nodes[i], p)).real();
    pairing[j] = 2.0 * acc;
  });
  double mass = 0.0;
  for (std::size_t j = 0; j < kappas.size(); ++j) mass += kweights[j] * pairing[j];
  if (!std::isfinite(mass)) throw QuadratureError("smeared_orthogonality_check: non-finite pairing");
  return mass * std::pow(k1, 2.0 * nu) / (p.c_nu() * p.c_nu());
}

// ---------------------------------------------------------------------------

void write_csv(std::ostream& os, const SampledFunction& f) {
  f.validate();
  char buf[128];
  os << "# schema: wdqm.sampled/1\n";
  std::snprintf(buf, sizeof buf, "%.17g", f.grid.nu_or_alpha);
  os << "# nu_or_alpha: " << buf << "\n# parity: " << to_string(f.parity_hint) << "\nnode,re,im\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", f.grid.nodes[i], f.values[i].real(), f.values[i].imag());
    os << buf;
  }
}

SampledFunction read_csv(std::istream& is, double nu_or_alpha) {
  SampledFunction f;
  f.grid.nu_or_alpha = nu_or_alpha;
  std::string line;
  bool header = false;
  std::size_t lineno = 0;
  auto parse = [&](std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw DomainError("read_csv: bad number '" + std::string(s) + "' on line " + std::to_string(lineno));
    return v;
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      std::string key = line.substr(1, colon - 1), val = line.substr(colon + 1);
      key.erase(0, key.find_first_not_of(' '));
      val.erase(0, val.find_first_not_of(' '));
      if (key == "nu_or_alpha") f.grid.nu_or_alpha = parse(val);
      if (key == "parity") f.parity_hint = val == "even" ? Parity::even : val == "odd" ? Parity::odd : Parity::none;
      continue;
    }
    if (!header) {
      if (line != "node,re,im") throw DomainError("read_csv: expected header 'node,re,im'");
      header = true;
      continue;
    }
    const auto c1 = line.find(','), c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw DomainError("read_csv: expected three columns on line " + std::to_string(lineno));
    const std::string_view sv(line);
    f.grid.nodes.push_back(parse(sv.substr(0, c1)));
    f.values.emplace_back(parse(sv.substr(c1 + 1, c2 - c1 - 1)), parse(sv.substr(c2 + 1)));
  }
  if (!header) throw DomainError("read_csv: missing header");
  f.grid.domain = std::any_of(f.grid.nodes.begin(), f.grid.nodes.end(), [](double x) { return x < 0.0; })
                      ? Domain::full_line
                      : Domain::half_line;
  f.validate();
  return f;
}

}  // namespace wdqm
