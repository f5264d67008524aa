#include "wdqm/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "parallel.hpp"

namespace wdqm {

namespace {

void require_tau(double tau, const char* what) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError(std::string(what) + ": tau must be positive");
}

// E_ν(u) e^{-|u|} for real u.
double scaled_kernel(double u, const DunklParam& p) { return detail::dunkl_kernel_scaled(Complex(u, 0.0), p).real(); }

}  // namespace

double dunkl_heat_kernel(double x, double y, double tau, const DunklParam& p) {
  require_tau(tau, "dunkl_heat_kernel");
  const double u = x * y / tau;
  const double d = std::abs(x) - std::abs(y);
  return require_finite(std::pow(tau, -(p.nu() + 0.5)) / p.c_nu() * std::exp(-d * d / (2.0 * tau)) * scaled_kernel(u, p),
                        "dunkl_heat_kernel");
}

double ho_heat_kernel(double x, double y, double tau, double omega, const DunklParam& p) {
  require_tau(tau, "ho_heat_kernel");
  if (!(omega > 0.0)) throw DomainError("ho_heat_kernel: omega must be positive");
  const double sh = std::sinh(omega * tau);
  const double cth = 1.0 / std::tanh(omega * tau);
  const double u = omega * x * y / sh;
  const double exponent = -0.5 * omega * (x * x + y * y) * cth + std::abs(u);
  return require_finite(std::pow(omega / sh, p.nu() + 0.5) / p.c_nu() * std::exp(exponent) * scaled_kernel(u, p),
                        "ho_heat_kernel");
}

void BesselIndex::validate() const {
  if (!(alpha > -1.0) || !std::isfinite(alpha))
    throw DomainError("BesselIndex: alpha must exceed -1, got " + std::to_string(alpha));
}

double bessel_density(double x, double y, double tau, const BesselIndex& idx, DensityForm form) {
  idx.validate();
  require_tau(tau, "bessel_density");
  if (!(x >= 0.0) || !(y >= 0.0)) throw DomainError("bessel_density: positions must be >= 0");
  const double a = idx.alpha;
  const double d = x - y;
  const double b = std::pow(2.0 * tau, -a - 1.0) * std::exp(-d * d / (2.0 * tau)) * bessel_i_reduced_scaled(a, x * y / tau);
  if (form == DensityForm::symmetric) return b;
  return 2.0 * std::pow(x, 2.0 * a + 1.0) * b;
}

double bessel_ho_kernel(double x, double y, double tau, double omega, const BesselIndex& idx) {
  idx.validate();
  require_tau(tau, "bessel_ho_kernel");
  if (!(omega > 0.0)) throw DomainError("bessel_ho_kernel: omega must be positive");
  if (!(x >= 0.0) || !(y >= 0.0)) throw DomainError("bessel_ho_kernel: positions must be >= 0");
  const double sh = std::sinh(omega * tau);
  const double cth = 1.0 / std::tanh(omega * tau);
  const double u = omega * x * y / sh;
  const double pre = std::pow(omega / (2.0 * sh), idx.alpha + 1.0);
  return pre * std::exp(-0.5 * omega * (x * x + y * y) * cth + u) * bessel_i_reduced_scaled(idx.alpha, u);
}

double density_decomposition_check(double x, double y, double tau, const DunklParam& p) {
  const double d = dunkl_heat_kernel(x, y, tau, p);
  const double even = bessel_density(std::abs(x), std::abs(y), tau, BesselIndex::even_sector(p));
  const double odd = bessel_density(std::abs(x), std::abs(y), tau, BesselIndex::odd_sector(p));
  return std::abs(d - even - x * y * odd);
}

double smeared_initial_condition_error(double y, double tau, double width, const DunklParam& p,
                                       DeltaConvention convention) {
  require_tau(tau, "smeared_initial_condition");
  if (!(width > 0.0)) throw DomainError("smeared_initial_condition: width must be positive");
  const double power = convention == DeltaConvention::weighted ? 2.0 * p.nu() : 0.0;
  const double spread = std::sqrt(tau) + width;
  const double length = std::abs(y) + 12.0 * spread + 1.0;
  // Coarse panels for g, fine ones where d_τ(·, y) peaks.
  std::vector<double> b;
  const int coarse = int(std::ceil(length / std::min(0.5, width / 2.0)));
  for (int i = 0; i <= coarse; ++i) b.push_back(length * i / coarse);
  const double s = std::sqrt(tau);
  for (int i = -48; i <= 48; ++i) {
    const double x = std::abs(y) + 0.25 * s * i;
    if (x > 0.0 && x < length) b.push_back(x);
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end(), [](double u, double v) { return v - u < 1e-12; }), b.end());
  const WeightedGrid g = make_weighted_grid(b, 16, power, 1.0, Domain::full_line, p.nu());
  const double pairing = integrate(g, [&](double x) {
    const double dx = x - y;
    return dunkl_heat_kernel(x, y, tau, p) * std::exp(-dx * dx / (2.0 * width * width));
  });
  return pairing - 1.0;
}

// ---------------------------------------------------------------------------

double sample_bessel_step(double current, double dt, const BesselIndex& idx, std::mt19937_64& rng) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("sample_bessel_step: dt must be positive");
  if (!(current >= 0.0)) throw DomainError("sample_bessel_step: position must be >= 0");
  const double half_lambda = 0.5 * current * current / dt;
  long n = 0;
  if (half_lambda > 0.0) n = std::poisson_distribution<long>(half_lambda)(rng);
  const double shape = idx.alpha + 1.0 + double(n);
  const double x = std::gamma_distribution<double>(shape, 2.0)(rng);
  return std::sqrt(dt * x);
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct BlockSum {
  long double sum = 0.0L, sum_sq = 0.0L;
  std::size_t clamped = 0;
};

template <class Sample>
MCEstimate run_blocks(std::size_t n_paths, const MCConfig& cfg, Sample&& sample) {
  const std::size_t n_blocks = (n_paths + kBlockSize - 1) / kBlockSize;
  std::vector<BlockSum> blocks(n_blocks);
  const unsigned workers = cfg.workers ? cfg.workers : detail::default_workers();
  detail::parallel_for(
      n_blocks,
      [&](std::size_t b) {
        std::mt19937_64 rng = block_generator(cfg.seed, b);
        const std::size_t count = std::min(kBlockSize, n_paths - b * kBlockSize);
        BlockSum s;
        for (std::size_t i = 0; i < count; ++i) {
          bool clamped = false;
          const double v = sample(rng, clamped);
          s.sum += v;
          s.sum_sq += (long double)v * v;
          s.clamped += clamped;
        }
        blocks[b] = s;
      },
      workers);
  long double sum = 0.0L, sum_sq = 0.0L;
  std::size_t clamped = 0;
  for (const auto& s : blocks) {
    sum += s.sum;
    sum_sq += s.sum_sq;
    clamped += s.clamped;
  }
  const long double n = (long double)n_paths;
  const long double mean = sum / n;
  const long double var = std::max(0.0L, (sum_sq - n * mean * mean) / (n - 1.0L));
  MCEstimate e;
  e.mean = double(mean);
  e.std_error = double(std::sqrt(var / n));
  e.n_samples = n_paths;
  e.seed = cfg.seed;
  e.n_steps = cfg.n_steps;
  e.workers = workers;
  e.clamp_rate = double(clamped) / double(n_paths);
  return e;
}

void check_config(const MCConfig& cfg) {
  if (cfg.n_paths < MCConfig::kMinPaths)
    throw DomainError("Monte Carlo: n_paths must be at least " + std::to_string(MCConfig::kMinPaths));
  if (cfg.n_steps < 1) throw DomainError("Monte Carlo: n_steps must be positive");
}

void check_symmetric(const RealFunction& V) {
  for (double x : {1e-3, 0.1, 0.37, 1.0, 2.5, 7.0, 20.0}) {
    const double a = V(x), b = V(-x);
    if (!std::isfinite(a) || !std::isfinite(b) || std::abs(a - b) > 1e-12 * (1.0 + std::abs(a)))
      throw DomainError("feynman_kac_mc: potential must be finite and symmetric, V(" + std::to_string(x) +
                        ") != V(-" + std::to_string(x) + ")");
  }
}

}  // namespace

std::mt19937_64 block_generator(std::uint64_t seed, std::uint64_t block) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(block)));
}

BesselPath sample_bessel_path(double start, double tau, int n_steps, const BesselIndex& idx, std::uint64_t seed) {
  idx.validate();
  require_tau(tau, "sample_bessel_path");
  if (n_steps < 1) throw DomainError("sample_bessel_path: n_steps must be positive");
  if (!(start >= 0.0)) throw DomainError("sample_bessel_path: start must be >= 0");
  BesselPath path{idx, {}, {}, seed};
  std::mt19937_64 rng = block_generator(seed, 0);
  const double dt = tau / n_steps;
  path.times.reserve(n_steps + 1);
  path.positions.reserve(n_steps + 1);
  path.times.push_back(0.0);
  path.positions.push_back(start);
  for (int k = 1; k <= n_steps; ++k) {
    path.times.push_back(k == n_steps ? tau : k * dt);
    path.positions.push_back(sample_bessel_step(path.positions.back(), dt, idx, rng));
  }
  return path;
}

int MCConfig::default_steps(double tau) { return std::max(1, int(std::ceil(kStepsPerUnitTime * tau - 1e-9))); }

namespace {

// Sector estimator on skeletons of 2^refine · n_steps points, whose trapezoid
// uses every 2^(refine - level)-th point.
MCEstimate fk_estimate(const RealFunction& V, double y, double tau, const DunklParam& p, const RealFunction& f,
                       const MCConfig& cfg, int refine, int level) {
  check_config(cfg);
  require_tau(tau, "feynman_kac_mc");
  if (!std::isfinite(y)) throw DomainError("feynman_kac_mc: start point must be finite");
  check_symmetric(V);
  const BesselIndex even = BesselIndex::even_sector(p), odd = BesselIndex::odd_sector(p);
  const int stride = 1 << (refine - level);
  const int n = cfg.n_steps << refine;
  const double dt = tau / n;
  const double start = std::abs(y);

  // Endpoint and trapezoid weight of one skeleton.
  auto walk = [&](const BesselIndex& idx, std::mt19937_64& rng, double& weight) {
    double z = start, action = 0.5 * V(z);
    for (int k = 1; k <= n; ++k) {
      z = sample_bessel_step(z, dt, idx, rng);
      if (k % stride == 0) action += (k == n ? 0.5 : 1.0) * V(z);
    }
    weight = std::exp(-dt * stride * action);
    return z;
  };
  MCEstimate e = run_blocks(cfg.n_paths, cfg, [&](std::mt19937_64& rng, bool&) {
    double w_even = 0.0, w_odd = 0.0;
    const double z_even = walk(even, rng, w_even);
    double value = 0.5 * (f(z_even) + f(-z_even)) * w_even;
    if (y != 0.0) {
      const double z_odd = walk(odd, rng, w_odd);
      value += y * 0.5 * (f(z_odd) - f(-z_odd)) / z_odd * w_odd;
    }
    return value;
  });
  e.n_steps = n / stride;
  return e;
}

}  // namespace

MCEstimate feynman_kac_mc(const RealFunction& V, double y, double tau, const DunklParam& p, const RealFunction& f,
                          const MCConfig& cfg) {
  return fk_estimate(V, y, tau, p, f, cfg, 0, 0);
}

SkeletonRefinement feynman_kac_refinement(const RealFunction& V, double y, double tau, const DunklParam& p,
                                          const RealFunction& f, const MCConfig& cfg) {
  SkeletonRefinement r;
  r.coarse = fk_estimate(V, y, tau, p, f, cfg, 1, 0);
  r.fine = fk_estimate(V, y, tau, p, f, cfg, 1, 1);
  r.shift = r.fine.mean - r.coarse.mean;
  return r;
}

double weighted_pairing(const std::function<double(double)>& kernel_at_x, const RealFunction& f, const DunklParam& p,
                        double length) {
  const WeightedGrid g = make_dunkl_grid(p, length, 48, 20, Domain::full_line);
  return integrate(g, [&](double x) { return f(x) * kernel_at_x(x); });
}

RadonNikodymReport radon_nikodym_check(double alpha, double beta, double y, double tau, const MCConfig& cfg,
                                       const IndexChangeOptions& opt) {
  check_config(cfg);
  require_tau(tau, "radon_nikodym_check");
  const BesselIndex a{alpha, Boundary::reflecting}, b{beta, Boundary::absorbing};
  a.validate();
  b.validate();
  if (!(y > 0.0)) throw DomainError("radon_nikodym_check: start point must be positive");
  if (!(opt.omega >= 0.0)) throw DomainError("radon_nikodym_check: omega must be >= 0");
  const RealFunction f = opt.f ? opt.f : RealFunction([](double z) { return std::exp(-(z - 1.0) * (z - 1.0)); });
  const double dt = tau / cfg.n_steps;
  const double half_w2 = 0.5 * opt.omega * opt.omega;
  const double centrifugal = 0.5 * (beta * beta - alpha * alpha);

  RadonNikodymReport r;
  r.direct = run_blocks(cfg.n_paths, cfg, [&](std::mt19937_64& rng, bool&) {
    double z = y, action = 0.5 * half_w2 * z * z;
    for (int k = 1; k <= cfg.n_steps; ++k) {
      z = sample_bessel_step(z, dt, b, rng);
      action += (k == cfg.n_steps ? 0.5 : 1.0) * half_w2 * z * z;
    }
    return f(z) * std::exp(-dt * action);
  });
  r.reweighted = run_blocks(cfg.n_paths, cfg, [&](std::mt19937_64& rng, bool& clamped) {
    auto potential = [&](double z) {
      if (z < opt.clamp_radius) {
        clamped = true;
        z = opt.clamp_radius;
      }
      return half_w2 * z * z + centrifugal / (z * z);
    };
    double z = y, action = 0.5 * potential(z);
    for (int k = 1; k <= cfg.n_steps; ++k) {
      z = sample_bessel_step(z, dt, a, rng);
      action += (k == cfg.n_steps ? 0.5 : 1.0) * potential(z);
    }
    return f(z) * std::pow(z / y, beta - alpha) * std::exp(-dt * action);
  });
  r.clamp_rate = r.reweighted.clamp_rate;
  const double se = std::hypot(r.reweighted.std_error, r.direct.std_error);
  r.z_score = se > 0.0 ? (r.reweighted.mean - r.direct.mean) / se : 0.0;

  // ∫ 2x^{2β+1} f(x) k_β(x, y) dx with the closed-form β kernel.
  const double length = y + 12.0 * std::sqrt(tau) + 6.0;
  const WeightedGrid g = make_speed_measure_grid(beta, length, 48, 20);
  r.reference = integrate(g, [&](double x) {
    const double k = opt.omega > 0.0 ? bessel_ho_kernel(x, y, tau, opt.omega, b) : bessel_density(x, y, tau, b);
    return f(x) * k;
  });
  return r;
}

}  // namespace wdqm
