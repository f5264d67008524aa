#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "wdqm/errors.hpp"
#include "wdqm/transform.hpp"

using namespace wdqm;

namespace {

const double kNus[] = {-0.3, 0.0, 0.5, 1.5};

std::vector<double> span_nodes(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

double max_abs(const std::vector<Complex>& a, const std::function<Complex(std::size_t)>& ref) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - ref(i)));
  return m;
}

}  // namespace

TEST(DunklTransform, GaussianPair) {
  const auto k = span_nodes(-6.0, 6.0, 41);
  for (double nu : kNus)
    for (double alpha : {0.5, 1.0, 2.0}) {
      const DunklParam p(nu);
      const auto out = dunkl_transform([&](double x) { return Complex(std::exp(-0.5 * alpha * x * x)); }, p, k);
      const double err = max_abs(out.values, [&](std::size_t i) {
        return Complex(std::pow(alpha, -(nu + 0.5)) * std::exp(-k[i] * k[i] / (2 * alpha)));
      });
      EXPECT_LE(err, 1e-8) << nu << " " << alpha;
    }
}

TEST(DunklTransform, InverseGaussianPair) {
  const auto x = span_nodes(-5.0, 5.0, 41);
  for (double nu : kNus)
    for (double beta : {0.5, 1.0, 2.0}) {
      const DunklParam p(nu);
      const auto out =
          inverse_dunkl_transform([&](double k) { return Complex(std::exp(-k * k / (2 * beta))); }, p, x);
      const double err = max_abs(out.values, [&](std::size_t i) {
        return Complex(std::pow(beta, nu + 0.5) * std::exp(-0.5 * beta * x[i] * x[i]));
      });
      EXPECT_LE(err, 1e-8 * std::pow(beta, nu + 0.5)) << nu << " " << beta;
    }
}

TEST(DunklTransform, FourierLimit) {
  const DunklParam p(0.0);
  const auto k = span_nodes(-4.0, 4.0, 17);
  const auto even = dunkl_transform([](double x) { return Complex(std::exp(-0.5 * x * x)); }, p, k);
  const auto back = inverse_dunkl_transform([](double q) { return Complex(std::exp(-0.5 * q * q)); }, p, k);
  for (std::size_t i = 0; i < k.size(); ++i) {
    EXPECT_NEAR(std::abs(even.values[i] - std::exp(-0.5 * k[i] * k[i])), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(back.values[i] - std::exp(-0.5 * k[i] * k[i])), 0.0, 1e-12);
  }
}

TEST(DunklTransform, OddGaussianFollowsDerivativeRule) {
  // x e^{-x²/2} = -D_x e^{-x²/2}, and D_x maps to multiplication by ik.
  const auto k = span_nodes(-5.0, 5.0, 21);
  for (double nu : kNus) {
    const auto out = dunkl_transform([](double x) { return Complex(x * std::exp(-0.5 * x * x)); }, DunklParam(nu), k);
    const double err =
        max_abs(out.values, [&](std::size_t i) { return Complex(0.0, -k[i]) * std::exp(-0.5 * k[i] * k[i]); });
    EXPECT_LE(err, 1e-9) << nu;
  }
}

TEST(DunklTransform, Linearity) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.3, 3.0), c(-2.0, 2.0);
  const DunklParam p(0.8);
  const auto k = span_nodes(-4.0, 4.0, 9);
  for (int trial = 0; trial < 5; ++trial) {
    const double a1 = u(rng), a2 = u(rng), s = u(rng);
    const Complex ca(c(rng), c(rng)), cb(c(rng), c(rng));
    auto f = [&](double x) { return Complex(std::exp(-a1 * x * x)); };
    auto g = [&](double x) { return Complex((x - s) * std::exp(-a2 * x * x)); };
    const auto df = dunkl_transform(f, p, k), dg = dunkl_transform(g, p, k);
    const auto dh = dunkl_transform([&](double x) { return ca * f(x) + cb * g(x); }, p, k);
    for (std::size_t i = 0; i < k.size(); ++i) EXPECT_LE(std::abs(dh.values[i] - ca * df.values[i] - cb * dg.values[i]), 1e-12);
  }
}

TEST(DunklTransform, ParitySelectsRealOrImaginary) {
  const auto k = span_nodes(-4.0, 4.0, 17);
  for (double nu : kNus) {
    const DunklParam p(nu);
    const auto even = dunkl_transform([](double x) { return Complex(std::exp(-x * x) * std::cos(x)); }, p, k);
    const auto odd = dunkl_transform([](double x) { return Complex(std::exp(-x * x) * std::sin(2 * x)); }, p, k);
    for (std::size_t i = 0; i < k.size(); ++i) {
      EXPECT_EQ(even.values[i].imag(), 0.0);
      EXPECT_EQ(odd.values[i].real(), 0.0);
    }
  }
}

TEST(DunklTransform, Plancherel) {
  for (double nu : kNus) {
    const DunklParam p(nu);
    auto f = [](double x) { return Complex((1.0 + x + 0.5 * x * x) * std::exp(-0.7 * x * x), 0.3 * x * std::exp(-x * x)); };
    const WeightedGrid xg = make_dunkl_grid(p, 10.0, 20, 20);
    const WeightedGrid kg = make_dunkl_grid(p, 12.0, 24, 16);
    const double lhs = integrate(xg, [&](double x) { return std::norm(f(x)); });
    const auto df = dunkl_transform(f, p, kg);
    double rhs = 0.0;
    for (std::size_t i = 0; i < kg.size(); ++i) rhs += kg.weights[i] * std::norm(df.values[i]);
    EXPECT_NEAR(rhs / lhs, 1.0, 1e-7) << nu;
  }
}

TEST(DunklTransform, RoundTrip) {
  const DunklParam p(0.8);
  auto f = [](double x) { return Complex(x * std::exp(-x * x)); };
  const WeightedGrid kg = make_dunkl_grid(p, 14.0, 28, 20);
  const auto df = dunkl_transform(f, p, kg);
  const auto x = span_nodes(-3.0, 3.0, 31);
  const auto back = inverse_dunkl_transform(df, p, evaluation_nodes(x, p.nu()));
  EXPECT_LE(max_abs(back.values, [&](std::size_t i) { return f(x[i]); }), 1e-7);
}

TEST(DunklTransform, SampledInputOnHalfLine) {
  const DunklParam p(0.5);
  const WeightedGrid xg = make_dunkl_grid(p, 10.0, 20, 20, Domain::half_line);
  const auto f = sample([](double x) { return Complex(std::exp(-0.5 * x * x)); }, xg, Parity::even);
  const auto k = span_nodes(0.0, 4.0, 9);
  const auto out = dunkl_transform(f, p, evaluation_nodes(k, p.nu()));
  for (std::size_t i = 0; i < k.size(); ++i) EXPECT_NEAR(std::abs(out.values[i] - std::exp(-0.5 * k[i] * k[i])), 0.0, 1e-12);
}

TEST(DunklTransform, SampledInputErrors) {
  const DunklParam p(0.5);
  const auto k = evaluation_nodes(span_nodes(0.0, 1.0, 3), 0.5);
  const WeightedGrid half = make_dunkl_grid(p, 10.0, 20, 20, Domain::half_line);
  auto gauss = [](double x) { return Complex(std::exp(-0.5 * x * x)); };
  EXPECT_THROW(dunkl_transform(sample(gauss, half), p, k), DomainError);
  const WeightedGrid other = make_dunkl_grid(DunklParam(0.7), 10.0, 20, 20);
  EXPECT_THROW(dunkl_transform(sample(gauss, other), p, k), GridMismatchError);
  EXPECT_THROW(dunkl_transform(sample(gauss, k), p, k), DomainError);
  const WeightedGrid full = make_dunkl_grid(p, 4.0, 8, 8);
  EXPECT_THROW(sample([](double x) { return Complex(x); }, full, Parity::even).validate(), DomainError);
}

TEST(DunklTransform, ReportsTruncatedTail) {
  const DunklParam p(0.5);
  TransformOptions opt;
  opt.length = 5.0;
  const std::vector<double> k{0.0, 1.0};
  EXPECT_THROW(dunkl_transform([](double x) { return Complex(std::exp(-0.01 * x * x)); }, p, k, opt),
               TruncationError);
}

TEST(SmearedOrthogonality, Examples) {
  EXPECT_NEAR(smeared_orthogonality_check(1.0, 0.05, DunklParam(0.0)), 1.0, 0.02);
  EXPECT_NEAR(smeared_orthogonality_check(2.0, 0.05, DunklParam(0.5)), 1.0, 0.02);
}

TEST(SmearedOrthogonality, HalvingWidthHalvesError) {
  for (double nu : {0.0, 0.5, 1.5}) {
    const DunklParam p(nu);
    const double wide = std::abs(smeared_orthogonality_check(1.5, 0.1, p) - 1.0);
    const double narrow = std::abs(smeared_orthogonality_check(1.5, 0.05, p) - 1.0);
    // ν = 0 is the Fourier case, where the regulated mass is exact.
    EXPECT_LE(narrow, std::max(0.5 * wide, 1e-12)) << nu;
  }
}

TEST(SmearedOrthogonality, QuadratureMatchesClosedForm) {
  for (double nu : {-0.3, 0.5, 1.5}) {
    const DunklParam p(nu);
    EXPECT_NEAR(smeared_orthogonality_check(2.0, 0.1, p), smeared_orthogonality_closed_form(2.0, 0.1, p), 1e-8) << nu;
  }
}

TEST(SampledCsv, RoundTrip) {
  const DunklParam p(0.3);
  const WeightedGrid g = make_dunkl_grid(p, 3.0, 4, 5);
  const auto f = sample([](double x) { return Complex(std::sin(x) / 3.0, std::exp(x) * 1e-7); }, g, Parity::none);
  std::stringstream ss;
  write_csv(ss, f);
  const auto back = read_csv(ss, p.nu());
  ASSERT_EQ(back.size(), f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_EQ(back.nodes()[i], f.nodes()[i]);
    EXPECT_EQ(back.values[i], f.values[i]);
  }
  std::stringstream bad("# x\nnode,re\n1,2\n");
  EXPECT_THROW(read_csv(bad), DomainError);
}
