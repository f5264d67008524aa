// wdqm-cli: batch front end for the wdqm library.
//
// Every subcommand reads an optional key=value config file (--config) and
// accepts each key as a flag; flags override the file. Output is CSV with
// `#` metadata lines or a single JSON object with "meta" and "data".

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "wdqm/dynamics.hpp"
#include "wdqm/errors.hpp"
#include "wdqm/stochastic.hpp"
#include "wdqm/transform.hpp"
#include "wdqm/trotter.hpp"

namespace {

using namespace wdqm;
using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;
const Complex kI(0.0, 1.0);

enum Exit { kOk = 0, kCheckFailed = 1, kConfigError = 2, kDomainError = 3, kIoError = 4 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Params = std::map<std::string, std::string>;

// Keys and defaults of each subcommand. Every run echoes the full map.
const std::map<std::string, Params>& schemas() {
  static const Params common{{"nu", "0.5"}, {"mass", "1"}, {"hbar", "1"}, {"format", "csv"}, {"output", "-"}};
  auto with = [&](Params extra) {
    extra.insert(common.begin(), common.end());
    return extra;
  };
  static const std::map<std::string, Params> s{
      {"kernel", with({{"axis", "real"}, {"x_min", "-20"}, {"x_max", "20"}, {"points", "81"}})},
      {"transform",
       with({{"direction", "forward"}, {"alpha", "1"}, {"k_max", "6"}, {"points", "61"}})},
      {"evolve", with({{"beta", "1"}, {"t", "1"}, {"x_max", "6"}, {"points", "121"}})},
      {"propagate", with({{"potential", "free"}, {"omega", "1"}, {"t", "1"}, {"y", "0.5"}, {"eps_m", "0"},
                          {"x_min", "-4"}, {"x_max", "4"}, {"points", "81"}})},
      {"trotter", with({{"omega", "1"}, {"t", "1"}, {"eps_m", "0.5"}, {"length", "5"}, {"panels", "25"},
                        {"order", "8"}, {"schedule", "8,16,32,64"}, {"window", "2"}, {"tolerance", "1e-3"}})},
      {"heat", with({{"potential", "free"}, {"omega", "1"}, {"tau", "1"}, {"y", "0.5"}, {"x_min", "-4"},
                     {"x_max", "4"}, {"points", "81"}})},
      {"mc", with({{"format", "json"}, {"potential", "ho"}, {"omega", "1"}, {"tau", "0.8"}, {"y", "0.7"}, {"paths", "100000"},
                   {"steps", "0"}, {"seed", "42"}, {"workers", "0"}, {"f_center", "0.5"},
                   {"f_width", "0.70710678118654757"}})},
      {"check", with({{"suite", "densities"}})},
  };
  return s;
}

// ---------------------------------------------------------------------------
// Config resolution

Params read_config_file(const std::string& path, const Params& schema) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  Params out;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (!schema.count(key)) throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    out[key] = value;
  }
  return out;
}

class Config {
 public:
  Config(std::string command, Params values) : command_(std::move(command)), values_(std::move(values)) {}

  const std::string& command() const { return command_; }
  const Params& values() const { return values_; }
  const std::string& str(const std::string& key) const { return values_.at(key); }

  double num(const std::string& key) const {
    const std::string& s = str(key);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
      throw ConfigError("key '" + key + "' needs a finite number, got '" + s + "'");
    return v;
  }

  long long integer(const std::string& key, long long min) const {
    const std::string& s = str(key);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw ConfigError("key '" + key + "' needs an integer, got '" + s + "'");
    if (v < min) throw ConfigError("key '" + key + "' must be at least " + std::to_string(min));
    return v;
  }

  std::string choice(const std::string& key, std::initializer_list<const char*> allowed) const {
    const std::string& s = str(key);
    for (const char* a : allowed)
      if (s == a) return s;
    std::string list;
    for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
    throw ConfigError("key '" + key + "' must be one of: " + list);
  }

  std::vector<int> int_list(const std::string& key) const {
    std::vector<int> out;
    std::stringstream ss(str(key));
    for (std::string item; std::getline(ss, item, ',');) {
      int v = 0;
      const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (ec != std::errc() || ptr != item.data() + item.size() || v < 1)
        throw ConfigError("key '" + key + "' needs a comma-separated list of positive integers");
      out.push_back(v);
    }
    if (out.empty()) throw ConfigError("key '" + key + "' is empty");
    return out;
  }

  DunklParam dunkl() const {
    const double nu = num("nu");
    if (!(nu > -0.5)) throw DomainError("nu must exceed -1/2");
    return DunklParam(nu);
  }
  MassTime mass_time(double t, double eps_m = 0.0) const { return {num("mass"), num("hbar"), t, eps_m}; }
  bool json_output() const { return choice("format", {"csv", "json"}) == "json"; }

 private:
  std::string command_;
  Params values_;
};

// ---------------------------------------------------------------------------
// Output

// Shortest decimal that reads back to the same double.
std::string format_number(double v) { return json(v).dump(); }

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;  // numbers or strings
};

json meta_of(const Config& cfg) {
  json config = json::object();
  for (const auto& [k, v] : cfg.values()) config[k] = v;
  return {{"schema_version", kSchemaVersion}, {"command", cfg.command()}, {"config", config}};
}

void write_csv(std::ostream& os, const Config& cfg, const Table& t) {
  os << "# schema_version=" << kSchemaVersion << "\n# command=" << cfg.command() << "\n";
  for (const auto& [k, v] : cfg.values()) os << "# " << k << "=" << v << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ",";
      if (row[i].is_number_integer()) os << row[i].dump();
      else if (row[i].is_number()) os << format_number(row[i].get<double>());
      else os << row[i].get<std::string>();
    }
    os << "\n";
  }
}

json table_json(const Table& t) {
  json rows = json::array();
  for (const auto& r : t.rows) rows.push_back(r);
  return {{"columns", t.columns}, {"rows", rows}};
}

void emit(const Config& cfg, const std::function<void(std::ostream&)>& body) {
  const std::string& path = cfg.str("output");
  if (path == "-") {
    body(std::cout);
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file " + path);
  body(out);
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

void emit_table(const Config& cfg, const Table& t) {
  emit(cfg, [&](std::ostream& os) {
    if (cfg.json_output())
      os << json{{"meta", meta_of(cfg)}, {"data", table_json(t)}}.dump(2) << "\n";
    else
      write_csv(os, cfg, t);
  });
}

std::vector<double> linspace(double lo, double hi, long long n) {
  std::vector<double> v(n);
  for (long long i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * double(i) / double(n - 1);
  return v;
}

std::vector<double> axis(const Config& cfg, const std::string& lo, const std::string& hi) {
  const double a = lo.empty() ? -cfg.num(hi) : cfg.num(lo), b = cfg.num(hi);
  if (!(a <= b)) throw ConfigError("empty range: " + (lo.empty() ? "-" + hi : lo) + " > " + hi);
  return linspace(a, b, cfg.integer("points", 1));
}

// ---------------------------------------------------------------------------
// Subcommands

int run_kernel(const Config& cfg) {
  const DunklParam p = cfg.dunkl();
  const bool imag = cfg.choice("axis", {"real", "imag"}) == "imag";
  Table t{{"x", "re", "im"}, {}};
  for (double x : axis(cfg, "x_min", "x_max")) {
    const Complex e = dunkl_kernel(imag ? Complex(0.0, x) : Complex(x, 0.0), p);
    t.rows.push_back({x, e.real(), e.imag()});
  }
  emit_table(cfg, t);
  return kOk;
}

// Dunkl transform of exp(-αx²/2), or the inverse transform of exp(-k²/2α).
int run_transform(const Config& cfg) {
  const DunklParam p = cfg.dunkl();
  const double alpha = cfg.num("alpha");
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  const auto nodes = axis(cfg, "", "k_max");
  const SampledFunction out =
      cfg.choice("direction", {"forward", "inverse"}) == "forward"
          ? dunkl_transform([&](double x) { return Complex(std::exp(-0.5 * alpha * x * x)); }, p, nodes)
          : inverse_dunkl_transform([&](double k) { return Complex(std::exp(-k * k / (2 * alpha))); }, p, nodes);
  Table t{{"node", "re", "im"}, {}};
  for (std::size_t i = 0; i < out.size(); ++i) t.rows.push_back({out.nodes()[i], out.values[i].real(), out.values[i].imag()});
  emit_table(cfg, t);
  return kOk;
}

int run_evolve(const Config& cfg) {
  const DunklParam p = cfg.dunkl();
  const double time = cfg.num("t");
  const PacketState s = evolve_gaussian(cfg.num("beta"), time, p, cfg.mass_time(time));
  Table t{{"x", "t", "density"}, {}};
  for (double x : axis(cfg, "", "x_max")) t.rows.push_back({x, time, s.density(x)});
  emit_table(cfg, t);
  return kOk;
}

int run_propagate(const Config& cfg) {
  const DunklParam p = cfg.dunkl();
  const double time = cfg.num("t"), y = cfg.num("y"), omega = cfg.num("omega");
  const MassTime mt = cfg.mass_time(time, cfg.num("eps_m"));
  const bool ho = cfg.choice("potential", {"free", "ho"}) == "ho";
  Table t{{"x", "y", "t", "re", "im"}, {}};
  for (double x : axis(cfg, "x_min", "x_max")) {
    const Complex k = ho ? ho_propagator(x, y, time, omega, p, mt) : free_propagator(x, y, time, p, mt);
    t.rows.push_back({x, y, time, k.real(), k.imag()});
  }
  emit_table(cfg, t);
  return kOk;
}

int run_trotter(const Config& cfg) {
  const DunklParam p = cfg.dunkl();
  SliceConfig sc;
  sc.total_time = cfg.num("t");
  sc.mass = cfg.num("mass");
  sc.hbar = cfg.num("hbar");
  sc.eps_m = cfg.num("eps_m");
  sc.grid = trotter_grid(p, cfg.num("length"), int(cfg.integer("panels", 1)), int(cfg.integer("order", 1)));
  const NaiveDiagnostic d =
      naive_kernel_diagnostic(sc, p, cfg.num("omega"), cfg.int_list("schedule"), cfg.num("window"), cfg.num("tolerance"));
  Table t{{"N", "grid_size", "exact_error", "naive_error"}, {}};
  for (const auto& r : d.rows) t.rows.push_back({double(r.n_slices), double(sc.grid.size()), r.exact_error, r.naive_error});
  emit(cfg, [&](std::ostream& os) {
    if (cfg.json_output()) {
      json data = table_json(t);
      data["exact_monotone"] = d.exact_monotone;
      data["naive_converges"] = d.naive_converges;
      os << json{{"meta", meta_of(cfg)}, {"data", data}}.dump(2) << "\n";
    } else {
      write_csv(os, cfg, t);
    }
  });
  return kOk;
}

int run_heat(const Config& cfg) {
  const DunklParam p = cfg.dunkl();
  const double tau = cfg.num("tau"), y = cfg.num("y"), omega = cfg.num("omega");
  const bool ho = cfg.choice("potential", {"free", "ho"}) == "ho";
  Table t{{"x", "y", "tau", "density"}, {}};
  for (double x : axis(cfg, "x_min", "x_max"))
    t.rows.push_back({x, y, tau, ho ? ho_heat_kernel(x, y, tau, omega, p) : dunkl_heat_kernel(x, y, tau, p)});
  emit_table(cfg, t);
  return kOk;
}

int run_mc(const Config& cfg) {
  const DunklParam p = cfg.dunkl();
  if (cfg.num("mass") != 1.0 || cfg.num("hbar") != 1.0) throw DomainError("mc works in units mass = hbar = 1");
  const double tau = cfg.num("tau"), y = cfg.num("y"), omega = cfg.num("omega");
  const double center = cfg.num("f_center"), width = cfg.num("f_width");
  if (!(width > 0.0)) throw DomainError("f_width must be positive");
  const bool ho = cfg.choice("potential", {"free", "ho"}) == "ho";
  MCConfig mc;
  mc.n_paths = std::size_t(cfg.integer("paths", 1));
  mc.seed = std::uint64_t(cfg.integer("seed", 0));
  mc.workers = unsigned(cfg.integer("workers", 0));
  const long long steps = cfg.integer("steps", 0);
  mc.n_steps = steps ? int(steps) : MCConfig::default_steps(tau);
  if (!(tau > 0.0)) throw DomainError("tau must be positive");

  const RealFunction V = [ho, k = 0.5 * omega * omega](double x) { return ho ? k * x * x : 0.0; };
  const RealFunction f = [center, width](double x) { return std::exp(-(x - center) * (x - center) / (2 * width * width)); };
  const MCEstimate e = feynman_kac_mc(V, y, tau, p, f, mc);
  const double reference = weighted_pairing(
      [&](double x) { return ho ? ho_heat_kernel(x, y, tau, omega, p) : dunkl_heat_kernel(x, y, tau, p); }, f, p);

  const json data{{"estimate", e.mean},     {"std_error", e.std_error},    {"n_paths", e.n_samples},
                  {"n_steps", e.n_steps},   {"seed", e.seed},              {"clamp_rate", e.clamp_rate},
                  {"workers", e.workers},   {"rng", "mt19937_64/splitmix64 blocks of " + std::to_string(kBlockSize)},
                  {"reference", reference}, {"z_score", (e.mean - reference) / e.std_error}};
  emit(cfg, [&](std::ostream& os) {
    if (cfg.json_output()) {
      os << json{{"meta", meta_of(cfg)}, {"data", data}}.dump(2) << "\n";
      return;
    }
    Table t;
    std::vector<json> row;
    for (const auto& [k, v] : data.items()) {
      t.columns.push_back(k);
      row.push_back(v);
    }
    t.rows.push_back(row);
    write_csv(os, cfg, t);
  });
  return kOk;
}

// ---------------------------------------------------------------------------
// Property suites

struct Check {
  std::string property;
  double residual;
  double tolerance;
  bool pass() const { return residual <= tolerance; }
};

std::vector<Check> suite_specfun() {
  std::vector<Check> out;
  double rep = 0.0, exp_err = 0.0;
  for (double nu : {-0.3, 0.0, 0.5, 1.5}) {
    const DunklParam p(nu);
    for (double x = -20.0; x <= 20.0; x += 0.5) {
      if (x == 0.0) continue;
      auto rel = [](Complex a, Complex b) { return std::abs(a - b) / std::abs(b); };
      rep = std::max(rep, rel(dunkl_kernel(Complex(0, x), p, Regime::series), dunkl_kernel(Complex(0, x), p, Regime::bessel_imag)));
      if (x > 0.0)
        rep = std::max(rep, rel(dunkl_kernel(Complex(x, 0), p, Regime::series), dunkl_kernel(Complex(x, 0), p, Regime::bessel_real)));
    }
  }
  const DunklParam p0(0.0);
  for (double x = -20.0; x <= 20.0; x += 0.5) {
    exp_err = std::max(exp_err, std::abs(dunkl_kernel_real(x, p0) - std::exp(x)) / std::exp(x));
    exp_err = std::max(exp_err, std::abs(dunkl_kernel_imag(x, p0) - std::exp(Complex(0, x))));
  }
  out.push_back({"kernel.series_vs_bessel", rep, 1e-9});
  out.push_back({"kernel.undeformed_is_exp", exp_err, 1e-12});
  return out;
}

std::vector<Check> suite_transform() {
  double pair = 0.0, round_trip = 0.0;
  const auto k = linspace(-6.0, 6.0, 25);
  for (double nu : {-0.3, 0.0, 0.5, 1.5}) {
    const DunklParam p(nu);
    for (double a : {0.5, 1.0, 2.0}) {
      const auto out = dunkl_transform([&](double x) { return Complex(std::exp(-0.5 * a * x * x)); }, p, k);
      for (std::size_t i = 0; i < k.size(); ++i)
        pair = std::max(pair, std::abs(out.values[i] - std::pow(a, -(nu + 0.5)) * std::exp(-k[i] * k[i] / (2 * a))));
    }
  }
  const DunklParam p(0.8);
  auto f = [](double x) { return Complex(x * std::exp(-x * x)); };
  const auto df = dunkl_transform(f, p, make_dunkl_grid(p, 14.0, 28, 20));
  const auto x = linspace(-3.0, 3.0, 13);
  const auto back = inverse_dunkl_transform(df, p, evaluation_nodes(x, p.nu()));
  for (std::size_t i = 0; i < x.size(); ++i) round_trip = std::max(round_trip, std::abs(back.values[i] - f(x[i])));
  return {{"transform.gaussian_pair", pair, 1e-8}, {"transform.round_trip", round_trip, 1e-7}};
}

std::vector<Check> suite_dynamics() {
  auto rel = [](Complex a, Complex b) { return std::abs(a - b) / std::abs(b); };
  double closed = 0.0, kc = 0.0, spectral = 0.0, packet = 0.0;
  const DunklParam p0(0.0);
  for (double x : {-2.0, 0.4, 1.9})
    for (double y : {-1.1, 0.7})
      for (double t : {0.3, 2.0}) {
        const Complex ref = std::sqrt(1.0 / (2 * kPi * kI * t)) * std::exp(kI * (x - y) * (x - y) / (2 * t));
        closed = std::max(closed, rel(free_propagator(x, y, t, p0), ref));
      }
  for (double nu : {-0.3, 0.5, 1.5}) {
    const DunklParam p(nu);
    const MassTime mt = MassTime::regularized(1.0, 1.0, 1.0);
    kc = std::max(kc, rel(free_convolution(0.3, -1.2, 0.5, 0.5, p, mt), free_propagator(0.3, -1.2, 1.0, p, mt)));
    spectral = std::max(spectral, rel(free_propagator_spectral(0.8, -0.6, 1.0, p, mt), free_propagator(0.8, -0.6, 1.0, p, mt)));
    for (double t : {0.0, 1.0, 10.0}) {
      const PacketObservables o = packet_observables(evolve_gaussian(1.0, t, p), p);
      packet = std::max({packet, std::abs(o.dx2_quadrature / o.dx2 - 1.0), std::abs(o.dk2_quadrature / o.dk2 - 1.0),
                         std::abs(o.product_quadrature / o.product - 1.0)});
    }
  }
  return {{"propagator.undeformed_closed_form", closed, 1e-12},
          {"propagator.kolmogorov_chapman", kc, 1e-4},
          {"propagator.spectral_form", spectral, 1e-6},
          {"packet.moments", packet, 1e-6}};
}

std::vector<Check> suite_densities() {
  double norm = 0.0, conv = 0.0, decomposition = 0.0, wiener = 0.0, negative = 0.0, monotone_fail = 0.0;
  for (double nu : {0.0, 0.5, 1.5}) {
    const DunklParam p(nu);
    for (double y : {-1.3, 0.4})
      for (double tau : {0.3, 2.0}) {
        norm = std::max(norm, std::abs(weighted_pairing([&](double x) { return dunkl_heat_kernel(x, y, tau, p); },
                                                        [](double) { return 1.0; }, p, 16.0) - 1.0));
        for (double x = -4.0; x <= 4.0; x += 0.25) {
          negative = std::max(negative, -dunkl_heat_kernel(x, y, tau, p));
          const double ax = std::abs(x), ay = std::abs(y);
          const double scale = bessel_density(ax, ay, tau, BesselIndex::even_sector(p)) +
                               ax * ay * bessel_density(ax, ay, tau, BesselIndex::odd_sector(p));
          decomposition = std::max(decomposition, density_decomposition_check(x, y, tau, p) / scale);
        }
      }
    const double c = weighted_pairing([&](double z) { return dunkl_heat_kernel(0.7, z, 0.4, p); },
                                      [&](double z) { return dunkl_heat_kernel(z, -0.2, 0.7, p); }, p, 14.0);
    conv = std::max(conv, std::abs(c / dunkl_heat_kernel(0.7, -0.2, 1.1, p) - 1.0));
    double previous = INFINITY;
    for (double tau : {0.1, 0.01, 0.001}) {
      const double e = std::abs(smeared_initial_condition_error(0.6, tau, 0.2, p, DeltaConvention::weighted));
      if (!(e < previous)) monotone_fail = 1.0;
      previous = e;
    }
  }
  const DunklParam p0(0.0);
  for (double x : {-2.0, 0.0, 1.4})
    for (double y : {-1.0, 2.2})
      for (double tau : {0.05, 3.0}) {
        const double ref = std::exp(-(x - y) * (x - y) / (2 * tau)) / std::sqrt(2 * kPi * tau);
        wiener = std::max(wiener, std::abs(dunkl_heat_kernel(x, y, tau, p0) / ref - 1.0));
      }
  return {{"heat_kernel.normalization", norm, 1e-8},
          {"heat_kernel.convolution", conv, 1e-8},
          {"heat_kernel.positivity", negative, 0.0},
          {"heat_kernel.smeared_initial_condition_monotone", monotone_fail, 0.0},
          {"heat_kernel.bessel_decomposition", decomposition, 1e-10},
          {"heat_kernel.wiener_reduction", wiener, 1e-12}};
}

int run_check(const Config& cfg) {
  const std::map<std::string, std::function<std::vector<Check>()>> suites{
      {"specfun", suite_specfun}, {"transform", suite_transform}, {"dynamics", suite_dynamics},
      {"densities", suite_densities}};
  const std::string name = cfg.choice("suite", {"specfun", "transform", "dynamics", "densities", "all"});
  std::vector<Check> checks;
  for (const auto& [key, run] : suites)
    if (name == "all" || name == key) {
      auto c = run();
      checks.insert(checks.end(), c.begin(), c.end());
    }
  Table t{{"property", "residual", "tolerance", "status"}, {}};
  bool all = true;
  for (const auto& c : checks) {
    t.rows.push_back({c.property, c.residual, c.tolerance, c.pass() ? "PASS" : "FAIL"});
    all = all && c.pass();
  }
  emit_table(cfg, t);
  return all ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------

void report_error(const char* kind, const std::string& message, int code) {
  std::cerr << json{{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<std::string, std::function<int(const Config&)>> runners{
      {"kernel", run_kernel}, {"transform", run_transform}, {"evolve", run_evolve}, {"propagate", run_propagate},
      {"trotter", run_trotter}, {"heat", run_heat},       {"mc", run_mc},         {"check", run_check}};

  CLI::App app{"Wigner-Dunkl quantum mechanics: kernels, propagators, path integrals and Monte Carlo"};
  app.require_subcommand(1);
  std::map<std::string, std::string> config_paths;
  std::map<std::string, Params> flags;
  for (const auto& [name, schema] : schemas()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_paths[name], "key = value file; flags override it");
    for (const auto& [key, def] : schema)
      sub->add_option("--" + key, flags[name][key], "default " + def);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("config", e.what(), kConfigError);
    return kConfigError;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  CLI::App* sub = app.get_subcommands().front();
  try {
    const Params& schema = schemas().at(name);
    Params values = schema;
    if (!config_paths[name].empty())
      for (auto& [k, v] : read_config_file(config_paths[name], schema)) values[k] = v;
    for (const auto& [k, v] : flags[name])
      if (sub->count("--" + k)) values[k] = v;
    return runners.at(name)(Config(name, values));
  } catch (const ConfigError& e) {
    report_error("config", e.what(), kConfigError);
    return kConfigError;
  } catch (const IoError& e) {
    report_error("io", e.what(), kIoError);
    return kIoError;
  } catch (const wdqm::Error& e) {
    report_error("domain", e.what(), kDomainError);
    return kDomainError;
  }
}
