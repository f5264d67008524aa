#include <gtest/gtest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "wdqm/dynamics.hpp"
#include "wdqm/stochastic.hpp"

using namespace wdqm;
using json = nlohmann::json;

namespace {

struct CliRun {
  int status = -1;
  std::string out;
  std::string err;
};

std::filesystem::path scratch() {
  auto dir = std::filesystem::temp_directory_path() / "wdqm_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CliRun cli(const std::string& args) {
  const auto err_path = scratch() / "stderr.txt";
  const std::string cmd = std::string(WDQM_CLI) + " " + args + " 2>" + err_path.string();
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.err = slurp(err_path);
  return r;
}

struct Csv {
  std::vector<std::string> meta;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) out.push_back(cell);
  return out;
}

Csv parse_csv(const std::string& text) {
  Csv c;
  std::stringstream ss(text);
  for (std::string line; std::getline(ss, line);) {
    if (line.rfind("#", 0) == 0) c.meta.push_back(line);
    else if (c.header.empty()) c.header = split(line);
    else c.rows.push_back(split(line));
  }
  return c;
}

}  // namespace

TEST(Cli, EvolveCsvMatchesDispersionFormula) {
  const CliRun r = cli("evolve --nu 0.5 --beta 1 --t 2 --points 25");
  ASSERT_EQ(r.status, 0) << r.err;
  const Csv c = parse_csv(r.out);
  EXPECT_EQ(c.header, (std::vector<std::string>{"x", "t", "density"}));
  ASSERT_EQ(c.rows.size(), 25u);
  const PacketState s = evolve_gaussian(1.0, 2.0, DunklParam(0.5));
  for (const auto& row : c.rows) {
    const double x = std::stod(row[0]);
    EXPECT_EQ(std::stod(row[1]), 2.0);
    EXPECT_EQ(std::stod(row[2]), s.density(x)) << x;
  }
}

TEST(Cli, HeaderCarriesSchemaAndResolvedConfig) {
  const CliRun r = cli("heat --tau 0.5 --points 3");
  ASSERT_EQ(r.status, 0) << r.err;
  const Csv c = parse_csv(r.out);
  ASSERT_FALSE(c.meta.empty());
  EXPECT_EQ(c.meta[0], "# schema_version=1");
  auto has = [&](const std::string& line) { return std::find(c.meta.begin(), c.meta.end(), line) != c.meta.end(); };
  EXPECT_TRUE(has("# command=heat"));
  EXPECT_TRUE(has("# tau=0.5"));
  EXPECT_TRUE(has("# nu=0.5"));
  EXPECT_TRUE(has("# potential=free"));
}

TEST(Cli, OutputIsDeterministic) {
  for (const char* args : {"kernel --nu 0.3 --axis imag", "propagate --potential ho --t 0.7 --nu 1.2",
                           "mc --paths 3000 --workers 2 --seed 9"}) {
    const CliRun a = cli(args), b = cli(args);
    ASSERT_EQ(a.status, 0) << args << a.err;
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST(Cli, CsvRoundTripsExactly) {
  const CliRun r = cli("heat --nu 1.5 --y -0.4 --tau 0.3 --points 17");
  ASSERT_EQ(r.status, 0) << r.err;
  const Csv c = parse_csv(r.out);
  ASSERT_EQ(c.header, (std::vector<std::string>{"x", "y", "tau", "density"}));
  for (const auto& row : c.rows) {
    const double x = std::stod(row[0]);
    EXPECT_EQ(std::stod(row[3]), dunkl_heat_kernel(x, -0.4, 0.3, DunklParam(1.5)));
  }
}

TEST(Cli, JsonRoundTripsExactly) {
  const CliRun r = cli("transform --nu 0.5 --alpha 2 --points 9 --format json");
  ASSERT_EQ(r.status, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["meta"]["schema_version"], 1);
  EXPECT_EQ(j["meta"]["config"]["alpha"], "2");
  EXPECT_EQ(j["data"]["columns"], (json{"node", "re", "im"}));
  EXPECT_EQ(json::parse(j.dump(2)), j);
  for (const auto& row : j["data"]["rows"]) {
    const double k = row[0];
    EXPECT_NEAR(row[1].get<double>(), std::pow(2.0, -1.0) * std::exp(-k * k / 4.0), 1e-8);
  }
}

TEST(Cli, MonteCarloReportFields) {
  const CliRun r = cli("mc --paths 2000 --seed 5 --workers 1 --tau 0.5");
  ASSERT_EQ(r.status, 0) << r.err;
  const json d = json::parse(r.out)["data"];
  for (const char* key : {"estimate", "std_error", "n_paths", "n_steps", "seed", "clamp_rate", "workers"})
    EXPECT_TRUE(d.contains(key)) << key;
  EXPECT_EQ(d["n_paths"], 2000);
  EXPECT_EQ(d["n_steps"], MCConfig::default_steps(0.5));
  EXPECT_EQ(d["seed"], 5);
  EXPECT_EQ(d["workers"], 1);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const auto path = scratch() / "heat.cfg";
  std::ofstream(path) << "# comment\nnu = 1.5\ntau=0.3\npoints = 4\n";
  const CliRun r = cli("heat --config " + path.string() + " --tau 0.9");
  ASSERT_EQ(r.status, 0) << r.err;
  const Csv c = parse_csv(r.out);
  EXPECT_EQ(c.rows.size(), 4u);
  EXPECT_NE(std::find(c.meta.begin(), c.meta.end(), "# nu=1.5"), c.meta.end());
  EXPECT_NE(std::find(c.meta.begin(), c.meta.end(), "# tau=0.9"), c.meta.end());
}

TEST(Cli, WritesToOutputFile) {
  const auto path = scratch() / "evolve.csv";
  const CliRun r = cli("evolve --output " + path.string());
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const Csv file = parse_csv(slurp(path)), piped = parse_csv(cli("evolve").out);
  EXPECT_EQ(file.rows, piped.rows);
  EXPECT_NE(std::find(file.meta.begin(), file.meta.end(), "# output=" + path.string()), file.meta.end());
}

TEST(Cli, ExitCodes) {
  const auto bad_key = scratch() / "bad.cfg";
  std::ofstream(bad_key) << "nu = 0.5\nsigma = 2\n";
  struct Case {
    std::string args;
    int status;
    std::string kind;
  };
  const std::vector<Case> cases{
      {"heat --config " + bad_key.string(), 2, "config"},
      {"heat --sigma 2", 2, "config"},
      {"heat --tau abc", 2, "config"},
      {"heat --format xml", 2, "config"},
      {"nosuch", 2, "config"},
      {"heat --nu -0.8", 3, "domain"},
      {"heat --tau -1", 3, "domain"},
      {"mc --paths 10", 3, "domain"},
      {"heat --output /nonexistent-dir/out.csv", 4, "io"},
      {"heat --config /nonexistent-dir/x.cfg", 4, "io"},
  };
  for (const auto& c : cases) {
    const CliRun r = cli(c.args);
    EXPECT_EQ(r.status, c.status) << c.args;
    const json e = json::parse(r.err, nullptr, false);
    ASSERT_FALSE(e.is_discarded()) << c.args << ": " << r.err;
    EXPECT_EQ(e["error"]["kind"], c.kind) << c.args;
    EXPECT_EQ(e["error"]["exit_code"], c.status);
  }
}

TEST(Cli, DensitySuitePasses) {
  const CliRun r = cli("check --suite densities");
  ASSERT_EQ(r.status, 0) << r.out << r.err;
  const Csv c = parse_csv(r.out);
  EXPECT_EQ(c.header, (std::vector<std::string>{"property", "residual", "tolerance", "status"}));
  EXPECT_GE(c.rows.size(), 6u);
  for (const auto& row : c.rows) EXPECT_EQ(row.back(), "PASS") << row[0];
}
