#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "localitylab/commands.hpp"
#include "localitylab/error.hpp"
#include "oracles/reference_values.hpp"

using namespace localitylab;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

struct CliResult {
  int status;
  std::string out;
};

CliResult run_cli(const std::string& args, const std::string& env = "") {
  const fs::path out = fs::temp_directory_path() / fs::path("localitylab_cli_out.txt");
  const std::string cmd =
      env + " " + std::string(LOCALITYLAB_CLI) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WEXITSTATUS(raw), ss.str()};
}

}  // namespace

TEST(ValueList, Forms) {
  EXPECT_EQ(parse_value_list("0.7"), std::vector<double>{0.7});
  EXPECT_EQ(parse_value_list("1e-7,1e-3"), (std::vector<double>{1e-7, 1e-3}));
  EXPECT_EQ(parse_value_list("1e-12:1e-2:100").size(), 6u);
  EXPECT_THROW(parse_value_list("x"), DomainError);
}

TEST(ChainRange, Forms) {
  CensusConfig c;
  parse_chain_range("2..12:2", c);
  EXPECT_EQ(c.first_atoms, 2);
  EXPECT_EQ(c.last_atoms, 12);
  EXPECT_EQ(c.step, 2);
  parse_chain_range("4..9", c);
  EXPECT_EQ(c.first_atoms, 4);
  EXPECT_EQ(c.last_atoms, 9);
  EXPECT_THROW(parse_chain_range("9..4", c), DomainError);
}

TEST(CensusCommand, RowCountAndTrend) {
  CensusConfig c;
  c.basis_file = LOCALITYLAB_BASIS_FILE;
  c.first_atoms = 2;
  c.last_atoms = 12;
  c.step = 2;
  c.spacing = 1.0;
  c.deltas = {1e-15, 1e-7};
  std::ostringstream log;
  const auto rows = run_census(c, log);
  EXPECT_EQ(rows.size(), 24u);
  for (const auto& r : rows) EXPECT_FALSE(r.failed);
  std::ostringstream a, b;
  EXPECT_EQ(cmd_census(c, a, log), kExitOk);
  EXPECT_EQ(cmd_census(c, b, log), kExitOk);
  EXPECT_EQ(a.str(), b.str());
  const auto text = lines(a.str());
  EXPECT_EQ(text.front(), "n_atoms,M,basis_label,delta,N_OEI,N_TEI,h_max_OEI,h_max_TEI,status");
  EXPECT_EQ(text.size(), 25u);
}

TEST(CensusCommand, ScfFailureMarksRowAndContinues) {
  CensusConfig c;
  c.basis_file = LOCALITYLAB_BASIS_FILE;
  c.first_atoms = 2;
  c.last_atoms = 3;
  c.step = 1;
  c.deltas = {1e-7};
  std::ostringstream out, log;
  EXPECT_EQ(cmd_census(c, out, log), kExitOperational);
  const auto text = lines(out.str());
  ASSERT_EQ(text.size(), 5u);
  EXPECT_NE(text[4].find("failed"), std::string::npos);
  EXPECT_NE(text[3].find(",ok"), std::string::npos);
  EXPECT_FALSE(log.str().empty());
}

TEST(TruncateCommand, HydrogenSweepSatisfied) {
  TruncateConfig c;
  c.basis_file = LOCALITYLAB_BASIS_FILE;
  c.epsilon = 1e-3;
  const auto rows = run_truncate_validate(c);
  ASSERT_EQ(rows.size(), 7u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.bound_satisfied);
    EXPECT_NEAR(r.exact_energy, oracle::kH2Fci, 1e-6);
  }
  EXPECT_EQ(rows.front().n_removed, 0u);
  EXPECT_EQ(rows.front().energy_change, 0.0);
  EXPECT_EQ(rows.back().mode, "total_weight");
}

TEST(TruncateCommand, RemovedWeightMonotoneForFourAtoms) {
  TruncateConfig c;
  c.basis_file = LOCALITYLAB_BASIS_FILE;
  c.molecule.chain_atoms = 4;
  c.encoding = Encoding::BravyiKitaev;
  const auto rows = run_truncate_validate(c);
  for (std::size_t i = 1; i < rows.size(); ++i)
    EXPECT_GE(rows[i].removed_weight, rows[i - 1].removed_weight);
  for (const auto& r : rows) EXPECT_TRUE(r.bound_satisfied);
}

TEST(TruncateCommand, TooLarge) {
  TruncateConfig c;
  c.basis_file = LOCALITYLAB_BASIS_FILE;
  c.molecule.chain_atoms = 8;
  EXPECT_THROW(run_truncate_validate(c), TooLarge);
}

TEST(EstimateCommand, HydrogenReportIsComplete) {
  EstimateConfig c;
  c.basis_file = LOCALITYLAB_BASIS_FILE;
  c.epsilon = 1e-3;
  std::ostringstream out, log;
  ASSERT_EQ(cmd_estimate(c, out, log), kExitOk);
  const auto j = nlohmann::json::parse(out.str());
  ASSERT_EQ(j["reports"].size(), 3u);
  for (const auto& r : j["reports"])
    for (const auto& [k, v] : r["outputs"].items()) {
      ASSERT_TRUE(v.is_number()) << k;
      EXPECT_GT(v.get<double>(), 0.0) << k;
    }
  EXPECT_LE(j["empirical"]["trotter_error_at_bound_timestep"].get<double>(), 1e-3);
}

TEST(EstimateCommand, TruncationWeaklyLowersCosts) {
  EstimateConfig c;
  c.basis_file = LOCALITYLAB_BASIS_FILE;
  c.molecule.chain_atoms = 4;
  std::ostringstream a, b, log;
  cmd_estimate(c, a, log);
  c.delta = 1e-7;
  cmd_estimate(c, b, log);
  const auto ja = nlohmann::json::parse(a.str()), jb = nlohmann::json::parse(b.str());
  for (std::size_t i = 0; i < ja["reports"].size(); ++i)
    for (const auto& [k, v] : ja["reports"][i]["outputs"].items())
      if (k != "timestep") EXPECT_LE(jb["reports"][i]["outputs"][k].get<double>(), v.get<double>()) << k;
}

TEST(EstimateCommand, SyntheticSlopes) {
  EstimateConfig c;
  c.synthetic_m = 4096;
  std::ostringstream out, log;
  cmd_estimate(c, out, log);
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_NEAR(j["slopes"]["gate_count_no_log"].get<double>(), 5.0, 0.1);
  EXPECT_NEAR(j["slopes"]["measurements"].get<double>(), 6.0, 0.1);
  EXPECT_EQ(j["table"].size(), 8u);
}

TEST(VanVleckCommand, GridAndLimits) {
  VanVleckConfig c;
  c.overlaps = {1.0, 0.999};
  std::ostringstream out, log;
  cmd_vanvleck(c, out, log);
  const auto text = lines(out.str());
  ASSERT_EQ(text.size(), 201u);
  EXPECT_EQ(text[0], "Delta,M,P_exact,P_erf,cost");
  for (int i = 1; i <= 100; ++i) EXPECT_EQ(std::stod(split(text[i])[4]), 1.0);
  for (int i = 105; i <= 200; ++i) EXPECT_NEAR(std::stod(split(text[i])[4]), 1.0, 1e-6);
}

TEST(Seed, EnvironmentOverride) {
  ::unsetenv("LOCALITYLAB_SEED");
  EXPECT_EQ(seed_from_environment(), 42u);
  ::setenv("LOCALITYLAB_SEED", "7", 1);
  EXPECT_EQ(seed_from_environment(), 7u);
  ::unsetenv("LOCALITYLAB_SEED");
}

TEST(Cli, VanVleckOutputIsDeterministic) {
  const auto a = run_cli("vanvleck --N 100 --delta 0.9,0.99 --omega 1");
  const auto b = run_cli("vanvleck --N 100 --delta 0.9,0.99 --omega 1");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(lines(a.out).size(), 201u);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const fs::path cfg = fs::temp_directory_path() / "localitylab_test.toml";
  {
    std::ofstream f(cfg);
    f << "[vanvleck]\nN = 5\ndelta = \"0.5\"\n";
  }
  EXPECT_EQ(lines(run_cli("--config " + cfg.string() + " vanvleck").out).size(), 6u);
  EXPECT_EQ(lines(run_cli("--config " + cfg.string() + " vanvleck --N 7").out).size(), 8u);
}

TEST(Cli, TruncateValidateExitCode) {
  const auto r = run_cli("truncate-validate --chain-atoms 2 --epsilon 1e-3");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(lines(r.out).size(), 8u);
}

TEST(Cli, OperationalErrorExitCode) {
  EXPECT_EQ(run_cli("truncate-validate --molecule /nonexistent.xyz").status, 1);
  EXPECT_NE(run_cli("no-such-command").status, 0);
}

TEST(Cli, EstimateSeedFromEnvironment) {
  const auto a = run_cli("estimate --epsilon 1e-2", "LOCALITYLAB_SEED=5");
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["empirical"]["seed"].get<int>(), 5);
}

TEST(Cli, FcidumpExportImport) {
  const fs::path path = fs::temp_directory_path() / "localitylab_h2.fcidump";
  ASSERT_EQ(run_cli("fcidump export " + path.string()).status, 0);
  const auto r = run_cli("fcidump import " + path.string());
  ASSERT_EQ(r.status, 0);
  const auto row = split(lines(r.out).at(1));
  EXPECT_NEAR(std::stod(row.back()), oracle::kH2Fci, 1e-6);
}
