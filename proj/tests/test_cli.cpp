// Shell-level tests of the lp2num executable: exit codes, JSON output and
// sweep files.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "lp2/report.hpp"

namespace lp2 {
namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(LP2NUM_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json run_json(const std::string& args) {
  const RunResult r = run(args);
  EXPECT_EQ(r.exit_code, 0) << args;
  return nlohmann::json::parse(r.out);
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("lp2num_test_" + std::to_string(::getpid()) + "_" + name);
}

TEST(CliMp, ObstructionExponent) {
  const auto j = run_json("mp 1.16");
  EXPECT_NEAR(j.at("t0").get<double>(), 0.073924, 1e-6);
  EXPECT_NEAR(j.at("mp").get<double>(), 0.558064, 1e-6);
  EXPECT_NEAR(j.at("q").get<double>(), 1.16 / 0.16, 1e-12);
  EXPECT_TRUE(j.contains("config"));
}

TEST(CliMp, DegenerateAtTwoAndConjugatePair) {
  const auto two = run_json("mp 2");
  EXPECT_TRUE(two.at("degenerate").get<bool>());
  EXPECT_EQ(two.at("mp").get<double>(), 0.0);
  EXPECT_NEAR(run_json("mp 3").at("mp").get<double>(), run_json("mp 1.5").at("mp").get<double>(), 1e-12);
}

TEST(CliMp, InvalidExponentExitsTwo) {
  EXPECT_EQ(run("mp 1").exit_code, 2);
  EXPECT_EQ(run("mp 0.5").exit_code, 2);
  EXPECT_EQ(run("mp abc").exit_code, 2);
  EXPECT_EQ(run("mp").exit_code, 2);
  EXPECT_EQ(run("mp 3 --tol 0").exit_code, 2);
}

TEST(CliRadius, Examples) {
  EXPECT_NEAR(run_json("radius 3 1 0 0 1").at("value").get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(run_json("radius 1.16 0 1 -1 0").at("value").get<double>(), 0.558064, 1e-6);
  EXPECT_EQ(run_json("radius 2 0 1 -1 0").at("value").get<double>(), 0.0);
  const auto j = run_json("radius 4 -2.5 0 0 1.5");
  EXPECT_NEAR(j.at("value").get<double>(), 2.5, 1e-12);
  EXPECT_EQ(j.at("branch").get<std::string>(), "first");
  EXPECT_EQ(j.at("matrix"), nlohmann::json({-2.5, 0.0, 0.0, 1.5}));
}

TEST(CliRadius, BadArgumentsExitTwo) {
  EXPECT_EQ(run("radius 3 1 0 0").exit_code, 2);
  EXPECT_EQ(run("radius 0.9 1 0 0 1").exit_code, 2);
  EXPECT_EQ(run("radius 3 1 x 0 1").exit_code, 2);
}

TEST(CliOpNorm, Examples) {
  const auto j = run_json("opnorm 1.16 0.0487295 13.639181 -15 -1");
  EXPECT_DOUBLE_EQ(j.at("norm_1").get<double>(), 15.0487295);
  EXPECT_DOUBLE_EQ(j.at("norm_inf").get<double>(), 16.0);
  EXPECT_LE(j.at("norm").get<double>(), j.at("riesz_thorin_bound").get<double>() + 1e-10);
  EXPECT_NEAR(run_json("opnorm 5 0 1 -1 0").at("norm").get<double>(), 1.0, 1e-12);
  EXPECT_EQ(run("opnorm 1 1 0 0 1").exit_code, 2);
}

TEST(CliIndex, Examples) {
  const auto three = run_json("index 3 --starts 16");
  EXPECT_LE(std::abs(three.at("gap").get<double>()), 1e-3);
  EXPECT_EQ(three.at("starts").get<int>(), 16);
  EXPECT_LE(run_json("index 2 --starts 16").at("value").get<double>(), 1e-6);
  // The estimate never exceeds M_p, the value attained by the rotation.
  const auto low = run_json("index 1.16 --starts 16");
  EXPECT_LE(low.at("value").get<double>(), low.at("mp").get<double>() + 1e-6);
  EXPECT_EQ(run("index 1 --starts 4").exit_code, 2);
  EXPECT_EQ(run("index 3 --starts 0").exit_code, 2);
}

TEST(CliIndex, DeterministicGivenSeed) {
  const RunResult a = run("index 1.4 --starts 8 --seed 9");
  const RunResult b = run("index 1.4 --starts 8 --seed 9");
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(CliCounterexample, DefaultIsBelowAndDeterministic) {
  const RunResult a = run("counterexample");
  const RunResult b = run("counterexample --p 1.16");
  ASSERT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_TRUE(j.at("is_below").get<bool>());
  EXPECT_NEAR(j.at("ratio").get<double>(), 0.557895, 1e-6);
}

TEST(CliCounterexample, Examples) {
  EXPECT_FALSE(run_json("counterexample --p 1.3").at("is_below").get<bool>());
  EXPECT_EQ(run("counterexample --p 2").exit_code, 2);
  EXPECT_EQ(run("counterexample --p 1").exit_code, 2);
  EXPECT_EQ(run("counterexample --p 2.5").exit_code, 2);
}

TEST(CliVerify, RangeOutsideHypothesisExitsTwo) {
  EXPECT_EQ(run("verify --pmin 1.05").exit_code, 2);
  EXPECT_EQ(run("verify --pmax 1.6").exit_code, 2);
  EXPECT_EQ(run("verify --pmin 1.4 --pmax 1.3").exit_code, 2);
  EXPECT_EQ(run("verify --n 0").exit_code, 2);
}

TEST(CliVerify, FullBatteryPasses) {
  const RunResult r = run("verify --pmin 1.2 --pmax 1.5 --n 50");
  EXPECT_EQ(r.exit_code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.at("all_pass").get<bool>());
  EXPECT_EQ(j.at("results").size(), 50u);
  EXPECT_GT(j.at("min_lemma_margin").get<double>(), 0.0);
}

TEST(CliVerify, DefaultsPass) { EXPECT_EQ(run("verify").exit_code, 0); }

TEST(CliSweep, CsvRoundTripReproducesRows) {
  const auto path = temp_file("two.csv");
  const auto summary = run_json("sweep --pmin 1.3 --pmax 2.5 --n 2 --starts 4 --out " + path.string());
  EXPECT_EQ(summary.at("rows").get<int>(), 2);

  std::ifstream in(path);
  const std::vector<SweepRow> rows = read_csv(in);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].p, 1.3);
  EXPECT_EQ(rows[1].p, 2.5);

  IndexSearchOptions opt;
  opt.starts = 4;
  for (const SweepRow& row : rows) {
    SweepRow again = compute_sweep_row(Exponent(row.p), opt);
    again.runtime_ms = row.runtime_ms;
    EXPECT_EQ(format_g17(again.q), format_g17(row.q));
    EXPECT_EQ(again.t0, row.t0);
    EXPECT_EQ(again.mp, row.mp);
    EXPECT_EQ(again.lower_bound, row.lower_bound);
    EXPECT_EQ(again.index_estimate, row.index_estimate);
    EXPECT_EQ(again.gap, row.gap);
  }
  std::filesystem::remove(path);
}

TEST(CliSweep, JsonFormat) {
  const auto path = temp_file("two.json");
  run_json("sweep --pmin 1.5 --pmax 3 --n 2 --starts 4 --format json --out " + path.string());
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  ASSERT_EQ(j.at("rows").size(), 2u);
  EXPECT_NEAR(j["rows"][0]["mp"].get<double>(), j["rows"][1]["mp"].get<double>(), 1e-12);
  std::filesystem::remove(path);
}

TEST(CliSweep, BadArguments) {
  EXPECT_EQ(run("sweep --n 2 --out /nonexistent-dir/x.csv").exit_code, 2);
  EXPECT_EQ(run("sweep --n 1 --out /tmp/x.csv").exit_code, 2);
  EXPECT_EQ(run("sweep --pmin 1 --n 2 --out /tmp/x.csv").exit_code, 2);
  EXPECT_EQ(run("sweep --n 2").exit_code, 2);
  EXPECT_EQ(run("sweep --n 2 --format xml --out /tmp/x.csv").exit_code, 2);
}

TEST(CliSweep, IndexMatchesMpAcrossRange) {
  const auto path = temp_file("range.csv");
  const auto summary = run_json("sweep --pmin 1.2 --pmax 6 --n 25 --out " + path.string());
  EXPECT_LE(summary.at("max_abs_gap").get<double>(), 1e-3);
  std::ifstream in(path);
  const auto rows = read_csv(in);
  ASSERT_EQ(rows.size(), 25u);
  for (const auto& r : rows) {
    EXPECT_LE(r.lower_bound - 1e-6, r.index_estimate) << r.p;
    EXPECT_LE(r.index_estimate, r.mp + 1e-6) << r.p;
  }
  std::filesystem::remove(path);
}

TEST(Cli, HelpAndMissingSubcommand) {
  EXPECT_EQ(run("--help").exit_code, 0);
  EXPECT_EQ(run("sweep --help").exit_code, 0);
  EXPECT_EQ(run("").exit_code, 2);
  EXPECT_EQ(run("frobnicate").exit_code, 2);
}

}  // namespace
}  // namespace lp2
