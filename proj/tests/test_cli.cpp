// End-to-end tests of the command-line binary. The binary path arrives via
// the HARDYLAB_CLI environment variable; commands run through the shell and
// their JSON/CSV output is parsed back and compared against the library.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"

#include "hardylab/hardylab.hpp"

namespace {

using nlohmann::json;
using namespace hardylab;

constexpr double kGoldenThetaDeg = 76.3454152540245;

std::string cli_path() {
  const char* path = std::getenv("HARDYLAB_CLI");
  EXPECT_NE(path, nullptr) << "HARDYLAB_CLI must point at the binary";
  return path == nullptr ? "" : path;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs `<cli> <args>` through the shell. `merge_stderr` folds diagnostics
// into the captured stream; otherwise they are discarded.
RunResult run_cli(const std::string& args, bool merge_stderr = false,
                  const std::string& env_prefix = "") {
  RunResult result;
  const std::string cmd = env_prefix + "\"" + cli_path() + "\" " + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    ADD_FAILURE() << "popen failed for: " << cmd;
    return result;
  }
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
    result.out.append(buf, got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::optional<json> run_json(const std::string& args) {
  const RunResult r = run_cli(args);
  EXPECT_EQ(r.exit_code, 0) << args << "\n" << r.out;
  if (r.exit_code != 0) return std::nullopt;
  json doc = json::parse(r.out, nullptr, false);
  EXPECT_FALSE(doc.is_discarded()) << "not JSON: " << r.out;
  if (doc.is_discarded()) return std::nullopt;
  EXPECT_EQ(doc.at("schema_version").get<int>(), 1);
  return doc;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::vector<std::string> fields;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) fields.push_back(cell);
    rows.push_back(std::move(fields));
  }
  return rows;
}

TEST(CliConstructTest, MatchesTheLibraryBitForBit) {
  const auto doc = run_json("construct --theta1 76.3454152540245 "
                            "--theta2 76.3454152540245");
  ASSERT_TRUE(doc.has_value());
  EXPECT_EQ(doc->at("command"), "construct");
  EXPECT_EQ(doc->at("variant"), "original");

  const MeasurementSetup setup = MeasurementSetup::from_relative(
      Angle::degrees(kGoldenThetaDeg).normalized(),
      Angle::degrees(kGoldenThetaDeg).normalized());
  const TwoQubitState expected = construct_state(setup);
  const json& c = doc->at("coefficients");
  EXPECT_EQ(c.at("c_pp").get<double>(), expected.c_pp);
  EXPECT_EQ(c.at("c_pm").get<double>(), expected.c_pm);
  EXPECT_EQ(c.at("c_mp").get<double>(), expected.c_mp);
  EXPECT_EQ(c.at("c_mm").get<double>(), expected.c_mm);

  const json& sq = doc->at("squared_coefficients");
  EXPECT_NEAR(sq.at("c_mp").get<double>(), 0.38196601125010515, 1e-12);
  EXPECT_NEAR(sq.at("c_pm").get<double>(), 0.38196601125010515, 1e-12);
  EXPECT_NEAR(sq.at("c_mm").get<double>(), 0.23606797749978969, 1e-12);
  EXPECT_NEAR(doc->at("norm_squared").get<double>(), 1.0, 1e-14);

  const json& s = doc->at("setup");
  EXPECT_DOUBLE_EQ(s.at("theta_1_deg").get<double>(),
                   setup.theta_1().normalized().deg());
  EXPECT_DOUBLE_EQ(s.at("theta_a_deg").get<double>(), 0.0);
}

TEST(CliConstructTest, AbsoluteAnglesGiveTheSameState) {
  const auto rel = run_json("construct --theta1 50 --theta2 70");
  const auto abs = run_json(
      "construct --theta-a 0 --theta-a-prime 50 --theta-b 0 "
      "--theta-b-prime 70");
  ASSERT_TRUE(rel.has_value() && abs.has_value());
  EXPECT_EQ(rel->at("coefficients"), abs->at("coefficients"));
}

TEST(CliCheckTest, GoldenAndRightAngleReportsHold) {
  const auto doc = run_json("check --theta1 90 --theta2 90");
  ASSERT_TRUE(doc.has_value());
  const json& rep = doc->at("report");
  EXPECT_TRUE(rep.at("holds").get<bool>());
  EXPECT_EQ(rep.at("variant"), "original");
  EXPECT_DOUBLE_EQ(rep.at("p1a").get<double>(), 0.0);
  EXPECT_NEAR(rep.at("p1d").get<double>(), 1.0 / 12.0, 1e-13);

  const auto flipped =
      run_json("check --theta1 90 --theta2 90 --variant FLIP-BOTH");
  ASSERT_TRUE(flipped.has_value());
  EXPECT_EQ(flipped->at("report").at("variant"), "flip-both");
  EXPECT_TRUE(flipped->at("report").at("holds").get<bool>());
}

TEST(CliProbTest, PointAndDiagonalModes) {
  const auto point = run_json("prob --theta1 60 --theta2 90");
  ASSERT_TRUE(point.has_value());
  EXPECT_EQ(point->at("mode"), "point");
  EXPECT_EQ(point->at("probability").get<double>(),
            probability_closed_form(Angle::degrees(60.0).normalized(),
                                    Angle::degrees(90.0).normalized()));

  const auto diag = run_json("prob --theta1 100");
  ASSERT_TRUE(diag.has_value());
  EXPECT_EQ(diag->at("mode"), "diagonal");
  EXPECT_EQ(diag->at("probability").get<double>(),
            probability_diagonal(Angle::degrees(100.0).normalized()));
}

TEST(CliScanTest, CsvRoundTripsEveryCell) {
  const RunResult r = run_cli("scan --resolution 11 --format csv");
  ASSERT_EQ(r.exit_code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 1u + 11u * 11u);
  ASSERT_EQ(rows[0], (std::vector<std::string>{"theta1_deg", "theta2_deg",
                                               "probability"}));
  const GridScan grid = scan(11);
  std::size_t row = 1;
  for (std::size_t i = 0; i < 11; ++i) {
    for (std::size_t j = 0; j < 11; ++j, ++row) {
      ASSERT_EQ(rows[row].size(), 3u) << "row " << row;
      EXPECT_EQ(std::strtod(rows[row][0].c_str(), nullptr),
                grid.theta_1_axis[i].deg());
      EXPECT_EQ(std::strtod(rows[row][1].c_str(), nullptr),
                grid.theta_2_axis[j].deg());
      EXPECT_EQ(std::strtod(rows[row][2].c_str(), nullptr), grid.value(i, j));
    }
  }
}

TEST(CliScanTest, JsonCarriesTheFullMatrix) {
  const auto doc = run_json("scan --resolution 7");
  ASSERT_TRUE(doc.has_value());
  EXPECT_EQ(doc->at("resolution").get<int>(), 7);
  ASSERT_EQ(doc->at("values").size(), 7u);
  const GridScan grid = scan(7);
  for (std::size_t i = 0; i < 7; ++i) {
    ASSERT_EQ(doc->at("values")[i].size(), 7u);
    for (std::size_t j = 0; j < 7; ++j) {
      EXPECT_EQ(doc->at("values")[i][j].get<double>(), grid.value(i, j));
    }
  }
}

TEST(CliSliceTest, CsvHasHeaderAndEndpoints) {
  const RunResult r = run_cli("slice --resolution 5 --format csv");
  ASSERT_EQ(r.exit_code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0],
            (std::vector<std::string>{"theta_deg", "probability"}));
  EXPECT_EQ(std::strtod(rows[1][0].c_str(), nullptr), 0.0);
  EXPECT_EQ(std::strtod(rows[5][0].c_str(), nullptr), 360.0);
  EXPECT_EQ(std::strtod(rows[3][1].c_str(), nullptr),
            probability_diagonal(Angle::degrees(180.0)));
}

TEST(CliOptimizeTest, FindsTheFourGoldenMaxima) {
  const auto doc = run_json("optimize --resolution 61");
  ASSERT_TRUE(doc.has_value());
  const json& optima = doc->at("optima");
  ASSERT_EQ(optima.size(), 4u);
  for (const json& opt : optima) {
    const double p = opt.at("p_max").get<double>();
    EXPECT_NEAR(p, golden_max_probability(), 1e-9);
    const double p_eval = probability_closed_form(
        Angle::degrees(opt.at("theta_1_deg").get<double>()),
        Angle::degrees(opt.at("theta_2_deg").get<double>()));
    EXPECT_NEAR(p, p_eval, 1e-12);
  }
  const json& check = doc->at("golden_check");
  EXPECT_LT(check.at("max_deviation").get<double>(), 1e-6);
  EXPECT_LT(check.at("tau_identity_residual").get<double>(), 1e-12);
}

TEST(CliSchmidtTest, GoldenDecompositionAndClass) {
  const auto doc = run_json("schmidt --theta1 76.3454152540245 "
                            "--theta2 76.3454152540245");
  ASSERT_TRUE(doc.has_value());
  const json& s = doc->at("schmidt");
  EXPECT_NEAR(s.at("lambda_plus").get<double>(), 0.8226483631597792, 1e-9);
  EXPECT_NEAR(s.at("lambda_minus").get<double>(), 0.1773516368402208, 1e-9);
  EXPECT_FALSE(s.at("degenerate").get<bool>());
  EXPECT_EQ(doc->at("classification").at("tag"), "partial");
  EXPECT_NEAR(doc->at("classification").at("concurrence_like").get<double>(),
              0.7639320225002103, 1e-9);
}

TEST(CliLhvTest, EnumerationAloneAndWithChain) {
  const auto bare = run_json("lhv");
  ASSERT_TRUE(bare.has_value());
  EXPECT_EQ(bare->at("strategy_count").get<int>(), 5);
  EXPECT_EQ(bare->at("strategies").size(), 5u);
  EXPECT_DOUBLE_EQ(bare->at("bound").get<double>(), 0.0);
  EXPECT_FALSE(bare->contains("chain"));

  const auto chained = run_json("lhv --theta1 90 --theta2 90");
  ASSERT_TRUE(chained.has_value());
  ASSERT_TRUE(chained->contains("chain"));
  const json& chain = chained->at("chain");
  ASSERT_EQ(chain.at("steps").size(), 4u);
  EXPECT_NEAR(chain.at("contradiction_magnitude").get<double>(), 1.0 / 12.0,
              1e-13);
  for (const json& step : chain.at("steps")) {
    EXPECT_FALSE(step.at("statement").get<std::string>().empty());
  }
}

TEST(CliSampleTest, DeterministicAndInternallyConsistent) {
  const std::string args =
      "sample --theta1 90 --theta2 90 --samples 20000 --seed 9";
  const RunResult first = run_cli(args);
  const RunResult second = run_cli(args);
  ASSERT_EQ(first.exit_code, 0);
  EXPECT_EQ(first.out, second.out);

  const json doc = json::parse(first.out);
  EXPECT_EQ(doc.at("samples").get<std::uint64_t>(), 20000u);
  EXPECT_EQ(doc.at("seed").get<std::uint64_t>(), 9u);
  ASSERT_EQ(doc.at("counts").size(), 4u);
  std::uint64_t total = 0;
  for (const json& row : doc.at("counts")) {
    ASSERT_EQ(row.size(), 4u);
    for (const json& cell : row) total += cell.get<std::uint64_t>();
  }
  EXPECT_EQ(total, 20000u);
  EXPECT_TRUE(doc.at("report").at("holds").get<bool>());
  EXPECT_FALSE(doc.at("low_confidence").get<bool>());

  const RunResult other = run_cli(
      "sample --theta1 90 --theta2 90 --samples 20000 --seed 10");
  ASSERT_EQ(other.exit_code, 0);
  EXPECT_NE(first.out, other.out);
}

TEST(CliOutputTest, WritesTheFileInsteadOfStdout) {
  const std::string path =
      (std::filesystem::temp_directory_path() /
       ("hardylab_cli_out_" + std::to_string(::getpid()) + ".json"))
          .string();
  const RunResult direct = run_cli("construct --theta1 90 --theta2 90");
  const RunResult filed =
      run_cli("construct --theta1 90 --theta2 90 --output \"" + path + "\"");
  ASSERT_EQ(filed.exit_code, 0);
  EXPECT_TRUE(filed.out.empty());
  std::ifstream in(path, std::ios::binary);
  ASSERT_TRUE(in.good());
  std::stringstream content;
  content << in.rdbuf();
  EXPECT_EQ(content.str(), direct.out);
  std::filesystem::remove(path);
}

TEST(CliExitCodeTest, UsageErrorsReturnTwo) {
  EXPECT_EQ(run_cli("", true).exit_code, 2);  // subcommand required
  EXPECT_EQ(run_cli("construct", true).exit_code, 2);  // no setup
  EXPECT_EQ(run_cli("construct --theta1 90", true).exit_code, 2);
  EXPECT_EQ(
      run_cli("construct --theta1 90 --theta2 90 --theta-a 0", true).exit_code,
      2);  // mixed angle forms
  EXPECT_EQ(
      run_cli("check --theta1 90 --theta2 90 --variant diagonal", true)
          .exit_code,
      2);  // unknown variant
  EXPECT_EQ(
      run_cli("construct --theta1 90 --theta2 90 --format csv", true)
          .exit_code,
      2);  // csv not offered here
  EXPECT_EQ(run_cli("construct --theta1 800 --theta2 90", true).exit_code,
            2);  // out of the accepted range
  EXPECT_EQ(run_cli("frobnicate", true).exit_code, 2);
}

TEST(CliExitCodeTest, DegenerateSetupsReturnThree) {
  const RunResult r = run_cli("construct --theta1 180 --theta2 90", true);
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_NE(r.out.find("degenerate setup"), std::string::npos) << r.out;
  EXPECT_EQ(run_cli("check --theta1 90 --theta2 0", true).exit_code, 3);
  EXPECT_EQ(run_cli("schmidt --theta1 360 --theta2 90", true).exit_code, 3);
}

TEST(CliExitCodeTest, BadThreadEnvironmentReturnsTwo) {
  EXPECT_EQ(run_cli("scan --resolution 5", true, "HARDY_LAB_THREADS=banana ")
                .exit_code,
            2);
  EXPECT_EQ(run_cli("scan --resolution 5", true, "HARDY_LAB_THREADS=0 ")
                .exit_code,
            2);
  EXPECT_EQ(run_cli("scan --resolution 5", true, "HARDY_LAB_THREADS=2 ")
                .exit_code,
            0);
}

TEST(CliExitCodeTest, HelpExitsZero) {
  EXPECT_EQ(run_cli("--help").exit_code, 0);
  EXPECT_EQ(run_cli("sample --help").exit_code, 0);
}

}  // namespace
