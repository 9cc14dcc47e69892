// Copyright 2026 The Datarace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cli.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"

namespace datarace::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "datarace");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code =
      Main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const std::vector<std::string> kRunning = {"--x", "100", "--y", "50",
                                           "--n", "50",  "--beta", "1"};

std::vector<std::string> With(std::vector<std::string> head,
                              const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

TEST(CliTest, AnalyzeReportsMixedPoint) {
  const Result r = Invoke(With({"analyze", "--p", "0.2"}, kRunning));
  ASSERT_EQ(r.code, kExitSuccess) << r.err;
  EXPECT_NE(r.out.find("\"regime\": \"TwoPureAndMixed\""), std::string::npos);
  EXPECT_NE(r.out.find("\"q1\": 0.571428571429"), std::string::npos);
  EXPECT_NE(r.out.find("\"q2\": 0.823529411765"), std::string::npos);
}

TEST(CliTest, AnalyzeSymmetricAndNeitherBuy) {
  Result r = Invoke({"analyze", "--x", "100", "--y", "100", "--n", "50", "--p",
                     "0.2", "--format", "csv"});
  ASSERT_EQ(r.code, kExitSuccess);
  std::istringstream in(r.out);
  auto kv = ParseKeyValueCsv(in);
  EXPECT_EQ(kv.at("deltas.C"), kv.at("deltas.D"));
  EXPECT_EQ(kv.at("deltas.C_equals_D"), "true");

  r = Invoke(With({"analyze", "--p", "0.3", "--format", "csv"}, kRunning));
  std::istringstream in2(r.out);
  kv = ParseKeyValueCsv(in2);
  EXPECT_EQ(kv.at("pure_equilibria[0]"), "(NB,NB)");
  EXPECT_EQ(kv.count("pure_equilibria[1]"), 0u);
  EXPECT_EQ(kv.at("mixed_equilibrium"), "");
}

TEST(CliTest, InvalidFlagsWriteNothingToStdout) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"analyze", "--x", "-1"},
           {"analyze", "--beta", "0"},
           {"analyze", "--format", "xml"},
           {"analyze", "--nope", "1"},
           {"sweep", "--from", "0.3", "--to", "0.1"},
           {"sweep", "--from", "0.1"},
           {"simulate", "--err1", "0.1"},
           {"simulate", "--err1", "1.5", "--seed", "1"},
           {"estimate-rate", "--k", "1", "--seed", "1"},
           {"estimate-rate", "--m", "100,10", "--seed", "1"},
           {"verify", "--trials", "5"},
           {}}) {
    const Result r = Invoke(args);
    EXPECT_EQ(r.code, kExitUsageError) << r.err;
    EXPECT_TRUE(r.out.empty());
    EXPECT_FALSE(r.err.empty());
  }
}

TEST(CliTest, VerifyPassesAndFlagsBoundary) {
  Result r = Invoke(With({"verify", "--p", "0.2"}, kRunning));
  EXPECT_EQ(r.code, kExitSuccess) << r.err;
  EXPECT_NE(r.out.find("\"passed\": true"), std::string::npos);

  r = Invoke(With({"verify", "--p", "0.25", "--format", "csv"}, kRunning));
  EXPECT_EQ(r.code, kExitSuccess) << r.err;
  std::istringstream in(r.out);
  const auto kv = ParseKeyValueCsv(in);
  EXPECT_EQ(kv.at("regime"), "Boundary(AtA)");
  EXPECT_EQ(kv.at("degenerate"), "true");
}

TEST(CliTest, VerifySymmetricDriftIsExactlyZero) {
  // C = D = 0.1, A = 0.2: p = 0.15 is in the mixed band.
  const Result r = Invoke({"verify", "--x", "100", "--y", "100", "--n", "50",
                           "--p", "0.15", "--format", "csv"});
  EXPECT_EQ(r.code, kExitSuccess) << r.err;
  std::istringstream in(r.out);
  const auto kv = ParseKeyValueCsv(in);
  for (int i = 0;; ++i) {
    const std::string key = "checks[" + std::to_string(i) + "]";
    ASSERT_TRUE(kv.count(key + ".name"));
    if (kv.at(key + ".name") != "analysis.drift_sign") continue;
    EXPECT_EQ(kv.at(key + ".status"), "PASS");
    EXPECT_EQ(kv.at(key + ".deviation"), "0");
    break;
  }
}

TEST(CliTest, VerifyFailureExitsOne) {
  // Square-root learning with a large size gap and weak competition breaks
  // the strict welfare ordering; verify must say so.
  const Result r = Invoke({"verify", "--x", "1000", "--y", "10", "--n", "100",
                           "--p", "0.1", "--beta", "0.25"});
  EXPECT_EQ(r.code, kExitValidationFailure);
  EXPECT_NE(r.err.find("analysis.welfare_ordering"), std::string::npos);
  EXPECT_NE(r.out.find("\"passed\": false"), std::string::npos);
}

TEST(CliTest, SweepCsvRoundTrip) {
  const Result r = Invoke(With(
      {"sweep", "--param", "price", "--from", "0.05", "--to", "0.35",
       "--steps", "61"},
      kRunning));
  ASSERT_EQ(r.code, kExitSuccess) << r.err;
  std::istringstream in(r.out);
  const std::vector<SweepRow> rows = ParseSweepCsv(in);
  ASSERT_EQ(rows.size(), 61u);
  const auto direct = MonotonicitySweep(
      {.x = 100, .y = 50, .n = 50, .p = 0, .beta = 1}, SweepParam::kPrice,
      0.05, 0.35, 61);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].regime, direct[i].regime);
    EXPECT_NEAR(rows[i].param_value, direct[i].param_value, 1e-12);
    EXPECT_NEAR(rows[i].q1, direct[i].q1, 1e-12);
    EXPECT_NEAR(rows[i].q2, direct[i].q2, 1e-12);
    EXPECT_NEAR(rows[i].u1, direct[i].u1, 1e-12);
    EXPECT_NEAR(rows[i].u2, direct[i].u2, 1e-12);
    EXPECT_NEAR(rows[i].drift, direct[i].drift, 1e-12);
  }
  EXPECT_EQ(rows.front().regime, Regime::kBothBuyUnique);
  EXPECT_EQ(rows.back().regime, Regime::kNeitherBuyUnique);
}

TEST(CliTest, SweepTwoStepsGivesTwoRows) {
  const Result r = Invoke(With(
      {"sweep", "--from", "0.1", "--to", "0.3", "--steps", "2"}, kRunning));
  std::istringstream in(r.out);
  EXPECT_EQ(ParseSweepCsv(in).size(), 2u);
}

TEST(CliTest, SimulateDeterministicAndRoundTrips) {
  const std::vector<std::string> args = {"simulate", "--err1", "0.1",
                                         "--err2", "0.2",    "--a",
                                         "1",      "--steps", "200000",
                                         "--seed", "42",     "--format",
                                         "csv"};
  const Result first = Invoke(args);
  const Result second = Invoke(args);
  ASSERT_EQ(first.code, kExitSuccess) << first.err;
  EXPECT_EQ(first.out, second.out);
  std::istringstream in(first.out);
  const SimulateRecord rec = ParseSimulateCsv(in);
  EXPECT_EQ(rec.seed, 42u);
  EXPECT_EQ(rec.steps, 200000);
  EXPECT_NEAR(rec.analytic.mu1, 2.0 / 3.0, 1e-12);
  EXPECT_LE(rec.abs_deviation, 0.01);

  const Result other = Invoke({"simulate", "--steps", "200000", "--seed", "43",
                               "--format", "csv"});
  EXPECT_NE(first.out, other.out);
}

TEST(CliTest, EstimateRateSingleMOmitsSlope) {
  const Result r = Invoke({"estimate-rate", "--k", "2", "--m", "500",
                           "--trials", "10", "--seed", "5"});
  ASSERT_EQ(r.code, kExitSuccess) << r.err;
  std::istringstream in(r.out);
  const auto rows = ParseEstimateRateCsv(in);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_FALSE(rows[0].slope.has_value());
  EXPECT_DOUBLE_EQ(rows[0].expected_slope, -0.5);
}

TEST(CliTest, ConfigFileDefaultsYieldToFlags) {
  const std::string path = ::testing::TempDir() + "datarace_cli_test.ini";
  {
    std::ofstream f(path);
    f << "x=100\ny=50\nn=50\np=0.3\n";
  }
  Result r = Invoke({"analyze", "--config", path});
  EXPECT_NE(r.out.find("\"regime\": \"NeitherBuyUnique\""), std::string::npos);
  r = Invoke({"analyze", "--config", path, "--p", "0.2"});
  EXPECT_NE(r.out.find("\"regime\": \"TwoPureAndMixed\""), std::string::npos);
  std::remove(path.c_str());
}

TEST(CliTest, CsvFieldsWithCommasAreQuoted) {
  EXPECT_EQ(SplitCsvLine("\"a,b\",c,\"d\"\"e\""),
            (std::vector<std::string>{"a,b", "c", "d\"e"}));
  EXPECT_EQ(FormatNumber(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(FormatNumber(1e-20), "1e-20");
}

}  // namespace
}  // namespace datarace::cli
