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


// Command-line front end. Each subcommand is exposed as a function taking
// parsed options and two streams so it can be driven in-process by tests.

#ifndef DATARACE_TOOLS_CLI_H_
#define DATARACE_TOOLS_CLI_H_

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "datarace/analysis.h"
#include "datarace/game_core.h"
#include "datarace/market_model.h"

namespace datarace::cli {

enum ExitCode : int {
  kExitSuccess = 0,
  kExitValidationFailure = 1,
  kExitUsageError = 2,
};

enum class Format { kJson, kCsv };

struct AnalyzeOptions {
  GameSpec spec;
  Format format = Format::kJson;
};

struct SweepOptions {
  GameSpec spec;
  SweepParam param = SweepParam::kPrice;
  double from = 0.0;
  double to = 1.0;
  int steps = 50;
  Format format = Format::kCsv;
};

struct SimulateOptions {
  MarkovConsumerModel model;
  std::int64_t steps = 1'000'000;
  std::uint64_t seed = 0;
  Format format = Format::kJson;
};

struct VerifyOptions {
  GameSpec spec;
  int grid = 1000;
  // Extra regime-targeted random specs run through the equilibrium checks.
  // A seed is required when trials > 0.
  std::int64_t trials = 0;
  std::optional<std::uint64_t> seed;
  Format format = Format::kJson;
};

struct EstimateRateOptions {
  double k = 2.0;
  std::vector<std::int64_t> m = {100, 1000, 10000, 100000};
  std::int64_t trials = 200;
  std::uint64_t seed = 0;
  Format format = Format::kCsv;
};

int RunAnalyze(const AnalyzeOptions& options, std::ostream& out,
               std::ostream& err);
int RunSweep(const SweepOptions& options, std::ostream& out, std::ostream& err);
int RunSimulate(const SimulateOptions& options, std::ostream& out,
                std::ostream& err);
int RunVerify(const VerifyOptions& options, std::ostream& out,
              std::ostream& err);
int RunEstimateRate(const EstimateRateOptions& options, std::ostream& out,
                    std::ostream& err);

// Parses argv (argv[0] is the program name) and dispatches. Data goes to
// `out` only when the command succeeds or reports a validation failure;
// diagnostics go to `err`.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

// Floats are serialized with 12 significant digits in the "C" locale.
std::string FormatNumber(double value);

// Splits one CSV record, honouring double-quoted fields.
std::vector<std::string> SplitCsvLine(const std::string& line);

// Parse-back of the CSV tables emitted above. Each throws
// std::invalid_argument on a malformed table.
struct SimulateRecord {
  double err1 = 0.0;
  double err2 = 0.0;
  int a = 1;
  std::int64_t steps = 0;
  std::uint64_t seed = 0;
  EmpiricalShares empirical;
  StationaryShares analytic;
  double abs_deviation = 0.0;
};

struct RateRow {
  std::int64_t m = 0;
  double mean = 0.0;
  double std_error = 0.0;
  std::optional<double> slope;
  double expected_slope = 0.0;
};

std::vector<SweepRow> ParseSweepCsv(std::istream& in);
SimulateRecord ParseSimulateCsv(std::istream& in);
std::vector<RateRow> ParseEstimateRateCsv(std::istream& in);
// `key,value` tables (analyze, verify). Values are kept as text.
std::map<std::string, std::string> ParseKeyValueCsv(std::istream& in);

}  // namespace datarace::cli

#endif  // DATARACE_TOOLS_CLI_H_
