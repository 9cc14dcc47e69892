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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "CLI11.hpp"
#include "datarace/equilibrium.h"
#include "datarace/errors.h"
#include "json.hpp"

namespace datarace::cli {
namespace {

using Json = nlohmann::ordered_json;

// --------------------------------------------------------------------------
// Serialization helpers.

Json Num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::strtod(FormatNumber(v).c_str(), nullptr);
}

Json OptNum(const std::optional<double>& v) {
  return v ? Num(*v) : Json(nullptr);
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

void WriteCsvRow(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << CsvField(fields[i]);
  }
  out << '\n';
}

std::string LeafText(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  return FormatNumber(v.get<double>());
}

void Flatten(const Json& v, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
  if (v.is_object()) {
    for (const auto& [key, child] : v.items()) {
      Flatten(child, prefix.empty() ? key : prefix + "." + key, rows);
    }
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      Flatten(v[i], prefix + "[" + std::to_string(i) + "]", rows);
    }
  } else {
    rows.emplace_back(prefix, LeafText(v));
  }
}

// JSON documents become `key,value` tables in CSV mode.
void Emit(const Json& doc, Format format, std::ostream& out) {
  if (format == Format::kJson) {
    out << doc.dump(2) << '\n';
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  Flatten(doc, "", rows);
  WriteCsvRow(out, {"key", "value"});
  for (const auto& [key, value] : rows) WriteCsvRow(out, {key, value});
}

Json SpecJson(const GameSpec& s) {
  return Json{{"x", Num(s.x)},       {"y", Num(s.y)},
              {"n", Num(s.n)},       {"p", Num(s.p)},
              {"beta", Num(s.beta)}, {"r", Num(s.r)}};
}

Json ProfileMap(const std::array<double, 4>& values) {
  Json j = Json::object();
  for (StrategyProfile s : kAllProfiles) {
    j[ProfileName(s)] = Num(values[ProfileIndex(s)]);
  }
  return j;
}

Json ProfileList(const std::vector<StrategyProfile>& profiles) {
  Json j = Json::array();
  for (StrategyProfile s : profiles) j.push_back(ProfileName(s));
  return j;
}

Json OrderingJson(const std::array<ProfileValue, 4>& ordering) {
  Json j = Json::array();
  for (const ProfileValue& pv : ordering) {
    j.push_back({{"profile", ProfileName(pv.profile)}, {"value", Num(pv.value)}});
  }
  return j;
}

// Runs `body` against a private buffer. Usage errors leave `out` untouched.
int Guarded(std::ostream& out, std::ostream& err,
            const std::function<int(std::ostream&)>& body) {
  std::ostringstream buffer;
  int code = kExitSuccess;
  try {
    code = body(buffer);
  } catch (const DomainError& e) {
    err << "datarace: invalid argument: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const PreconditionError& e) {
    err << "datarace: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const std::invalid_argument& e) {
    err << "datarace: " << e.what() << '\n';
    return kExitUsageError;
  }
  if (code != kExitUsageError) out << buffer.str();
  return code;
}

// --------------------------------------------------------------------------
// Verification.

enum class Status { kPass, kFail, kSkip };

const char* StatusName(Status s) {
  switch (s) {
    case Status::kPass:
      return "PASS";
    case Status::kFail:
      return "FAIL";
    case Status::kSkip:
      return "SKIP";
  }
  return "?";
}

struct Check {
  std::string name;
  Status status = Status::kSkip;
  double deviation = 0.0;
  double tolerance = 0.0;
};

class CheckList {
 public:
  // Passes iff deviation <= tolerance.
  void Bound(const std::string& name, double deviation, double tolerance) {
    checks_.push_back({name,
                       deviation <= tolerance ? Status::kPass : Status::kFail,
                       deviation, tolerance});
  }
  void Holds(const std::string& name, bool ok, double deviation = 0.0) {
    checks_.push_back(
        {name, ok ? Status::kPass : Status::kFail, deviation, 0.0});
  }
  void Skip(const std::string& name) {
    checks_.push_back({name, Status::kSkip, 0.0, 0.0});
  }
  const std::vector<Check>& checks() const { return checks_; }

 private:
  std::vector<Check> checks_;
};

double NextDown(double v, int ulps) {
  for (int i = 0; i < ulps; ++i) v = std::nextafter(v, 0.0);
  return v;
}

void CheckDeltas(const GameSpec& spec, const DeltaQuantities& d,
                 CheckList& list) {
  list.Bound("deltas.sum_identity", std::abs(d.a - (d.c + d.d)) / d.a, 1e-9);
  list.Holds("deltas.positive", d.c > 0 && d.d > 0, d.min_cd());
  // A - max{C,D} = min{C,D} can fall below one ulp of A.
  list.Holds("deltas.a_exceeds_max_cd", d.a >= NextDown(d.max_cd(), 2),
             d.a - d.max_cd());
  if (spec.x == spec.y) {
    list.Skip("deltas.larger_firm_gains_less");
  } else {
    list.Holds("deltas.larger_firm_gains_less",
               spec.x > spec.y ? d.c < d.d : d.d < d.c, d.c - d.d);
  }
}

void CheckEquilibria(const GameSpec& spec, const EquilibriumReport& eq,
                     int grid, CheckList& list) {
  bool subset = true;
  for (StrategyProfile s : eq.pure) {
    subset = subset && (s == kBuyBuy || s == kNotBuyNotBuy);
  }
  list.Holds("equilibria.pure_subset", subset);

  if (eq.degenerate) {
    // Thresholds are weakly specified; strict-regime assertions are off.
    for (const char* name :
         {"equilibria.pure_matches_oracle", "equilibria.mixed_matches_oracle",
          "equilibria.mixed_interior", "equilibria.indifference",
          "equilibria.smaller_firm_mixes_more"}) {
      list.Skip(name);
    }
    return;
  }
  const PayoffMatrix matrix = ComputePayoffMatrix(spec);
  const BruteForceReport bf = BruteForceEquilibria(matrix, grid);
  list.Holds("equilibria.pure_matches_oracle", bf.pure == eq.pure);
  if (!eq.mixed && !bf.mixed) {
    list.Skip("equilibria.mixed_matches_oracle");
  } else if (eq.mixed.has_value() != bf.mixed.has_value()) {
    list.Holds("equilibria.mixed_matches_oracle", false, INFINITY);
  } else {
    list.Bound("equilibria.mixed_matches_oracle",
               std::max(std::abs(eq.mixed->q1 - bf.mixed->q1),
                        std::abs(eq.mixed->q2 - bf.mixed->q2)),
               1e-6);
  }
  if (!eq.mixed) {
    list.Skip("equilibria.mixed_interior");
    list.Skip("equilibria.indifference");
    list.Skip("equilibria.smaller_firm_mixes_more");
    return;
  }
  const double q1 = eq.mixed->q1;
  const double q2 = eq.mixed->q2;
  list.Holds("equilibria.mixed_interior", q1 > 0 && q1 < 1 && q2 > 0 && q2 < 1);
  list.Bound("equilibria.indifference",
             std::max(std::abs(BuyAdvantage(matrix, 1, q2)),
                      std::abs(BuyAdvantage(matrix, 2, q1))),
             1e-9);
  if (spec.x == spec.y) {
    list.Skip("equilibria.smaller_firm_mixes_more");
  } else {
    list.Holds("equilibria.smaller_firm_mixes_more",
               spec.x > spec.y ? q1 < q2 : q2 < q1, q1 - q2);
  }
}

void CheckAnalysis(const GameSpec& spec, const DeltaQuantities& d,
                   const EquilibriumReport& eq, CheckList& list) {
  const bool mixed = eq.regime == Regime::kTwoPureAndMixed && eq.mixed;
  if (mixed) {
    list.Holds("analysis.trade_war_ordering",
               MatchesTradeWarOrdering(ComputeUtilityOrdering(spec)));
    const DriftReport drift = ComputeShareDrift(spec);
    const double closed = drift.mixed_expected.value_or(NAN);
    const double weighted = ExpectedDrift(d, eq.mixed->q1, eq.mixed->q2);
    list.Bound("analysis.drift_forms_agree", std::abs(closed - weighted), 1e-9);
    if (spec.x == spec.y) {
      list.Bound("analysis.drift_sign", std::abs(closed), 0.0);
    } else {
      list.Holds("analysis.drift_sign",
                 spec.x > spec.y ? closed <= 0 : closed >= 0, closed);
    }
  } else {
    list.Skip("analysis.trade_war_ordering");
    list.Skip("analysis.drift_forms_agree");
    list.Skip("analysis.drift_sign");
  }

  const WelfareReport w = ComputeWelfareOrdering(spec);
  list.Bound("analysis.welfare_tie_break",
             std::abs(w.at(kBuyBuy) -
                      0.5 * (w.at(kBuyNotBuy) + w.at(kNotBuyBuy))),
             1e-12);
  bool in_range = true;
  for (double c : w.cons) in_range = in_range && c > 0 && c < 1;
  list.Holds("analysis.welfare_range", in_range);
  // The strict ordering is claimed for x > y with square-root learning only.
  if (spec.x > spec.y && spec.r == 0.5) {
    list.Holds("analysis.welfare_ordering", w.strict_expected_order);
  } else {
    list.Skip("analysis.welfare_ordering");
  }
}

std::vector<Check> RunChecks(const GameSpec& spec, int grid,
                             bool include_welfare) {
  CheckList list;
  const DeltaQuantities d = ComputeDeltas(spec);
  const EquilibriumReport eq = SolveEquilibria(spec);
  CheckDeltas(spec, d, list);
  CheckEquilibria(spec, eq, grid, list);
  if (include_welfare) {
    CheckAnalysis(spec, d, eq, list);
  }
  return list.checks();
}

// Fixed bits-to-double mapping so the sampled specs do not depend on the
// standard library's distribution implementations.
double Uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

double LogUniform(std::mt19937_64& gen, double lo, double hi) {
  return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * Uniform(gen));
}

// Regime-targeted spec with p kept 1e-7 clear of both thresholds.
GameSpec SampleSpec(std::mt19937_64& gen, Regime target, double r) {
  constexpr double kMargin = 1e-7;
  while (true) {
    GameSpec s{.x = LogUniform(gen, 1, 1e6),
               .y = LogUniform(gen, 1, 1e6),
               .n = LogUniform(gen, 1e-3, 1e6),
               .p = 0.0,
               .beta = 8.0 - 8.0 * Uniform(gen),
               .r = r};
    const DeltaQuantities d = ComputeDeltas(s);
    switch (target) {
      case Regime::kBothBuyUnique:
        if (d.max_cd() < 100 * kMargin) continue;
        s.p = -0.25 + (d.max_cd() - kMargin + 0.25) * Uniform(gen);
        return s;
      case Regime::kTwoPureAndMixed: {
        const double width = d.a - d.max_cd();
        if (width < 100 * kMargin) continue;
        s.p = d.max_cd() + kMargin + (width - 2 * kMargin) * Uniform(gen);
        return s;
      }
      default:
        s.p = d.a + kMargin + (1.25 - d.a - kMargin) * Uniform(gen);
        return s;
    }
  }
}

double LeastSquaresSlope(const std::vector<double>& xs,
                         const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

// --------------------------------------------------------------------------
// CSV parse-back.

std::vector<std::vector<std::string>> ReadTable(
    std::istream& in, const std::vector<std::string>& header) {
  std::string line;
  if (!std::getline(in, line) || SplitCsvLine(line) != header) {
    throw std::invalid_argument("unexpected CSV header");
  }
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields = SplitCsvLine(line);
    if (fields.size() != header.size()) {
      throw std::invalid_argument("CSV row has wrong arity: " + line);
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

double ParseDouble(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad number: " + s);
  return v;
}

std::int64_t ParseInt(const std::string& s) {
  std::size_t used = 0;
  const long long v = std::stoll(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad integer: " + s);
  return v;
}

const std::vector<std::string> kSweepHeader = {
    "param_value", "regime",    "q1",         "q2",
    "u1_mixed",    "u2_mixed",  "drift_mixed"};
const std::vector<std::string> kSimulateHeader = {
    "err1",         "err2",           "a",
    "steps",        "seed",           "empirical_share1",
    "empirical_share2", "analytic_mu1", "analytic_mu2",
    "abs_deviation"};
const std::vector<std::string> kRateHeader = {"m", "mean", "std_error",
                                              "slope", "expected_slope"};

}  // namespace

std::string FormatNumber(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

int RunAnalyze(const AnalyzeOptions& options, std::ostream& out,
               std::ostream& err) {
  return Guarded(out, err, [&](std::ostream& buf) {
    const GameSpec& spec = options.spec;
    ValidateSpec(spec);
    const PayoffMatrix matrix = ComputePayoffMatrix(spec);
    const DeltaQuantities d = ComputeDeltas(spec);
    const EquilibriumReport eq = SolveEquilibria(spec);
    const DeviationGains gains = ComputeDeviationGains(spec);
    const DriftReport drift = ComputeShareDrift(spec);
    const WelfareReport welfare = ComputeWelfareOrdering(spec);

    Json doc;
    doc["spec"] = SpecJson(spec);
    doc["deltas"] = {{"A", Num(d.a)},
                     {"C", Num(d.c)},
                     {"D", Num(d.d)},
                     {"C_equals_D", d.c == d.d}};
    Json payoffs = Json::object();
    for (StrategyProfile s : kAllProfiles) {
      payoffs[ProfileName(s)] = {{"u1", Num(matrix.u1(s))},
                                 {"u2", Num(matrix.u2(s))}};
    }
    doc["payoffs"] = payoffs;
    doc["regime"] = RegimeName(eq.regime);
    doc["degenerate"] = eq.degenerate;
    doc["pure_equilibria"] = ProfileList(eq.pure);
    doc["mixed_equilibrium"] =
        eq.mixed ? Json{{"q1", Num(eq.mixed->q1)}, {"q2", Num(eq.mixed->q2)}}
                 : Json(nullptr);
    doc["deviation_gains"] = {{"firm1_vs_buy", Num(gains.firm1_vs_buy)},
                              {"firm1_vs_not_buy", Num(gains.firm1_vs_not_buy)},
                              {"firm2_vs_buy", Num(gains.firm2_vs_buy)},
                              {"firm2_vs_not_buy", Num(gains.firm2_vs_not_buy)}};
    if (eq.regime == Regime::kTwoPureAndMixed) {
      const UtilityOrdering ordering = ComputeUtilityOrdering(spec);
      doc["utility_ordering"] = {
          {"firm1", OrderingJson(ordering.firm1)},
          {"firm2", OrderingJson(ordering.firm2)},
          {"matches_trade_war", MatchesTradeWarOrdering(ordering)}};
    } else {
      doc["utility_ordering"] = nullptr;
    }
    doc["drift"] = {{"per_profile", ProfileMap(drift.per_profile)},
                    {"mixed_expected", OptNum(drift.mixed_expected)}};
    doc["welfare"] = {
        {"cons", ProfileMap(welfare.cons)},
        {"ordering",
         ProfileList({welfare.ordering.begin(), welfare.ordering.end()})},
        {"hypothesis_holds", welfare.hypothesis_holds},
        {"strict_expected_order", welfare.strict_expected_order},
        {"mixed", eq.mixed ? Num(MixedWelfare(spec, eq.mixed->q1, eq.mixed->q2))
                           : Json(nullptr)}};
    if (!welfare.hypothesis_holds) {
      err << "datarace: note: welfare ordering assumes x > y\n";
    }
    Emit(doc, options.format, buf);
    return kExitSuccess;
  });
}

int RunSweep(const SweepOptions& options, std::ostream& out,
             std::ostream& err) {
  return Guarded(out, err, [&](std::ostream& buf) {
    const std::vector<SweepRow> rows = MonotonicitySweep(
        options.spec, options.param, options.from, options.to, options.steps);
    if (options.format == Format::kCsv) {
      WriteCsvRow(buf, kSweepHeader);
      for (const SweepRow& row : rows) {
        WriteCsvRow(buf, {FormatNumber(row.param_value), RegimeName(row.regime),
                          FormatNumber(row.q1), FormatNumber(row.q2),
                          FormatNumber(row.u1), FormatNumber(row.u2),
                          FormatNumber(row.drift)});
      }
      return kExitSuccess;
    }
    Json table = Json::array();
    for (const SweepRow& row : rows) {
      table.push_back({{"param_value", Num(row.param_value)},
                       {"regime", RegimeName(row.regime)},
                       {"q1", Num(row.q1)},
                       {"q2", Num(row.q2)},
                       {"u1_mixed", Num(row.u1)},
                       {"u2_mixed", Num(row.u2)},
                       {"drift_mixed", Num(row.drift)}});
    }
    Json doc;
    doc["param"] = SweepParamName(options.param);
    doc["spec"] = SpecJson(options.spec);
    doc["rows"] = table;
    buf << doc.dump(2) << '\n';
    return kExitSuccess;
  });
}

int RunSimulate(const SimulateOptions& options, std::ostream& out,
                std::ostream& err) {
  return Guarded(out, err, [&](std::ostream& buf) {
    if (options.steps < 1) throw DomainError("--steps must be positive");
    const StationaryShares analytic = StationaryDistribution(options.model);
    const EmpiricalShares empirical =
        SimulateConsumer(options.model, options.steps, options.seed);
    const double deviation = std::max(std::abs(empirical.share1 - analytic.mu1),
                                      std::abs(empirical.share2 - analytic.mu2));
    if (options.format == Format::kCsv) {
      WriteCsvRow(buf, kSimulateHeader);
      WriteCsvRow(buf, {FormatNumber(options.model.err1),
                        FormatNumber(options.model.err2),
                        std::to_string(options.model.a),
                        std::to_string(options.steps),
                        std::to_string(options.seed),
                        FormatNumber(empirical.share1),
                        FormatNumber(empirical.share2),
                        FormatNumber(analytic.mu1), FormatNumber(analytic.mu2),
                        FormatNumber(deviation)});
      return kExitSuccess;
    }
    Json doc;
    doc["model"] = {{"err1", Num(options.model.err1)},
                    {"err2", Num(options.model.err2)},
                    {"a", options.model.a}};
    doc["steps"] = options.steps;
    doc["seed"] = options.seed;
    doc["empirical"] = {{"share1", Num(empirical.share1)},
                        {"share2", Num(empirical.share2)}};
    doc["analytic"] = {{"mu1", Num(analytic.mu1)}, {"mu2", Num(analytic.mu2)}};
    doc["abs_deviation"] = Num(deviation);
    buf << doc.dump(2) << '\n';
    return kExitSuccess;
  });
}

int RunVerify(const VerifyOptions& options, std::ostream& out,
              std::ostream& err) {
  return Guarded(out, err, [&](std::ostream& buf) {
    const GameSpec& spec = options.spec;
    ValidateSpec(spec);
    if (options.grid < 100) throw DomainError("--grid must be at least 100");
    if (options.trials < 0) throw DomainError("--trials must be non-negative");
    if (options.trials > 0 && !options.seed) {
      throw std::invalid_argument("--seed is required when --trials > 0");
    }
    const EquilibriumReport eq = SolveEquilibria(spec);
    const std::vector<Check> checks = RunChecks(spec, options.grid, true);
    bool passed = true;
    Json check_list = Json::array();
    for (const Check& c : checks) {
      if (c.status == Status::kFail) {
        passed = false;
        err << "verify: FAIL " << c.name << " (deviation "
            << FormatNumber(c.deviation) << ")\n";
      }
      check_list.push_back({{"name", c.name},
                            {"status", StatusName(c.status)},
                            {"deviation", Num(c.deviation)},
                            {"tolerance", Num(c.tolerance)}});
    }
    Json doc;
    doc["spec"] = SpecJson(spec);
    doc["regime"] = RegimeName(eq.regime);
    doc["degenerate"] = eq.degenerate;
    doc["checks"] = check_list;

    if (options.trials > 0) {
      // Random specs cover the delta identities and the oracle comparison;
      // the welfare claim is only checked at the requested spec.
      std::mt19937_64 gen(*options.seed);
      const Regime targets[] = {Regime::kBothBuyUnique,
                                Regime::kTwoPureAndMixed,
                                Regime::kNeitherBuyUnique};
      std::map<std::string, std::int64_t> failures;
      std::int64_t regime_misses = 0;
      for (std::int64_t t = 0; t < options.trials; ++t) {
        const Regime target = targets[t % 3];
        const GameSpec sample = SampleSpec(gen, target, spec.r);
        if (ClassifyRegime(sample) != target) ++regime_misses;
        for (const Check& c : RunChecks(sample, options.grid, false)) {
          if (c.status == Status::kFail) ++failures[c.name];
        }
      }
      Json failed = Json::object();
      for (const auto& [name, count] : failures) {
        failed[name] = count;
        passed = false;
        err << "verify: FAIL " << name << " on " << count
            << " random specs\n";
      }
      if (regime_misses > 0) {
        passed = false;
        err << "verify: FAIL regime targeting on " << regime_misses
            << " random specs\n";
      }
      doc["random_trials"] = {{"count", options.trials},
                              {"seed", *options.seed},
                              {"regime_misses", regime_misses},
                              {"failures", failed}};
    }
    doc["passed"] = passed;
    Emit(doc, options.format, buf);
    return passed ? kExitSuccess : kExitValidationFailure;
  });
}

int RunEstimateRate(const EstimateRateOptions& options, std::ostream& out,
                    std::ostream& err) {
  return Guarded(out, err, [&](std::ostream& buf) {
    if (!(options.k > 1)) throw DomainError("--k must exceed 1");
    if (options.trials < 1) throw DomainError("--trials must be positive");
    if (options.m.empty()) throw DomainError("--m needs at least one value");
    for (std::size_t i = 0; i < options.m.size(); ++i) {
      if (options.m[i] < 1) throw DomainError("--m values must be positive");
      if (i > 0 && options.m[i] <= options.m[i - 1]) {
        throw DomainError("--m values must be strictly ascending");
      }
    }
    std::vector<MissingMassEstimate> estimates;
    std::vector<double> log_m, log_mass;
    for (std::size_t i = 0; i < options.m.size(); ++i) {
      estimates.push_back(EstimateMissingMass(options.k, options.m[i],
                                              options.trials,
                                              options.seed + i));
      log_m.push_back(std::log(static_cast<double>(options.m[i])));
      log_mass.push_back(std::log(estimates.back().mean));
    }
    std::optional<double> slope;
    if (options.m.size() >= 2) {
      bool positive = true;
      for (const auto& e : estimates) positive = positive && e.mean > 0;
      if (positive) {
        slope = LeastSquaresSlope(log_m, log_mass);
      } else {
        err << "datarace: note: zero missing-mass estimate, slope omitted\n";
      }
    }
    const double expected = 1.0 / options.k - 1.0;
    if (options.format == Format::kCsv) {
      WriteCsvRow(buf, kRateHeader);
      for (std::size_t i = 0; i < options.m.size(); ++i) {
        WriteCsvRow(buf, {std::to_string(options.m[i]),
                          FormatNumber(estimates[i].mean),
                          FormatNumber(estimates[i].std_error),
                          slope ? FormatNumber(*slope) : "",
                          FormatNumber(expected)});
      }
      return kExitSuccess;
    }
    Json rows = Json::array();
    for (std::size_t i = 0; i < options.m.size(); ++i) {
      rows.push_back({{"m", options.m[i]},
                      {"mean", Num(estimates[i].mean)},
                      {"std_error", Num(estimates[i].std_error)}});
    }
    Json doc;
    doc["k"] = Num(options.k);
    doc["trials"] = options.trials;
    doc["seed"] = options.seed;
    doc["rows"] = rows;
    doc["slope"] = OptNum(slope);
    doc["expected_slope"] = Num(expected);
    buf << doc.dump(2) << '\n';
    return kExitSuccess;
  });
}

std::vector<SweepRow> ParseSweepCsv(std::istream& in) {
  std::vector<SweepRow> rows;
  for (const auto& f : ReadTable(in, kSweepHeader)) {
    const std::optional<Regime> regime = ParseRegime(f[1]);
    if (!regime) throw std::invalid_argument("unknown regime: " + f[1]);
    rows.push_back({ParseDouble(f[0]), *regime, ParseDouble(f[2]),
                    ParseDouble(f[3]), ParseDouble(f[4]), ParseDouble(f[5]),
                    ParseDouble(f[6])});
  }
  return rows;
}

SimulateRecord ParseSimulateCsv(std::istream& in) {
  const auto rows = ReadTable(in, kSimulateHeader);
  if (rows.size() != 1) throw std::invalid_argument("expected one data row");
  const auto& f = rows.front();
  SimulateRecord r;
  r.err1 = ParseDouble(f[0]);
  r.err2 = ParseDouble(f[1]);
  r.a = static_cast<int>(ParseInt(f[2]));
  r.steps = ParseInt(f[3]);
  r.seed = std::stoull(f[4]);
  r.empirical = {ParseDouble(f[5]), ParseDouble(f[6])};
  r.analytic = {ParseDouble(f[7]), ParseDouble(f[8])};
  r.abs_deviation = ParseDouble(f[9]);
  return r;
}

std::vector<RateRow> ParseEstimateRateCsv(std::istream& in) {
  std::vector<RateRow> rows;
  for (const auto& f : ReadTable(in, kRateHeader)) {
    RateRow r;
    r.m = ParseInt(f[0]);
    r.mean = ParseDouble(f[1]);
    r.std_error = ParseDouble(f[2]);
    if (!f[3].empty()) r.slope = ParseDouble(f[3]);
    r.expected_slope = ParseDouble(f[4]);
    rows.push_back(r);
  }
  return rows;
}

std::map<std::string, std::string> ParseKeyValueCsv(std::istream& in) {
  std::map<std::string, std::string> values;
  for (const auto& f : ReadTable(in, {"key", "value"})) values[f[0]] = f[1];
  return values;
}

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{
      "Two-firm data acquisition game: equilibria, market-share drift, "
      "consumer welfare and learning-rate simulations."};
  app.name("datarace");
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "File of key=value defaults; command-line flags take "
                 "precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);

  GameSpec spec;
  MarkovConsumerModel model{.err1 = 0.1, .err2 = 0.2, .a = 1};
  std::int64_t steps = 0;
  std::uint64_t seed = 0;
  int grid = 1000;
  std::int64_t trials = 0;
  std::string param = "price";
  double from = 0.0;
  double to = 0.0;
  std::string format;
  EstimateRateOptions rate;

  app.add_option("--x", spec.x, "Firm 1 data count")->capture_default_str();
  app.add_option("--y", spec.y, "Firm 2 data count")->capture_default_str();
  app.add_option("--n", spec.n, "Size of the dataset for sale")
      ->capture_default_str();
  app.add_option("--p", spec.p, "Price of the dataset")->capture_default_str();
  app.add_option("--beta", spec.beta, "Combined exponent")
      ->capture_default_str();
  app.add_option("--r", spec.r, "Learning rate, err(m) = m^-r")
      ->capture_default_str();
  app.add_option("--a", model.a, "Competition exponent / queries per day")
      ->capture_default_str();
  app.add_option("--err1", model.err1, "Firm 1 error rate")
      ->capture_default_str();
  app.add_option("--err2", model.err2, "Firm 2 error rate")
      ->capture_default_str();
  auto* steps_opt = app.add_option(
      "--steps", steps,
      "Simulated days (simulate, default 1000000) or grid points (sweep, "
      "default 50)");
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed");
  app.add_option("--grid", grid, "Brute-force lattice resolution")
      ->capture_default_str();
  auto* trials_opt = app.add_option(
      "--trials", trials,
      "Monte Carlo trials (estimate-rate, default 200) or random specs "
      "(verify, default 0)");
  app.add_option("--param", param, "Swept parameter: price|p|corpus|n")
      ->capture_default_str();
  auto* from_opt = app.add_option("--from", from, "Sweep lower end");
  auto* to_opt = app.add_option("--to", to, "Sweep upper end");
  auto* format_opt = app.add_option("--format", format, "json|csv")
                         ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--k", rate.k, "Zipf exponent of the query distribution")
      ->capture_default_str();
  app.add_option("--m", rate.m, "Sample sizes, comma separated")
      ->delimiter(',')
      ->capture_default_str();

  auto* analyze = app.add_subcommand(
      "analyze", "Equilibria, orderings, drift and welfare for one spec");
  auto* sweep = app.add_subcommand(
      "sweep", "Equilibrium mixing probabilities along a price/corpus grid");
  auto* simulate = app.add_subcommand(
      "simulate", "Markov consumer simulation vs stationary shares");
  auto* verify = app.add_subcommand(
      "verify", "Closed forms against the brute-force oracle and invariants");
  auto* estimate = app.add_subcommand(
      "estimate-rate", "Missing-mass decay and its log-log slope");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitUsageError;
  }

  auto format_or = [&](Format fallback) {
    if (!*format_opt) return fallback;
    return format == "csv" ? Format::kCsv : Format::kJson;
  };
  auto require_seed = [&](const char* command) {
    if (*seed_opt) return true;
    err << "datarace: " << command << " requires --seed\n";
    return false;
  };

  if (*analyze) {
    return RunAnalyze({spec, format_or(Format::kJson)}, out, err);
  }
  if (*sweep) {
    const std::optional<SweepParam> parsed = ParseSweepParam(param);
    if (!parsed) {
      err << "datarace: unknown --param " << param << '\n';
      return kExitUsageError;
    }
    if (!*from_opt || !*to_opt) {
      err << "datarace: sweep requires --from and --to\n";
      return kExitUsageError;
    }
    SweepOptions options{spec, *parsed, from, to,
                         *steps_opt ? static_cast<int>(steps) : 50,
                         format_or(Format::kCsv)};
    if (*steps_opt && (steps < 2 || steps > 10'000'000)) {
      err << "datarace: --steps out of range for sweep\n";
      return kExitUsageError;
    }
    return RunSweep(options, out, err);
  }
  if (*simulate) {
    if (!require_seed("simulate")) return kExitUsageError;
    return RunSimulate({model, *steps_opt ? steps : 1'000'000, seed,
                        format_or(Format::kJson)},
                       out, err);
  }
  if (*verify) {
    VerifyOptions options{spec, grid, *trials_opt ? trials : 0, std::nullopt,
                          format_or(Format::kJson)};
    if (*seed_opt) options.seed = seed;
    return RunVerify(options, out, err);
  }
  if (*estimate) {
    if (!require_seed("estimate-rate")) return kExitUsageError;
    rate.trials = *trials_opt ? trials : 200;
    rate.seed = seed;
    rate.format = format_or(Format::kCsv);
    return RunEstimateRate(rate, out, err);
  }
  return kExitUsageError;
}

}  // namespace datarace::cli
