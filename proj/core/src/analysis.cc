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

#include "datarace/analysis.h"

#include <algorithm>
#include <cmath>

#include "datarace/errors.h"
#include "datarace/market_model.h"

namespace datarace {
namespace {

std::array<ProfileValue, 4> SortDescending(const PayoffMatrix& matrix,
                                           int firm) {
  std::array<ProfileValue, 4> out;
  for (std::size_t i = 0; i < kAllProfiles.size(); ++i) {
    out[i] = ProfileValue{kAllProfiles[i],
                          matrix.utility(firm, kAllProfiles[i])};
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ProfileValue& lhs, const ProfileValue& rhs) {
                     return lhs.value > rhs.value;
                   });
  return out;
}

double ValueOf(const std::array<ProfileValue, 4>& values, StrategyProfile s) {
  for (const ProfileValue& pv : values) {
    if (pv.profile == s) return pv.value;
  }
  return 0.0;
}

bool NonIncreasing(const std::array<ProfileValue, 4>& values,
                   const std::array<StrategyProfile, 4>& expected) {
  for (std::size_t i = 0; i + 1 < expected.size(); ++i) {
    if (ValueOf(values, expected[i]) < ValueOf(values, expected[i + 1]) -
                                            kTolerance) {
      return false;
    }
  }
  return true;
}

}  // namespace

UtilityOrdering ComputeUtilityOrdering(const GameSpec& spec) {
  const Regime regime = ClassifyRegime(spec);
  if (regime != Regime::kTwoPureAndMixed) {
    throw PreconditionError(
        "utility ordering is stated for max{C,D} < p < A; regime is " +
        RegimeName(regime));
  }
  const PayoffMatrix matrix = ComputePayoffMatrix(spec);
  return UtilityOrdering{SortDescending(matrix, 1), SortDescending(matrix, 2)};
}

bool MatchesTradeWarOrdering(const UtilityOrdering& ordering) {
  return NonIncreasing(ordering.firm1,
                       {kNotBuyNotBuy, kBuyNotBuy, kBuyBuy, kNotBuyBuy}) &&
         NonIncreasing(ordering.firm2,
                       {kNotBuyNotBuy, kNotBuyBuy, kBuyBuy, kBuyNotBuy});
}

DriftReport ComputeShareDrift(const GameSpec& spec) {
  const DeltaQuantities dq = ComputeDeltas(spec);
  DriftReport report;
  report.per_profile[ProfileIndex(kBuyBuy)] = (dq.c - dq.d) / 2.0;
  report.per_profile[ProfileIndex(kBuyNotBuy)] = dq.c;
  report.per_profile[ProfileIndex(kNotBuyBuy)] = -dq.d;
  report.per_profile[ProfileIndex(kNotBuyNotBuy)] = 0.0;

  if (ClassifyRegime(dq, spec.p) == Regime::kTwoPureAndMixed) {
    const double p = spec.p;
    const double numerator =
        2.0 * (dq.c - dq.d) * (p * (dq.a - dq.c - dq.d) + dq.c * dq.d);
    const double denominator =
        (dq.a + p - 2.0 * dq.c) * (dq.a + p - 2.0 * dq.d);
    report.mixed_expected = numerator / denominator;
  }
  return report;
}

double ExpectedDrift(const DeltaQuantities& deltas, double q1, double q2) {
  return q1 * (1.0 - q2) * deltas.c - (1.0 - q1) * q2 * deltas.d +
         q1 * q2 * (deltas.c - deltas.d) / 2.0;
}

double ConsumerWelfare(const GameSpec& spec, StrategyProfile profile) {
  ValidateSpec(spec);
  if (profile == kBuyBuy) {
    return 0.5 * (ConsumerWelfare(spec, kBuyNotBuy) +
                  ConsumerWelfare(spec, kNotBuyBuy));
  }
  const DataCounts data = RealizedData(spec, profile);
  const LearningProfile curve = LearningProfile::PowerLaw(spec.r);
  const double share1 = MarketShareFromData(data.m1, data.m2, spec.beta);
  return share1 * (1.0 - ErrorRate(curve, data.m1)) +
         (1.0 - share1) * (1.0 - ErrorRate(curve, data.m2));
}

double MixedWelfare(const GameSpec& spec, double q1, double q2) {
  return q1 * q2 * ConsumerWelfare(spec, kBuyBuy) +
         q1 * (1.0 - q2) * ConsumerWelfare(spec, kBuyNotBuy) +
         (1.0 - q1) * q2 * ConsumerWelfare(spec, kNotBuyBuy) +
         (1.0 - q1) * (1.0 - q2) * ConsumerWelfare(spec, kNotBuyNotBuy);
}

WelfareReport ComputeWelfareOrdering(const GameSpec& spec) {
  WelfareReport report;
  for (StrategyProfile s : kAllProfiles) {
    report.cons[ProfileIndex(s)] = ConsumerWelfare(spec, s);
  }
  report.ordering = kAllProfiles;
  std::stable_sort(report.ordering.begin(), report.ordering.end(),
                   [&report](StrategyProfile lhs, StrategyProfile rhs) {
                     return report.at(lhs) > report.at(rhs);
                   });
  report.hypothesis_holds = spec.x > spec.y;
  report.strict_expected_order =
      report.at(kBuyNotBuy) > report.at(kBuyBuy) &&
      report.at(kBuyBuy) > report.at(kNotBuyBuy) &&
      report.at(kNotBuyBuy) > report.at(kNotBuyNotBuy);
  return report;
}

std::string SweepParamName(SweepParam param) {
  return param == SweepParam::kPrice ? "price" : "corpus";
}

std::optional<SweepParam> ParseSweepParam(const std::string& name) {
  if (name == "price" || name == "p") return SweepParam::kPrice;
  if (name == "corpus" || name == "n") return SweepParam::kCorpus;
  return std::nullopt;
}

std::vector<SweepRow> MonotonicitySweep(const GameSpec& spec, SweepParam param,
                                        double lo, double hi, int steps) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw DomainError("sweep needs finite lo < hi");
  }
  if (steps < 2) throw DomainError("sweep needs at least 2 steps");

  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double value =
        i == steps - 1 ? hi : lo + (hi - lo) * i / (steps - 1);
    GameSpec point = spec;
    (param == SweepParam::kPrice ? point.p : point.n) = value;

    const EquilibriumReport eq = SolveEquilibria(point);
    SweepRow row;
    row.param_value = value;
    row.regime = eq.regime;
    switch (eq.regime) {
      case Regime::kBothBuyUnique:
      case Regime::kBoundaryAtMaxCD:
        row.q1 = row.q2 = 1.0;
        break;
      case Regime::kNeitherBuyUnique:
      case Regime::kBoundaryAtA:
        row.q1 = row.q2 = 0.0;
        break;
      case Regime::kTwoPureAndMixed:
        row.q1 = eq.mixed->q1;
        row.q2 = eq.mixed->q2;
        break;
    }
    const PayoffMatrix matrix = ComputePayoffMatrix(point);
    row.u1 = ExpectedUtility(matrix, 1, row.q1, row.q2);
    row.u2 = ExpectedUtility(matrix, 2, row.q1, row.q2);
    row.drift = ExpectedDrift(ComputeDeltas(point), row.q1, row.q2);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace datarace
