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

#ifndef DATARACE_ANALYSIS_H_
#define DATARACE_ANALYSIS_H_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "datarace/equilibrium.h"
#include "datarace/game_core.h"

namespace datarace {

struct ProfileValue {
  StrategyProfile profile;
  double value = 0.0;
};

// Profiles sorted by descending utility; ties keep canonical order.
struct UtilityOrdering {
  std::array<ProfileValue, 4> firm1;
  std::array<ProfileValue, 4> firm2;
};

// Requires the mixed regime max{C,D} < p < A; throws PreconditionError
// otherwise. In that regime Firm 1 ranks (NB,NB) >= (B,NB) >= (B,B) >= (NB,B)
// and Firm 2 ranks (NB,NB) >= (NB,B) >= (B,B) >= (B,NB).
UtilityOrdering ComputeUtilityOrdering(const GameSpec& spec);

// Whether `ordering` matches the trade-war ranking above to within
// kTolerance.
bool MatchesTradeWarOrdering(const UtilityOrdering& ordering);

// Change of Firm 1's market share relative to (NB,NB).
struct DriftReport {
  // Indexed by ProfileIndex: (B,B) = (C-D)/2, (B,NB) = C, (NB,B) = -D,
  // (NB,NB) = 0.
  std::array<double, 4> per_profile{};
  // Expected change under the mixed equilibrium, closed form. Present only in
  // the mixed regime.
  std::optional<double> mixed_expected;

  double at(StrategyProfile s) const { return per_profile[ProfileIndex(s)]; }
};

DriftReport ComputeShareDrift(const GameSpec& spec);

// Expected change of Firm 1's share when the firms buy with probabilities
// (q1, q2), summed over the four outcomes.
double ExpectedDrift(const DeltaQuantities& deltas, double q1, double q2);

// Consumer welfare ms1(1 - err(m1)) + ms2(1 - err(m2)) with err(m) = m^{-r}.
// (B,B) is the average of (B,NB) and (NB,B).
double ConsumerWelfare(const GameSpec& spec, StrategyProfile profile);

// q-weighted welfare over the four outcomes of a mixed profile.
double MixedWelfare(const GameSpec& spec, double q1, double q2);

struct WelfareReport {
  std::array<double, 4> cons{};  // indexed by ProfileIndex
  std::array<StrategyProfile, 4> ordering;  // descending welfare
  // x > y, the hypothesis of the consumer-preference result.
  bool hypothesis_holds = false;
  // cons(B,NB) > cons(B,B) > cons(NB,B) > cons(NB,NB) strictly.
  bool strict_expected_order = false;

  double at(StrategyProfile s) const { return cons[ProfileIndex(s)]; }
};

// Never throws on x <= y; reports hypothesis_holds = false instead.
WelfareReport ComputeWelfareOrdering(const GameSpec& spec);

enum class SweepParam { kPrice, kCorpus };

std::string SweepParamName(SweepParam param);
std::optional<SweepParam> ParseSweepParam(const std::string& name);

struct SweepRow {
  double param_value = 0.0;
  Regime regime = Regime::kBothBuyUnique;
  // Probability of B for each firm: 1 in BothBuyUnique, 0 in
  // NeitherBuyUnique, the mixed point in TwoPureAndMixed. Boundary rows follow
  // the closed conditions (max{C,D} -> 1, A -> 0).
  double q1 = 0.0;
  double q2 = 0.0;
  double u1 = 0.0;     // expected utilities at (q1, q2)
  double u2 = 0.0;
  double drift = 0.0;  // expected change of Firm 1's share at (q1, q2)
};

// Evaluates the equilibrium on `steps` evenly spaced values of the price or
// the corpus size in [lo, hi], all other parameters taken from `spec`.
// Throws DomainError unless lo < hi and steps >= 2.
std::vector<SweepRow> MonotonicitySweep(const GameSpec& spec, SweepParam param,
                                        double lo, double hi, int steps);

}  // namespace datarace

#endif  // DATARACE_ANALYSIS_H_
