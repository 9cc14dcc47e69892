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

#ifndef DATARACE_GAME_CORE_H_
#define DATARACE_GAME_CORE_H_

#include <array>
#include <cstddef>
#include <string>

namespace datarace {

// Tolerance for every strict/weak comparison on utilities and deltas.
inline constexpr double kTolerance = 1e-9;

// Parameters of the one-shot data-acquisition game. Firm 1 starts with x
// data points, Firm 2 with y; a corpus of n points is offered at price p.
// beta is the combined competition exponent, r the error-rate exponent used
// only for consumer welfare. x >= y is not required.
struct GameSpec {
  double x = 1.0;
  double y = 1.0;
  double n = 1.0;
  double p = 0.0;
  double beta = 1.0;
  double r = 0.5;
};

// Throws DomainError on x < 1, y < 1, n <= 0, beta <= 0, r outside (0,1],
// or any non-finite field.
void ValidateSpec(const GameSpec& spec);

enum class Action { kBuy, kNotBuy };

struct StrategyProfile {
  Action firm1 = Action::kNotBuy;
  Action firm2 = Action::kNotBuy;

  friend bool operator==(const StrategyProfile&,
                         const StrategyProfile&) = default;
};

inline constexpr StrategyProfile kBuyBuy{Action::kBuy, Action::kBuy};
inline constexpr StrategyProfile kBuyNotBuy{Action::kBuy, Action::kNotBuy};
inline constexpr StrategyProfile kNotBuyBuy{Action::kNotBuy, Action::kBuy};
inline constexpr StrategyProfile kNotBuyNotBuy{Action::kNotBuy,
                                               Action::kNotBuy};

// Canonical order: (B,B), (B,NB), (NB,B), (NB,NB).
inline constexpr std::array<StrategyProfile, 4> kAllProfiles = {
    kBuyBuy, kBuyNotBuy, kNotBuyBuy, kNotBuyNotBuy};

// Position of `s` in kAllProfiles.
constexpr std::size_t ProfileIndex(StrategyProfile s) {
  return (s.firm1 == Action::kBuy ? 0 : 2) + (s.firm2 == Action::kBuy ? 0 : 1);
}

// "(B,NB)" style label.
std::string ProfileName(StrategyProfile s);

// Both firms' utilities (market share less expected payment) in every
// profile. When both firms try to buy, a fair coin decides who gets the data
// and pays for it.
class PayoffMatrix {
 public:
  PayoffMatrix(const std::array<double, 4>& u1,
               const std::array<double, 4>& u2)
      : u1_(u1), u2_(u2) {}

  double u1(StrategyProfile s) const { return u1_[ProfileIndex(s)]; }
  double u2(StrategyProfile s) const { return u2_[ProfileIndex(s)]; }
  double utility(int firm, StrategyProfile s) const {
    return firm == 1 ? u1(s) : u2(s);
  }

 private:
  std::array<double, 4> u1_;
  std::array<double, 4> u2_;
};

// Market-share deltas that drive the regime structure:
//   A = ms1(x+n, y) - ms1(x, y+n)
//   C = ms1(x+n, y) - ms1(x, y)    (Firm 1 gains from buying alone)
//   D = ms2(x, y+n) - ms2(x, y)    (Firm 2 gains from buying alone)
// with A = C + D.
struct DeltaQuantities {
  double a = 0.0;
  double c = 0.0;
  double d = 0.0;

  double max_cd() const { return c > d ? c : d; }
  double min_cd() const { return c < d ? c : d; }
};

// Signed utility gain of switching NB -> B, for each firm and each fixed
// opponent action. Positive means the flow-diagram edge points toward B.
struct DeviationGains {
  double firm1_vs_buy = 0.0;       // (A - p) / 2
  double firm1_vs_not_buy = 0.0;   // C - p
  double firm2_vs_buy = 0.0;       // (A - p) / 2
  double firm2_vs_not_buy = 0.0;   // D - p
};

// Data held by each firm once a profile is played out. (B,B) is a coin flip
// between (B,NB) and (NB,B) and has no single allocation; it throws
// PreconditionError.
struct DataCounts {
  double m1 = 1.0;
  double m2 = 1.0;
};
DataCounts RealizedData(const GameSpec& spec, StrategyProfile s);

PayoffMatrix ComputePayoffMatrix(const GameSpec& spec);
DeltaQuantities ComputeDeltas(const GameSpec& spec);
DeviationGains ComputeDeviationGains(const GameSpec& spec);

}  // namespace datarace

#endif  // DATARACE_GAME_CORE_H_
