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

#ifndef DATARACE_EQUILIBRIUM_H_
#define DATARACE_EQUILIBRIUM_H_

#include <optional>
#include <string>
#include <vector>

#include "datarace/game_core.h"

namespace datarace {

// Price regimes of the game. Boundary values are reported when p lies within
// kTolerance of max{C,D} or of A.
enum class Regime {
  kBothBuyUnique,     // p <= max{C,D}: (B,B) only
  kTwoPureAndMixed,   // max{C,D} < p < A: (B,B), (NB,NB) and one mixed point
  kNeitherBuyUnique,  // p >= A: (NB,NB) only
  kBoundaryAtMaxCD,
  kBoundaryAtA,
};

std::string RegimeName(Regime regime);
// Inverse of RegimeName; nullopt for unknown labels.
std::optional<Regime> ParseRegime(const std::string& name);
bool IsBoundary(Regime regime);

// Probabilities with which each firm plays B.
struct MixedEquilibrium {
  double q1 = 0.0;
  double q2 = 0.0;
};

struct EquilibriumReport {
  Regime regime = Regime::kBothBuyUnique;
  // Subset of {(B,B), (NB,NB)}, in canonical profile order.
  std::vector<StrategyProfile> pure;
  std::optional<MixedEquilibrium> mixed;
  // Set on boundary regimes: `pure` then holds the union of both adjacent
  // regimes' answers and the mixed point has collapsed onto a pure profile.
  bool degenerate = false;
};

Regime ClassifyRegime(const GameSpec& spec);
Regime ClassifyRegime(const DeltaQuantities& deltas, double price);

// Closed-form equilibria:
//   q1 = 2(p - D) / (A + p - 2D),  q2 = 2(p - C) / (A + p - 2C).
EquilibriumReport SolveEquilibria(const GameSpec& spec);

// Expected utility of `firm` for playing B minus playing NB when the opponent
// plays B with probability `opponent_buy`.
double BuyAdvantage(const PayoffMatrix& matrix, int firm, double opponent_buy);

// Expected utility of `firm` when Firm 1 plays B w.p. q1, Firm 2 w.p. q2.
double ExpectedUtility(const PayoffMatrix& matrix, int firm, double q1,
                       double q2);

struct BruteForceReport {
  std::vector<StrategyProfile> pure;
  std::optional<MixedEquilibrium> mixed;
  // Lattice points kept by the scan before refinement.
  std::size_t lattice_candidates = 0;
  // Largest distance between a refined candidate and the reported point.
  double cluster_spread = 0.0;
};

// Equilibria of an arbitrary 2x2 bimatrix game, found without the closed
// forms: pure profiles by exhaustive best-response checks, mixed points by
// scanning a grid x grid lattice of (q1, q2) for cells where both firms'
// buy advantage changes sign (or is within eps of zero), then solving each
// firm's linear indifference equation exactly. Only fully mixed points are
// reported. Throws DomainError for grid < 100 or eps <= 0.
BruteForceReport BruteForceEquilibria(const PayoffMatrix& matrix,
                                      int grid = 1000,
                                      double eps = kTolerance);

}  // namespace datarace

#endif  // DATARACE_EQUILIBRIUM_H_
