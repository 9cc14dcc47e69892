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

#include "datarace/equilibrium.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "datarace/errors.h"

namespace datarace {

std::string RegimeName(Regime regime) {
  switch (regime) {
    case Regime::kBothBuyUnique:
      return "BothBuyUnique";
    case Regime::kTwoPureAndMixed:
      return "TwoPureAndMixed";
    case Regime::kNeitherBuyUnique:
      return "NeitherBuyUnique";
    case Regime::kBoundaryAtMaxCD:
      return "Boundary(AtMaxCD)";
    case Regime::kBoundaryAtA:
      return "Boundary(AtA)";
  }
  return "Unknown";
}

std::optional<Regime> ParseRegime(const std::string& name) {
  for (Regime r : {Regime::kBothBuyUnique, Regime::kTwoPureAndMixed,
                   Regime::kNeitherBuyUnique, Regime::kBoundaryAtMaxCD,
                   Regime::kBoundaryAtA}) {
    if (RegimeName(r) == name) return r;
  }
  return std::nullopt;
}

bool IsBoundary(Regime regime) {
  return regime == Regime::kBoundaryAtMaxCD || regime == Regime::kBoundaryAtA;
}

Regime ClassifyRegime(const DeltaQuantities& deltas, double price) {
  const double max_cd = deltas.max_cd();
  if (std::abs(price - max_cd) <= kTolerance) return Regime::kBoundaryAtMaxCD;
  if (std::abs(price - deltas.a) <= kTolerance) return Regime::kBoundaryAtA;
  if (price < max_cd) return Regime::kBothBuyUnique;
  if (price > deltas.a) return Regime::kNeitherBuyUnique;
  return Regime::kTwoPureAndMixed;
}

Regime ClassifyRegime(const GameSpec& spec) {
  return ClassifyRegime(ComputeDeltas(spec), spec.p);
}

EquilibriumReport SolveEquilibria(const GameSpec& spec) {
  const DeltaQuantities deltas = ComputeDeltas(spec);
  const double p = spec.p;
  EquilibriumReport report;
  report.regime = ClassifyRegime(deltas, p);
  switch (report.regime) {
    case Regime::kBothBuyUnique:
      report.pure = {kBuyBuy};
      break;
    case Regime::kNeitherBuyUnique:
      report.pure = {kNotBuyNotBuy};
      break;
    case Regime::kTwoPureAndMixed: {
      report.pure = {kBuyBuy, kNotBuyNotBuy};
      const double q1 = 2.0 * (p - deltas.d) / (deltas.a + p - 2.0 * deltas.d);
      const double q2 = 2.0 * (p - deltas.c) / (deltas.a + p - 2.0 * deltas.c);
      report.mixed = MixedEquilibrium{q1, q2};
      break;
    }
    case Regime::kBoundaryAtMaxCD:
    case Regime::kBoundaryAtA:
      report.pure = {kBuyBuy, kNotBuyNotBuy};
      report.degenerate = true;
      break;
  }
  return report;
}

double BuyAdvantage(const PayoffMatrix& matrix, int firm, double opponent_buy) {
  if (firm == 1) {
    return opponent_buy * (matrix.u1(kBuyBuy) - matrix.u1(kNotBuyBuy)) +
           (1.0 - opponent_buy) *
               (matrix.u1(kBuyNotBuy) - matrix.u1(kNotBuyNotBuy));
  }
  return opponent_buy * (matrix.u2(kBuyBuy) - matrix.u2(kBuyNotBuy)) +
         (1.0 - opponent_buy) *
             (matrix.u2(kNotBuyBuy) - matrix.u2(kNotBuyNotBuy));
}

double ExpectedUtility(const PayoffMatrix& matrix, int firm, double q1,
                       double q2) {
  return q1 * q2 * matrix.utility(firm, kBuyBuy) +
         q1 * (1.0 - q2) * matrix.utility(firm, kBuyNotBuy) +
         (1.0 - q1) * q2 * matrix.utility(firm, kNotBuyBuy) +
         (1.0 - q1) * (1.0 - q2) * matrix.utility(firm, kNotBuyNotBuy);
}

namespace {

Action Flip(Action a) {
  return a == Action::kBuy ? Action::kNotBuy : Action::kBuy;
}

bool IsPureEquilibrium(const PayoffMatrix& matrix, StrategyProfile s,
                       double eps) {
  const StrategyProfile dev1{Flip(s.firm1), s.firm2};
  const StrategyProfile dev2{s.firm1, Flip(s.firm2)};
  return matrix.u1(dev1) - matrix.u1(s) <= eps &&
         matrix.u2(dev2) - matrix.u2(s) <= eps;
}

// Scans the lattice i/grid of the opponent's probability for cells over which
// `firm`'s buy advantage touches zero, and solves the advantage (linear in the
// opponent's probability) for its root inside each such cell. Cells where the
// advantage is flat carry no isolated root and are skipped.
struct CellScan {
  std::size_t cells = 0;
  std::vector<double> roots;
};

CellScan ScanIndifference(const PayoffMatrix& matrix, int firm, int grid,
                          double eps) {
  std::vector<double> gain(static_cast<std::size_t>(grid) + 1);
  for (int i = 0; i <= grid; ++i) {
    gain[static_cast<std::size_t>(i)] =
        BuyAdvantage(matrix, firm, static_cast<double>(i) / grid);
  }
  CellScan scan;
  for (int i = 0; i < grid; ++i) {
    const double lo = gain[static_cast<std::size_t>(i)];
    const double hi = gain[static_cast<std::size_t>(i) + 1];
    const bool touches = std::abs(lo) <= eps || std::abs(hi) <= eps ||
                         (lo < 0.0) != (hi < 0.0);
    if (!touches) continue;
    ++scan.cells;
    if (lo == hi) continue;
    const double left = static_cast<double>(i) / grid;
    scan.roots.push_back(left + (lo / (lo - hi)) / grid);
  }
  return scan;
}

}  // namespace

BruteForceReport BruteForceEquilibria(const PayoffMatrix& matrix, int grid,
                                      double eps) {
  if (grid < 100) throw DomainError("grid must be >= 100");
  if (!(eps > 0.0)) throw DomainError("eps must be positive");

  BruteForceReport report;
  for (StrategyProfile s : kAllProfiles) {
    if (IsPureEquilibrium(matrix, s, eps)) report.pure.push_back(s);
  }

  // Firm 1's advantage depends only on q2 and Firm 2's only on q1, so the
  // kept lattice cells are the product of two one-dimensional scans.
  const CellScan q2_scan = ScanIndifference(matrix, 1, grid, eps);
  const CellScan q1_scan = ScanIndifference(matrix, 2, grid, eps);
  report.lattice_candidates = q1_scan.cells * q2_scan.cells;

  std::vector<MixedEquilibrium> refined;
  for (double q1 : q1_scan.roots) {
    for (double q2 : q2_scan.roots) {
      if (q1 > 0.0 && q1 < 1.0 && q2 > 0.0 && q2 < 1.0) {
        refined.push_back(MixedEquilibrium{q1, q2});
      }
    }
  }
  if (refined.empty()) return report;

  report.mixed = refined.front();
  for (const MixedEquilibrium& m : refined) {
    report.cluster_spread =
        std::max({report.cluster_spread, std::abs(m.q1 - report.mixed->q1),
                  std::abs(m.q2 - report.mixed->q2)});
  }
  return report;
}

}  // namespace datarace
