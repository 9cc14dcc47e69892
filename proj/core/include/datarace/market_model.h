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

#ifndef DATARACE_MARKET_MODEL_H_
#define DATARACE_MARKET_MODEL_H_

#include <cstdint>
#include <utility>

namespace datarace {

// How a firm's excess error decays with its training-set size m. Every
// profile reduces to err(m) = m^{-rate} once the firm has optimized its model
// class; constants are normalized to 1.
class LearningProfile {
 public:
  enum class Kind { kNeuralNet, kPacRealizable, kSearchMissingMass, kPowerLaw };

  // Width-d networks with error bound c1*d/m + c2/d. Rate 1/2.
  static LearningProfile NeuralNet(double c1, double c2);
  // Realizable PAC learning. Rate 1.
  static LearningProfile PacRealizable();
  // Search over a query distribution with P(i) proportional to i^{-k}.
  // Rate 1 - 1/k.
  static LearningProfile SearchMissingMass(double k);
  // Generic err(m) = m^{-r}, r in (0,1].
  static LearningProfile PowerLaw(double r);

  Kind kind() const { return kind_; }
  double rate() const { return rate_; }
  // Only meaningful for kNeuralNet.
  double c1() const { return c1_; }
  double c2() const { return c2_; }
  // Only meaningful for kSearchMissingMass.
  double k() const { return k_; }

 private:
  LearningProfile(Kind kind, double rate) : kind_(kind), rate_(rate) {}

  Kind kind_;
  double rate_;
  double c1_ = 0.0;
  double c2_ = 0.0;
  double k_ = 0.0;
};

// Exponents of the contest function. `a` multiplies errors (competition
// exponent); `beta` = rate * a multiplies data counts.
struct MarketShareParams {
  double a = 1.0;
  double beta = 1.0;

  static MarketShareParams FromProfile(const LearningProfile& profile,
                                       double a);
};

// Consumer who stays with a firm until it gets `a` answers wrong within one
// day's block of `a` queries, then switches the next day.
struct MarkovConsumerModel {
  double err1 = 0.5;
  double err2 = 0.5;
  int a = 1;
};

struct NnWidth {
  double width = 0.0;
  double error_bound = 0.0;
};

struct StationaryShares {
  double mu1 = 0.5;
  double mu2 = 0.5;
};

struct EmpiricalShares {
  double share1 = 0.5;
  double share2 = 0.5;
};

// err(m) = m^{-rate}. Throws DomainError for m < 1.
double ErrorRate(const LearningProfile& profile, double m);

// Minimizer of c1*d/m + c2/d over d > 0 and the bound at the minimizer.
NnWidth OptimalNnWidth(double m, double c1, double c2);

// Firm 1's error-based share err2^a / (err1^a + err2^a). Non-integer a is
// accepted. Throws DomainError unless both errors lie in (0,1) and a > 0.
double MarketShareFromErrors(double err1, double err2, double a);

// Firm 1's share m1^beta / (m1^beta + m2^beta), evaluated as a logistic of
// beta * (ln m1 - ln m2) so that large counts and exponents never overflow.
double MarketShareFromData(double m1, double m2, double beta);

// Stationary distribution of the two-state switching chain whose per-day
// switch probabilities are err1^a and err2^a.
StationaryShares StationaryDistribution(const MarkovConsumerModel& model);

// Runs the switching chain for `steps` days from a uniformly random initial
// firm and returns the fraction of days spent with each firm.
EmpiricalShares SimulateConsumer(const MarkovConsumerModel& model,
                                 std::int64_t steps, std::uint64_t seed);

// Normalizer sum_{i>=1} i^{-k}.
double ZetaNormalizer(double k);

// Monte Carlo estimate of the expected unobserved probability mass after m
// draws from P(i) = i^{-k} / zeta(k), i >= 1, averaged over `trials`
// independent samples.
struct MissingMassEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};
MissingMassEstimate EstimateMissingMass(double k, std::int64_t m,
                                        std::int64_t trials,
                                        std::uint64_t seed);

void ValidateMarkovModel(const MarkovConsumerModel& model);

}  // namespace datarace

#endif  // DATARACE_MARKET_MODEL_H_
