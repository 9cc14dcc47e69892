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

#include "datarace/market_model.h"

#include <cmath>
#include <string>
#include <unordered_set>
#include <vector>

#include "datarace/errors.h"
#include "numeric.h"

namespace datarace {
namespace {

void RequirePositive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be positive and finite, got " +
                      std::to_string(value));
  }
}

void RequireOpenUnit(double value, const char* name) {
  if (!(value > 0.0 && value < 1.0)) {
    throw DomainError(std::string(name) + " must lie in (0,1), got " +
                      std::to_string(value));
  }
}

}  // namespace

LearningProfile LearningProfile::NeuralNet(double c1, double c2) {
  RequirePositive(c1, "c1");
  RequirePositive(c2, "c2");
  LearningProfile profile(Kind::kNeuralNet, 0.5);
  profile.c1_ = c1;
  profile.c2_ = c2;
  return profile;
}

LearningProfile LearningProfile::PacRealizable() {
  return LearningProfile(Kind::kPacRealizable, 1.0);
}

LearningProfile LearningProfile::SearchMissingMass(double k) {
  if (!(k > 1.0) || !std::isfinite(k)) {
    throw DomainError("missing-mass decay k must exceed 1, got " +
                      std::to_string(k));
  }
  LearningProfile profile(Kind::kSearchMissingMass, 1.0 - 1.0 / k);
  profile.k_ = k;
  return profile;
}

LearningProfile LearningProfile::PowerLaw(double r) {
  if (!(r > 0.0 && r <= 1.0)) {
    throw DomainError("learning rate must lie in (0,1], got " +
                      std::to_string(r));
  }
  return LearningProfile(Kind::kPowerLaw, r);
}

MarketShareParams MarketShareParams::FromProfile(
    const LearningProfile& profile, double a) {
  RequirePositive(a, "competition exponent a");
  return MarketShareParams{a, profile.rate() * a};
}

double ErrorRate(const LearningProfile& profile, double m) {
  if (!(m >= 1.0) || !std::isfinite(m)) {
    throw DomainError("data count m must be >= 1, got " + std::to_string(m));
  }
  return std::pow(m, -profile.rate());
}

NnWidth OptimalNnWidth(double m, double c1, double c2) {
  RequirePositive(m, "m");
  RequirePositive(c1, "c1");
  RequirePositive(c2, "c2");
  return NnWidth{std::sqrt(c2 * m / c1), 2.0 * std::sqrt(c1 * c2 / m)};
}

double MarketShareFromErrors(double err1, double err2, double a) {
  RequireOpenUnit(err1, "err1");
  RequireOpenUnit(err2, "err2");
  RequirePositive(a, "competition exponent a");
  return internal::Logistic(a * (std::log(err2) - std::log(err1)));
}

double MarketShareFromData(double m1, double m2, double beta) {
  if (!(m1 >= 1.0) || !(m2 >= 1.0) || !std::isfinite(m1) ||
      !std::isfinite(m2)) {
    throw DomainError("data counts must be finite and >= 1");
  }
  RequirePositive(beta, "beta");
  return 1.0 / (1.0 + std::exp(beta * (std::log(m2) - std::log(m1))));
}

void ValidateMarkovModel(const MarkovConsumerModel& model) {
  RequireOpenUnit(model.err1, "err1");
  RequireOpenUnit(model.err2, "err2");
  if (model.a < 1) {
    throw DomainError("switch threshold a must be a positive integer");
  }
}

StationaryShares StationaryDistribution(const MarkovConsumerModel& model) {
  ValidateMarkovModel(model);
  // Balance: mu1 * err1^a = mu2 * err2^a.
  const double mu1 = MarketShareFromErrors(model.err1, model.err2, model.a);
  return StationaryShares{mu1, 1.0 - mu1};
}

EmpiricalShares SimulateConsumer(const MarkovConsumerModel& model,
                                 std::int64_t steps, std::uint64_t seed) {
  ValidateMarkovModel(model);
  if (steps < 1) throw DomainError("steps must be >= 1");

  internal::Rng rng(seed);
  int firm = rng.Bernoulli(0.5) ? 1 : 2;
  std::int64_t days_with_firm1 = 0;
  for (std::int64_t day = 0; day < steps; ++day) {
    if (firm == 1) ++days_with_firm1;
    const double err = firm == 1 ? model.err1 : model.err2;
    bool all_wrong = true;
    for (int q = 0; q < model.a && all_wrong; ++q) {
      all_wrong = rng.Bernoulli(err);
    }
    if (all_wrong) firm = 3 - firm;
  }
  const double share1 =
      static_cast<double>(days_with_firm1) / static_cast<double>(steps);
  return EmpiricalShares{share1, 1.0 - share1};
}

double ZetaNormalizer(double k) {
  if (!(k > 1.0) || !std::isfinite(k)) {
    throw DomainError("zeta normalizer needs k > 1, got " + std::to_string(k));
  }
  constexpr int kCutoff = 1000;
  // Euler-Maclaurin for sum_{i >= N} i^{-k}; the first omitted term is
  // O(k^5 N^{-k-5}), far below 1e-12 for N = 1000.
  const double n = kCutoff;
  double sum = std::pow(n, 1.0 - k) / (k - 1.0) + 0.5 * std::pow(n, -k) +
               k * std::pow(n, -k - 1.0) / 12.0 -
               k * (k + 1.0) * (k + 2.0) * std::pow(n, -k - 3.0) / 720.0;
  for (int i = kCutoff - 1; i >= 1; --i) sum += std::pow(i, -k);
  return sum;
}

namespace {

// Devroye's rejection sampler for the zeta distribution P(i) ~ i^{-k}.
// Returns the sample as a double: for k close to 1 draws routinely exceed
// 2^53, and may be +inf (zero probability mass).
double SampleZeta(double k, internal::Rng& rng) {
  const double km1 = k - 1.0;
  const double b = std::exp2(km1);
  while (true) {
    const double u = rng.UniformPositive();
    const double v = rng.Uniform();
    const double x = std::floor(std::pow(u, -1.0 / km1));
    if (std::isinf(x)) return x;
    const double t_minus_1 = std::expm1(km1 * std::log1p(1.0 / x));
    if (v * x * t_minus_1 / (b - 1.0) <= (1.0 + t_minus_1) / b) return x;
  }
}

}  // namespace

MissingMassEstimate EstimateMissingMass(double k, std::int64_t m,
                                        std::int64_t trials,
                                        std::uint64_t seed) {
  if (!(k > 1.0) || !std::isfinite(k)) {
    throw DomainError("missing mass needs k > 1 (normalizer diverges), got " +
                      std::to_string(k));
  }
  if (m < 1) throw DomainError("draw count m must be >= 1");
  if (trials < 1) throw DomainError("trials must be >= 1");

  const double zeta = ZetaNormalizer(k);
  const std::uint64_t base = internal::SplitMix64(seed);
  // Each trial owns a derived seed, so results do not depend on evaluation
  // order.
  std::vector<double> per_trial(static_cast<std::size_t>(trials));
  std::unordered_set<double> seen;
  for (std::int64_t t = 0; t < trials; ++t) {
    internal::Rng rng(base + static_cast<std::uint64_t>(t));
    seen.clear();
    seen.reserve(static_cast<std::size_t>(m));
    double observed = 0.0;
    for (std::int64_t draw = 0; draw < m; ++draw) {
      const double value = SampleZeta(k, rng);
      if (std::isinf(value)) continue;
      if (seen.insert(value).second) observed += std::pow(value, -k);
    }
    per_trial[static_cast<std::size_t>(t)] = 1.0 - observed / zeta;
  }

  double mean = 0.0;
  for (double v : per_trial) mean += v;
  mean /= static_cast<double>(trials);
  double var = 0.0;
  for (double v : per_trial) var += (v - mean) * (v - mean);
  const double std_error =
      trials > 1 ? std::sqrt(var / static_cast<double>(trials - 1) /
                             static_cast<double>(trials))
                 : 0.0;
  return MissingMassEstimate{mean, std_error};
}

}  // namespace datarace
