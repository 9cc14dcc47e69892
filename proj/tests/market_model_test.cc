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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "datarace/errors.h"
#include "oracles.h"

namespace datarace {
namespace {

TEST(LearningProfileTest, RatesPerKind) {
  EXPECT_DOUBLE_EQ(LearningProfile::NeuralNet(1, 1).rate(), 0.5);
  EXPECT_DOUBLE_EQ(LearningProfile::PacRealizable().rate(), 1.0);
  EXPECT_DOUBLE_EQ(LearningProfile::SearchMissingMass(4).rate(), 0.75);
  EXPECT_DOUBLE_EQ(LearningProfile::PowerLaw(0.3).rate(), 0.3);
  EXPECT_THROW(LearningProfile::PowerLaw(0.0), DomainError);
  EXPECT_THROW(LearningProfile::PowerLaw(1.5), DomainError);
  EXPECT_THROW(LearningProfile::SearchMissingMass(1.0), DomainError);
  EXPECT_THROW(LearningProfile::NeuralNet(-1, 1), DomainError);
}

TEST(LearningProfileTest, CombinedExponent) {
  const auto params =
      MarketShareParams::FromProfile(LearningProfile::NeuralNet(2, 3), 4);
  EXPECT_DOUBLE_EQ(params.a, 4);
  EXPECT_DOUBLE_EQ(params.beta, 2);
}

TEST(ErrorRateTest, Examples) {
  EXPECT_DOUBLE_EQ(ErrorRate(LearningProfile::PowerLaw(1), 1), 1.0);
  EXPECT_NEAR(ErrorRate(LearningProfile::PowerLaw(0.5), 100), 0.1, 1e-15);
  EXPECT_NEAR(ErrorRate(LearningProfile::PacRealizable(), 1000), 0.001, 1e-18);
  EXPECT_THROW(ErrorRate(LearningProfile::PacRealizable(), 0.5), DomainError);
}

TEST(ErrorRateTest, StrictlyDecreasingInM) {
  const auto profile = LearningProfile::SearchMissingMass(2.5);
  double prev = ErrorRate(profile, 1);
  EXPECT_LE(prev, 1.0);
  for (double m = 1.5; m < 1e6; m *= 1.5) {
    const double cur = ErrorRate(profile, m);
    EXPECT_LT(cur, prev);
    EXPECT_GT(cur, 0.0);
    prev = cur;
  }
}

TEST(OptimalNnWidthTest, Examples) {
  auto w = OptimalNnWidth(10000, 1, 1);
  EXPECT_NEAR(w.width, 100, 1e-12);
  EXPECT_NEAR(w.error_bound, 0.02, 1e-15);
  w = OptimalNnWidth(1, 1, 1);
  EXPECT_DOUBLE_EQ(w.width, 1);
  EXPECT_DOUBLE_EQ(w.error_bound, 2);
  w = OptimalNnWidth(400, 4, 1);
  EXPECT_NEAR(w.width, 10, 1e-12);
  EXPECT_NEAR(w.error_bound, 0.2, 1e-15);
  EXPECT_THROW(OptimalNnWidth(0, 1, 1), DomainError);
}

TEST(OptimalNnWidthTest, MatchesGridSearch) {
  for (auto [m, c1, c2] : {std::tuple{10000.0, 1.0, 1.0},
                           std::tuple{400.0, 4.0, 1.0},
                           std::tuple{37.0, 0.3, 2.5}}) {
    const auto w = OptimalNnWidth(m, c1, c2);
    const auto grid = oracle::GridMinimizeNnBound(m, c1, c2);
    EXPECT_NEAR(w.width / grid.width, 1.0, 1e-3);
    // No probed width beats the reported minimum.
    EXPECT_LE(w.error_bound, grid.value + 1e-15);
    EXPECT_NEAR(w.error_bound, grid.value, 1e-8 * grid.value);
  }
}

TEST(MarketShareFromErrorsTest, Examples) {
  EXPECT_DOUBLE_EQ(MarketShareFromErrors(0.05, 0.05, 3), 0.5);
  EXPECT_NEAR(MarketShareFromErrors(0.0001, 0.01, 1), 100.0 / 101.0, 1e-15);
  EXPECT_NEAR(MarketShareFromErrors(0.1, 0.2, 2), 0.8, 1e-15);
  // Non-integer exponents are accepted.
  EXPECT_NEAR(MarketShareFromErrors(0.1, 0.2, 0.5),
              std::sqrt(0.2) / (std::sqrt(0.1) + std::sqrt(0.2)), 1e-15);
}

TEST(MarketShareFromErrorsTest, RejectsErrorsOutsideUnitInterval) {
  EXPECT_THROW(MarketShareFromErrors(0.0, 0.5, 1), DomainError);
  EXPECT_THROW(MarketShareFromErrors(0.5, 1.0, 1), DomainError);
  EXPECT_THROW(MarketShareFromErrors(0.5, 0.5, 0), DomainError);
}

TEST(MarketShareFromDataTest, Examples) {
  EXPECT_DOUBLE_EQ(MarketShareFromData(500, 500, 7), 0.5);
  EXPECT_NEAR(MarketShareFromData(100, 50, 1), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(MarketShareFromData(100, 50, 2), 0.8, 1e-15);
  EXPECT_THROW(MarketShareFromData(0.5, 50, 2), DomainError);
  EXPECT_THROW(MarketShareFromData(5, 50, 0), DomainError);
}

TEST(MarketShareFromDataTest, NoOverflowAtExtremeCounts) {
  const double s = MarketShareFromData(1e300, 1.0, 50);
  EXPECT_EQ(s, 1.0);
  EXPECT_EQ(MarketShareFromData(1.0, 1e300, 50), 0.0);
}

TEST(MarketShareFromDataTest, PropertiesOnRandomInputs) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> log_m(0.0, std::log(1e6));
  std::uniform_real_distribution<double> beta_dist(0.01, 8.0);
  std::uniform_real_distribution<double> rate_dist(0.05, 1.0);
  for (int i = 0; i < 5000; ++i) {
    const double m1 = std::exp(log_m(gen));
    const double m2 = std::exp(log_m(gen));
    const double beta = beta_dist(gen);
    // Complementarity.
    EXPECT_NEAR(MarketShareFromData(m1, m2, beta) +
                    MarketShareFromData(m2, m1, beta),
                1.0, 1e-12);
    // Agreement with the definition where it is well conditioned.
    EXPECT_NEAR(MarketShareFromData(m1, m2, beta),
                static_cast<double>(oracle::NaiveShare(m1, m2, beta)), 1e-12);
    // Error-based share with err_i = m_i^{-r} equals data-based share with
    // beta = r * a.
    const double r = rate_dist(gen);
    const double a = beta / r;
    if (m1 > 1.0 && m2 > 1.0) {
      EXPECT_NEAR(MarketShareFromErrors(std::pow(m1, -r), std::pow(m2, -r), a),
                  MarketShareFromData(m1, m2, r * a), 1e-12);
    }
    // Monotone in own data.
    EXPECT_GT(MarketShareFromData(m1 * 1.01 + 1, m2, beta) + 1e-15,
              MarketShareFromData(m1, m2, beta));
  }
}

TEST(StationaryDistributionTest, Examples) {
  auto mu = StationaryDistribution({0.3, 0.3, 1});
  EXPECT_DOUBLE_EQ(mu.mu1, 0.5);
  EXPECT_DOUBLE_EQ(mu.mu2, 0.5);
  mu = StationaryDistribution({0.1, 0.2, 1});
  EXPECT_NEAR(mu.mu1, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(mu.mu2, 1.0 / 3.0, 1e-15);
  mu = StationaryDistribution({0.1, 0.2, 2});
  EXPECT_NEAR(mu.mu1, 0.8, 1e-15);
  EXPECT_NEAR(mu.mu2, 0.2, 1e-15);
}

TEST(StationaryDistributionTest, SolvesBalanceEquations) {
  for (double e1 : {0.05, 0.13, 0.4, 0.77}) {
    for (double e2 : {0.05, 0.21, 0.5, 0.9}) {
      for (int a : {1, 2, 3}) {
        double mu1 = 0, mu2 = 0;
        oracle::SolveTwoStateChain(std::pow(e1, a), std::pow(e2, a), &mu1,
                                   &mu2);
        const auto got = StationaryDistribution({e1, e2, a});
        EXPECT_NEAR(got.mu1, mu1, 1e-14);
        EXPECT_NEAR(got.mu2, mu2, 1e-14);
      }
      // a = 1 coincides with the error-based share.
      EXPECT_EQ(StationaryDistribution({e1, e2, 1}).mu1,
                MarketShareFromErrors(e1, e2, 1));
    }
  }
}

TEST(StationaryDistributionTest, RejectsInvalidModels) {
  EXPECT_THROW(StationaryDistribution({0.0, 0.2, 1}), DomainError);
  EXPECT_THROW(StationaryDistribution({0.1, 0.2, 0}), DomainError);
}

TEST(SimulateConsumerTest, ConvergesToStationaryShares) {
  constexpr std::int64_t kSteps = 1000000;
  auto sim = SimulateConsumer({0.5, 0.5, 1}, kSteps, 1);
  EXPECT_NEAR(sim.share1, 0.5, 0.01);
  sim = SimulateConsumer({0.1, 0.2, 1}, kSteps, 2);
  EXPECT_NEAR(sim.share1, 2.0 / 3.0, 0.01);
  sim = SimulateConsumer({0.1, 0.2, 2}, kSteps, 3);
  EXPECT_NEAR(sim.share1, 0.8, 0.01);
  EXPECT_NEAR(sim.share1 + sim.share2, 1.0, 1e-15);
}

TEST(SimulateConsumerTest, DeterministicGivenSeed) {
  const auto a = SimulateConsumer({0.2, 0.3, 2}, 10000, 99);
  const auto b = SimulateConsumer({0.2, 0.3, 2}, 10000, 99);
  const auto c = SimulateConsumer({0.2, 0.3, 2}, 10000, 100);
  EXPECT_EQ(a.share1, b.share1);
  EXPECT_NE(a.share1, c.share1);
  EXPECT_THROW(SimulateConsumer({0.2, 0.3, 2}, 0, 1), DomainError);
}

TEST(ZetaNormalizerTest, MatchesSummationOracle) {
  for (double k : {1.1, 1.5, 2.0, 3.0, 6.0}) {
    EXPECT_NEAR(ZetaNormalizer(k),
                static_cast<double>(oracle::ZetaBySummation(k, 2000000)),
                1e-11)
        << "k=" << k;
  }
  EXPECT_NEAR(ZetaNormalizer(2.0), M_PI * M_PI / 6.0, 1e-13);
  EXPECT_THROW(ZetaNormalizer(1.0), DomainError);
}

TEST(MissingMassTest, SingleDrawClosedForm) {
  // One draw from P(i) = i^-2 / zeta(2) leaves 1 - sum P(i)^2 =
  // 1 - zeta(4)/zeta(2)^2 = 0.6 unobserved.
  const auto est = EstimateMissingMass(2.0, 1, 200000, 5);
  EXPECT_NEAR(est.mean, 0.6, 4 * est.std_error + 1e-4);
}

TEST(MissingMassTest, MatchesExactSeries) {
  for (auto [k, m] : {std::pair{2.0, 10.0}, std::pair{2.0, 300.0},
                      std::pair{3.0, 50.0}, std::pair{1.5, 100.0}}) {
    const double exact = oracle::ExactExpectedMissingMass(k, m, 1000000);
    const auto est =
        EstimateMissingMass(k, static_cast<std::int64_t>(m), 2000, 11);
    EXPECT_NEAR(est.mean, exact, 4 * est.std_error + 2e-4)
        << "k=" << k << " m=" << m;
  }
}

TEST(MissingMassTest, NonIncreasingInDraws) {
  double prev = 1.0;
  double prev_se = 0.0;
  for (std::int64_t m : {1, 10, 100, 1000, 10000}) {
    const auto est = EstimateMissingMass(3.0, m, 100, 17);
    EXPECT_LE(est.mean, prev + 3 * std::hypot(est.std_error, prev_se));
    prev = est.mean;
    prev_se = est.std_error;
  }
}

TEST(MissingMassTest, HeavyTailDoesNotHang) {
  const auto est = EstimateMissingMass(1.02, 1000, 5, 3);
  EXPECT_GT(est.mean, 0.0);
  EXPECT_LE(est.mean, 1.0);
}

TEST(MissingMassTest, RejectsDivergentNormalizer) {
  EXPECT_THROW(EstimateMissingMass(1.0, 10, 10, 1), DomainError);
  EXPECT_THROW(EstimateMissingMass(0.5, 10, 10, 1), DomainError);
  EXPECT_THROW(EstimateMissingMass(2.0, 0, 10, 1), DomainError);
}

}  // namespace
}  // namespace datarace
