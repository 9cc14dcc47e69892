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

#include "datarace/game_core.h"

#include <cmath>
#include <string>

#include "datarace/errors.h"
#include "datarace/market_model.h"
#include "numeric.h"

namespace datarace {

void ValidateSpec(const GameSpec& spec) {
  auto fail = [](const std::string& msg) { throw DomainError(msg); };
  if (!std::isfinite(spec.x) || !std::isfinite(spec.y) ||
      !std::isfinite(spec.n) || !std::isfinite(spec.p) ||
      !std::isfinite(spec.beta) || !std::isfinite(spec.r)) {
    fail("game parameters must be finite");
  }
  if (spec.x < 1.0) fail("x must be >= 1, got " + std::to_string(spec.x));
  if (spec.y < 1.0) fail("y must be >= 1, got " + std::to_string(spec.y));
  if (!(spec.n > 0.0)) fail("n must be > 0, got " + std::to_string(spec.n));
  if (!(spec.beta > 0.0)) {
    fail("beta must be > 0, got " + std::to_string(spec.beta));
  }
  if (!(spec.r > 0.0 && spec.r <= 1.0)) {
    fail("r must lie in (0,1], got " + std::to_string(spec.r));
  }
}

std::string ProfileName(StrategyProfile s) {
  auto name = [](Action a) { return a == Action::kBuy ? "B" : "NB"; };
  return std::string("(") + name(s.firm1) + "," + name(s.firm2) + ")";
}

DataCounts RealizedData(const GameSpec& spec, StrategyProfile s) {
  if (s == kBuyBuy) {
    throw PreconditionError("(B,B) resolves to (B,NB) or (NB,B) by coin flip");
  }
  if (s == kBuyNotBuy) return {spec.x + spec.n, spec.y};
  if (s == kNotBuyBuy) return {spec.x, spec.y + spec.n};
  return {spec.x, spec.y};
}

PayoffMatrix ComputePayoffMatrix(const GameSpec& spec) {
  ValidateSpec(spec);
  const double ms_firm1_bought =
      MarketShareFromData(spec.x + spec.n, spec.y, spec.beta);
  const double ms_firm2_bought =
      MarketShareFromData(spec.x, spec.y + spec.n, spec.beta);
  const double ms_status_quo = MarketShareFromData(spec.x, spec.y, spec.beta);
  const double p = spec.p;

  std::array<double, 4> u1{};
  std::array<double, 4> u2{};
  u1[ProfileIndex(kBuyBuy)] = 0.5 * (ms_firm1_bought + ms_firm2_bought - p);
  u1[ProfileIndex(kBuyNotBuy)] = ms_firm1_bought - p;
  u1[ProfileIndex(kNotBuyBuy)] = ms_firm2_bought;
  u1[ProfileIndex(kNotBuyNotBuy)] = ms_status_quo;

  u2[ProfileIndex(kBuyBuy)] =
      0.5 * ((1.0 - ms_firm1_bought) + (1.0 - ms_firm2_bought) - p);
  u2[ProfileIndex(kBuyNotBuy)] = 1.0 - ms_firm1_bought;
  u2[ProfileIndex(kNotBuyBuy)] = (1.0 - ms_firm2_bought) - p;
  u2[ProfileIndex(kNotBuyNotBuy)] = 1.0 - ms_status_quo;
  return PayoffMatrix(u1, u2);
}

DeltaQuantities ComputeDeltas(const GameSpec& spec) {
  ValidateSpec(spec);
  using Real = long double;
  const Real beta = spec.beta;
  const Real x = spec.x;
  const Real y = spec.y;
  const Real n = spec.n;
  const Real log_x = std::log(x);
  const Real log_y = std::log(y);
  const Real log_xn = std::log(x + n);
  const Real log_yn = std::log(y + n);
  // Growth of each firm's log data count when it gets the corpus.
  const Real grow_x = std::log1p(n / x);
  const Real grow_y = std::log1p(n / y);

  // Shares are Logistic(beta * (ln m_own - ln m_other)); each delta is a
  // difference of two logistics with an exactly known argument gap.
  DeltaQuantities out;
  out.c = internal::LogisticDifference(beta * (log_xn - log_y),
                                       beta * (log_x - log_y), beta * grow_x);
  out.d = internal::LogisticDifference(beta * (log_yn - log_x),
                                       beta * (log_y - log_x), beta * grow_y);
  out.a = internal::LogisticDifference(beta * (log_xn - log_y),
                                       beta * (log_x - log_yn),
                                       beta * (grow_x + grow_y));
  return out;
}

DeviationGains ComputeDeviationGains(const GameSpec& spec) {
  const DeltaQuantities deltas = ComputeDeltas(spec);
  const double p = spec.p;
  return DeviationGains{(deltas.a - p) / 2.0, deltas.c - p, (deltas.a - p) / 2.0,
                        deltas.d - p};
}

}  // namespace datarace
