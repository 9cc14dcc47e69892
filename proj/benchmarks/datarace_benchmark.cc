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


#include <cstdint>
#include <random>
#include <vector>

#include "benchmark/benchmark.h"
#include "datarace/analysis.h"
#include "datarace/equilibrium.h"
#include "datarace/game_core.h"
#include "datarace/market_model.h"

namespace datarace {
namespace {

std::vector<GameSpec> MakeSpecs(int count) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> log_size(0.0, 13.8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<GameSpec> specs;
  for (int i = 0; i < count; ++i) {
    specs.push_back({.x = std::exp(log_size(gen)),
                     .y = std::exp(log_size(gen)),
                     .n = std::exp(log_size(gen)),
                     .p = 0.3 * unit(gen),
                     .beta = 0.1 + 4 * unit(gen)});
  }
  return specs;
}

void BM_ComputeDeltas(benchmark::State& state) {
  const auto specs = MakeSpecs(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeDeltas(specs[i++ & 1023]));
  }
}
BENCHMARK(BM_ComputeDeltas);

void BM_SolveEquilibria(benchmark::State& state) {
  const auto specs = MakeSpecs(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveEquilibria(specs[i++ & 1023]));
  }
}
BENCHMARK(BM_SolveEquilibria);

void BM_BruteForceEquilibria(benchmark::State& state) {
  const PayoffMatrix matrix = ComputePayoffMatrix(
      {.x = 100, .y = 50, .n = 50, .p = 0.2, .beta = 1});
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(BruteForceEquilibria(matrix, grid));
  }
}
BENCHMARK(BM_BruteForceEquilibria)->Arg(100)->Arg(1000)->Arg(10000);

void BM_WelfareOrdering(benchmark::State& state) {
  const auto specs = MakeSpecs(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeWelfareOrdering(specs[i++ & 1023]));
  }
}
BENCHMARK(BM_WelfareOrdering);

void BM_MonotonicitySweep(benchmark::State& state) {
  const GameSpec spec{.x = 100, .y = 50, .n = 50, .p = 0.2, .beta = 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        MonotonicitySweep(spec, SweepParam::kPrice, 0.05, 0.35, 200));
  }
}
BENCHMARK(BM_MonotonicitySweep);

void BM_SimulateConsumer(benchmark::State& state) {
  const MarkovConsumerModel model{0.1, 0.2, static_cast<int>(state.range(0))};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SimulateConsumer(model, 100000, seed++));
  }
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_SimulateConsumer)->Arg(1)->Arg(3);

void BM_EstimateMissingMass(benchmark::State& state) {
  const std::int64_t m = state.range(0);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(EstimateMissingMass(2.0, m, 1, seed++));
  }
  state.SetItemsProcessed(state.iterations() * m);
}
BENCHMARK(BM_EstimateMissingMass)->Arg(1000)->Arg(100000);

}  // namespace
}  // namespace datarace

BENCHMARK_MAIN();
