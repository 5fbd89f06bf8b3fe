// Copyright 2026 The throttlesim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Microbenchmarks for the simulation hot paths: whole episodes, the
// hindsight knapsack and the two LP benchmarks.

#include <cstdint>
#include <vector>

#include "benchmark/benchmark.h"
#include "throttlesim/benchmarks.h"
#include "throttlesim/instances.h"
#include "throttlesim/model.h"
#include "throttlesim/rng.h"
#include "throttlesim/strategies.h"

namespace throttlesim {
namespace {

void BM_OgdCbEpisode(benchmark::State& state) {
  const Instance inst = MakeGapInstance(state.range(0));
  const InfoMode mode = state.range(1) ? InfoMode::kPartial : InfoMode::kFull;
  uint64_t seed = 0;
  for (auto _ : state) {
    OgdCbStrategy s(inst.horizon, inst.rho, inst.vmax);
    const Trajectory t =
        RunEpisode(s, inst, EpisodeConfig::ForInstance(inst, mode, ++seed));
    benchmark::DoNotOptimize(t.total_reward);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_OgdCbEpisode)
    ->ArgsProduct({{1 << 12, 1 << 16}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

void BM_PacingEpisode(benchmark::State& state) {
  const Instance inst = MakeGapInstance(state.range(0));
  uint64_t seed = 0;
  for (auto _ : state) {
    PacingStrategy s(PacingState::Default(inst.horizon, inst.rho, inst.vmax));
    const Trajectory t = RunEpisode(
        s, inst, EpisodeConfig::ForInstance(inst, InfoMode::kFull, ++seed));
    benchmark::DoNotOptimize(t.total_reward);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PacingEpisode)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

// Hindsight solve on a random grid-aligned instance with `range(1)` price
// atoms, which selects the top-k, two-class or DP path.
void BM_Hindsight(benchmark::State& state) {
  const int64_t horizon = state.range(0);
  const Instance inst =
      MakeRandomInstance(11, 4, static_cast<int>(state.range(1)), 0.2, horizon);
  auto skip = MakeAlwaysSkip();
  const Trajectory t = RunEpisode(
      *skip, inst, EpisodeConfig::ForInstance(inst, InfoMode::kFull, 1));
  for (auto _ : state) {
    const HindsightResult h = HindsightOpt(t, inst.budget(), inst.price_grid);
    benchmark::DoNotOptimize(h.value);
  }
  state.SetItemsProcessed(state.iterations() * horizon);
}
BENCHMARK(BM_Hindsight)
    ->ArgsProduct({{1 << 12, 1 << 15}, {1, 2, 4}})
    ->Unit(benchmark::kMillisecond);

void BM_FluidAndDlp(benchmark::State& state) {
  const int support = static_cast<int>(state.range(0));
  const Instance inst = MakeRandomInstance(5, support, support, 0.1, 1000);
  const auto& f = *inst.value_distribution();
  const auto& g = *inst.price_distribution();
  for (auto _ : state) {
    benchmark::DoNotOptimize(FluidOpt(f, g, inst.rho).per_round_value);
    benchmark::DoNotOptimize(DlpOpt(f, g, inst.rho).per_round_value);
  }
}
BENCHMARK(BM_FluidAndDlp)->Arg(4)->Arg(32)->Arg(100);

}  // namespace
}  // namespace throttlesim

BENCHMARK_MAIN();
