// Copyright 2026 The robust-rating Authors
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

#include <benchmark/benchmark.h>

#include "robust_rating/adversary.hpp"
#include "robust_rating/aggregators.hpp"
#include "robust_rating/regret.hpp"

namespace robust_rating {
namespace {

void BM_BeaObjective(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bea_objective(0.7, n, RatingScale(3), 0.5));
  }
}
BENCHMARK(BM_BeaObjective)->Arg(10)->Arg(20)->Arg(50);

void BM_SolveAStar(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_a_star(n, RatingScale(3), 0.5));
  }
}
BENCHMARK(BM_SolveAStar)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_ExactRegret(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const InformationStructure theta(CategoricalDistribution({0.3, 0.2, 0.5}),
                                   ParticipationProfile({0.5, 0.8, 1.0}, 0.5));
  const RegretQuery q{AggregatorSpec::polarizing(0.5), theta, SampleSize::finite(n)};
  for (auto _ : state) benchmark::DoNotOptimize(exact_regret(q));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(enumeration_size(theta, n)));
}
BENCHMARK(BM_ExactRegret)->Arg(10)->Arg(40)->Arg(100);

void BM_MonteCarloRegret(benchmark::State& state) {
  const InformationStructure theta(CategoricalDistribution({0.3, 0.2, 0.5}),
                                   ParticipationProfile({0.5, 0.8, 1.0}, 0.5));
  const RegretQuery q{AggregatorSpec::polarizing(0.5), theta, SampleSize::finite(50)};
  const auto trials = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(mc_regret(q, trials, 1));
  state.SetItemsProcessed(state.iterations() * trials);
}
BENCHMARK(BM_MonteCarloRegret)->Arg(10'000)->Unit(benchmark::kMillisecond);

void BM_WorstCaseTwoPoint(benchmark::State& state) {
  const auto spec = AggregatorSpec::balanced(20, RatingScale(3), 0.3);
  const auto families = default_families();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        worst_case(spec, SampleSize::finite(20), RatingScale(3), 0.3, families));
  }
}
BENCHMARK(BM_WorstCaseTwoPoint)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace robust_rating

BENCHMARK_MAIN();
