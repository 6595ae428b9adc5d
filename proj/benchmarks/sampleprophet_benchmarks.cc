// Copyright 2026 The Sampleprophet Authors.
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

#include <vector>

#include <benchmark/benchmark.h>

#include "sampleprophet/greedy.h"
#include "sampleprophet/instances.h"
#include "sampleprophet/median.h"
#include "sampleprophet/random.h"
#include "sampleprophet/sample_algorithms.h"
#include "sampleprophet/valuations.h"

namespace sampleprophet {
namespace {

ValuationProfile RandomProfile(int n, int m, int clauses, Rng& rng) {
  ValuationProfile profile;
  for (int i = 0; i < n; ++i) profile.push_back(RandomXos(m, clauses, rng));
  return profile;
}

void BM_ComputeDemand(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Rng rng = MakeStream(1, 0);
  XosValuation v = RandomXos(m, 8, rng);
  std::vector<double> prices(m, 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ComputeDemand(v, prices, ItemSet::All(m), TieRule::StrictExceed()));
  }
}
BENCHMARK(BM_ComputeDemand)->Arg(4)->Arg(16)->Arg(64);

void BM_ExhaustiveDemand(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Rng rng = MakeStream(2, 0);
  XosValuation v = RandomXos(m, 8, rng);
  std::vector<double> prices(m, 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ExhaustiveDemand(v, prices, ItemSet::All(m)));
  }
}
BENCHMARK(BM_ExhaustiveDemand)->Arg(4)->Arg(8)->Arg(12);

void BM_ModifiedGreedy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  Rng rng = MakeStream(3, 0);
  ValuationProfile profile = RandomProfile(n, m, 4, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ModifiedGreedy(profile, TieRule::StrictExceed()));
  }
}
BENCHMARK(BM_ModifiedGreedy)->Args({4, 4})->Args({16, 16})->Args({64, 32});

void BM_TwoSample(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  Rng rng = MakeStream(4, 0);
  GoogolInstance g = RandomGoogol(n, m, 3, 4, rng);
  uint64_t t = 0;
  for (auto _ : state) {
    Rng roll_rng = MakeStream(5, t);
    GoogolRoll roll = RollGoogol(g, roll_rng);
    benchmark::DoNotOptimize(TwoSample(roll.samples[0], roll.samples[1],
                                       roll.real, TieRule::Perturbation(t)));
    ++t;
  }
}
BENCHMARK(BM_TwoSample)->Args({4, 4})->Args({16, 16})->Args({64, 32});

void BM_BruteForceOpt(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  Rng rng = MakeStream(6, 0);
  ValuationProfile profile = RandomProfile(n, m, 3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(BruteForceOpt(profile));
}
BENCHMARK(BM_BruteForceOpt)->Args({3, 3})->Args({4, 4})->Args({4, 6});

void BM_ClauseEnumerationOpt(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  Rng rng = MakeStream(7, 0);
  ValuationProfile profile = RandomProfile(n, m, 3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(ClauseEnumerationOpt(profile));
}
BENCHMARK(BM_ClauseEnumerationOpt)->Args({4, 4})->Args({6, 20});

void BM_Tatonnement(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  Rng rng = MakeStream(8, 0);
  std::vector<ValuationProfile> samples(k);
  for (auto& profile : samples) profile.push_back(RandomUnitDemand(3, rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(TatonnementUnitDemand(samples, 0.1));
  }
}
BENCHMARK(BM_Tatonnement)->Arg(100)->Arg(400);

}  // namespace
}  // namespace sampleprophet

BENCHMARK_MAIN();
