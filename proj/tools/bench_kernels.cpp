// Copyright 2026 The geopriv Authors
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

// Serial reference vs OpenMP kernels on the population-scale loops.
// Run: build/tools/bench_kernels [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include <vector>

#include "geopriv/batch.hpp"
#include "geopriv/random.hpp"

namespace {

using geopriv::CellVector;
using geopriv::CoinPair;
using geopriv::GeoPoint;
using geopriv::GridSpec;
using geopriv::batch::Execution;
using geopriv::batch::OwnerPlacement;

OwnerPlacement make_placement(std::size_t owners, std::size_t cells) {
  OwnerPlacement placement(owners);
  for (std::size_t i = 0; i < owners; ++i) {
    placement[i] = i % (cells + 1) == cells
                       ? std::nullopt
                       : std::optional<geopriv::CellIndex>(i % (cells + 1));
  }
  return placement;
}

void BM_privatize_population(benchmark::State& state, Execution exec) {
  const auto owners = static_cast<std::size_t>(state.range(0));
  const auto cells = static_cast<std::size_t>(state.range(1));
  const OwnerPlacement placement = make_placement(owners, cells);
  const CoinPair coins(0.5, 0.5);
  for (auto _ : state) {
    auto sums = geopriv::batch::privatize_population(placement, cells, coins,
                                                     42, exec);
    benchmark::DoNotOptimize(sums);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(owners * cells));
}

void BM_sum_cell_vectors(benchmark::State& state, Execution exec) {
  const auto records = static_cast<std::size_t>(state.range(0));
  const auto cells = static_cast<std::size_t>(state.range(1));
  geopriv::RandomSource rng(7);
  std::vector<CellVector> vectors(records);
  for (auto& v : vectors) {
    v.resize(cells);
    for (auto& bit : v) bit = rng.next_unit() < 0.3 ? 1 : 0;
  }
  for (auto _ : state) {
    auto sums = geopriv::batch::sum_cell_vectors(vectors, cells, exec);
    benchmark::DoNotOptimize(sums);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(records * cells));
}

}  // namespace

BENCHMARK_CAPTURE(BM_privatize_population, serial, Execution::serial)
    ->Args({1 << 14, 16})
    ->Args({1 << 17, 16})
    ->Args({1 << 14, 256})
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_privatize_population, parallel, Execution::parallel)
    ->Args({1 << 14, 16})
    ->Args({1 << 17, 16})
    ->Args({1 << 14, 256})
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_sum_cell_vectors, serial, Execution::serial)
    ->Args({1 << 15, 64})
    ->Args({1 << 17, 64})
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_sum_cell_vectors, parallel, Execution::parallel)
    ->Args({1 << 15, 64})
    ->Args({1 << 17, 64})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
