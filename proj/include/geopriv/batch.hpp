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

#ifndef GEOPRIV_BATCH_HPP_
#define GEOPRIV_BATCH_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "geopriv/estimator.hpp"
#include "geopriv/geo.hpp"
#include "geopriv/rr.hpp"

namespace geopriv::batch {

// The population-scale inner loops live here in two implementations.
// `serial` composes the public one_hot / rr_vector operations directly
// and is the reference; `parallel` is the OpenMP version that must
// produce bit-identical results (every owner draws from its own derived
// stream and the per-cell sums are exact integer adds, so the outcome
// cannot depend on scheduling). Tests compare the two; the bench target
// measures them.
enum class Execution { serial, parallel };

// Where each owner truly is: a cell index, or nullopt for off-grid
// (all-zeros truth vector).
using OwnerPlacement = std::vector<std::optional<CellIndex>>;

// Deterministic largest-remainder placement of `owners` over the grid
// cells by per-cell proportions (which must sum to <= 1; the remainder
// is placed off-grid). Throws InvalidArgumentError on a bad distribution.
OwnerPlacement place_owners(std::size_t owners,
                            const std::vector<double>& proportions,
                            const GridSpec& grid);

// True per-cell occupancy of a placement.
std::vector<std::uint64_t> truth_counts(const OwnerPlacement& placement,
                                        std::size_t cell_count);

// Runs every owner's one-hot truth vector through randomized response
// (owner i draws from the stream derive_seed(seed, i)) and sums the
// responses per cell.
std::vector<std::uint64_t> privatize_population(const OwnerPlacement& placement,
                                                std::size_t cell_count,
                                                const CoinPair& coins,
                                                std::uint64_t seed,
                                                Execution exec);

// Per-cell sums of already-privatized bit-vectors (the analyst-side
// aggregation). All vectors must have length cell_count; throws
// InvalidArgumentError on a dimension mismatch.
std::vector<std::uint64_t> sum_cell_vectors(
    const std::vector<CellVector>& vectors, std::size_t cell_count,
    Execution exec);

// One simulated population study.
struct SimCell {
  std::size_t cell_index = 0;
  GeoPoint center;
  std::uint64_t truth = 0;
  std::uint64_t yes_count = 0;
  Estimate estimate;
  double abs_error = 0.0;
  // (raw - truth) / stderr; how many standard errors the estimate missed by.
  double norm_error = 0.0;
};

struct SimReport {
  std::size_t owners = 0;
  std::vector<SimCell> cells;
};

// Places owners, privatizes every response, aggregates, and inverts the
// channel. Deterministic per seed, regardless of execution mode.
SimReport simulate(std::size_t owners, const GridSpec& grid,
                   const std::vector<double>& proportions,
                   const CoinPair& coins, std::uint64_t seed, Execution exec);

}  // namespace geopriv::batch

#endif  // GEOPRIV_BATCH_HPP_
