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

#include "geopriv/batch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "geopriv/errors.hpp"
#include "geopriv/random.hpp"

namespace geopriv::batch {

namespace {

// One owner's randomized response, accumulated without materializing the
// intermediate vectors. Must consume draws exactly like
// rr_vector(one_hot(cell)) — the serial reference checks that it does.
void accumulate_owner(const std::optional<CellIndex>& cell,
                      std::size_t cell_count, const CoinPair& coins,
                      RandomSource& rng, std::vector<std::uint64_t>& sums) {
  for (std::size_t c = 0; c < cell_count; ++c) {
    const bool truth = cell.has_value() && *cell == c;
    if (rr_bit(truth, coins, rng)) ++sums[c];
  }
}

}  // namespace

OwnerPlacement place_owners(std::size_t owners,
                            const std::vector<double>& proportions,
                            const GridSpec& grid) {
  if (proportions.size() != grid.cell_count()) {
    throw InvalidArgumentError(
        "distribution length does not match the grid cell count");
  }
  double total = 0.0;
  for (double p : proportions) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw InvalidArgumentError("cell proportions must be >= 0");
    }
    total += p;
  }
  if (total > 1.0 + 1e-9) {
    throw InvalidArgumentError("cell proportions must sum to <= 1");
  }

  // Largest-remainder quota: floor every cell's share, then hand the
  // leftover owners to the cells with the biggest fractional parts.
  const std::size_t cells = proportions.size();
  std::vector<std::uint64_t> counts(cells, 0);
  std::vector<std::pair<double, std::size_t>> remainders(cells);
  std::uint64_t placed = 0;
  std::uint64_t want = 0;
  {
    double want_f = 0.0;
    for (std::size_t c = 0; c < cells; ++c) {
      const double share = proportions[c] * static_cast<double>(owners);
      counts[c] = static_cast<std::uint64_t>(std::floor(share + 1e-9));
      remainders[c] = {share - static_cast<double>(counts[c]), c};
      placed += counts[c];
      want_f += share;
    }
    want = static_cast<std::uint64_t>(std::llround(want_f));
    want = std::min<std::uint64_t>(want, owners);
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  for (std::size_t i = 0; placed < want && i < remainders.size(); ++i) {
    ++counts[remainders[i].second];
    ++placed;
  }

  OwnerPlacement placement;
  placement.reserve(owners);
  for (std::size_t c = 0; c < cells; ++c) {
    placement.insert(placement.end(), counts[c], std::optional<CellIndex>(c));
  }
  placement.resize(owners, std::nullopt);  // remainder is off-grid
  return placement;
}

std::vector<std::uint64_t> truth_counts(const OwnerPlacement& placement,
                                        std::size_t cell_count) {
  std::vector<std::uint64_t> counts(cell_count, 0);
  for (const auto& cell : placement) {
    if (cell) ++counts[*cell];
  }
  return counts;
}

std::vector<std::uint64_t> privatize_population(const OwnerPlacement& placement,
                                                std::size_t cell_count,
                                                const CoinPair& coins,
                                                std::uint64_t seed,
                                                Execution exec) {
  std::vector<std::uint64_t> sums(cell_count, 0);
  const auto n = static_cast<std::int64_t>(placement.size());

  if (exec == Execution::serial) {
    // Reference path: materialize each owner's truth vector and push it
    // through the public rr_vector operation, one owner at a time.
    for (std::int64_t i = 0; i < n; ++i) {
      RandomSource rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
      CellVector truth(cell_count, 0);
      if (placement[i]) truth[*placement[i]] = 1;
      const CellVector response = rr_vector(truth, coins, rng);
      for (std::size_t c = 0; c < cell_count; ++c) sums[c] += response[c];
    }
    return sums;
  }

#pragma omp parallel
  {
    std::vector<std::uint64_t> local(cell_count, 0);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      RandomSource rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
      accumulate_owner(placement[i], cell_count, coins, rng, local);
    }
#pragma omp critical
    for (std::size_t c = 0; c < cell_count; ++c) sums[c] += local[c];
  }
  return sums;
}

std::vector<std::uint64_t> sum_cell_vectors(
    const std::vector<CellVector>& vectors, std::size_t cell_count,
    Execution exec) {
  for (const auto& v : vectors) {
    if (v.size() != cell_count) {
      throw InvalidArgumentError("bit-vector length does not match the grid");
    }
  }
  std::vector<std::uint64_t> sums(cell_count, 0);
  const auto n = static_cast<std::int64_t>(vectors.size());

  if (exec == Execution::serial) {
    for (std::int64_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < cell_count; ++c) sums[c] += vectors[i][c];
    }
    return sums;
  }

#pragma omp parallel
  {
    std::vector<std::uint64_t> local(cell_count, 0);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < cell_count; ++c) local[c] += vectors[i][c];
    }
#pragma omp critical
    for (std::size_t c = 0; c < cell_count; ++c) sums[c] += local[c];
  }
  return sums;
}

SimReport simulate(std::size_t owners, const GridSpec& grid,
                   const std::vector<double>& proportions,
                   const CoinPair& coins, std::uint64_t seed, Execution exec) {
  if (owners == 0) {
    throw InvalidArgumentError("simulation needs at least one owner");
  }
  const OwnerPlacement placement = place_owners(owners, proportions, grid);
  const auto truth = truth_counts(placement, grid.cell_count());
  const auto sums =
      privatize_population(placement, grid.cell_count(), coins, seed, exec);

  SimReport report;
  report.owners = owners;
  report.cells.reserve(grid.cell_count());
  for (std::size_t c = 0; c < grid.cell_count(); ++c) {
    SimCell cell;
    cell.cell_index = c;
    cell.center = cell_center(c, grid);
    cell.truth = truth[c];
    cell.yes_count = sums[c];
    cell.estimate = estimate_count(AggregateCount(sums[c], owners), coins);
    cell.abs_error =
        std::abs(cell.estimate.raw - static_cast<double>(cell.truth));
    cell.norm_error =
        cell.estimate.stderr_est > 0.0
            ? (cell.estimate.raw - static_cast<double>(cell.truth)) /
                  cell.estimate.stderr_est
            : 0.0;
    report.cells.push_back(cell);
  }
  return report;
}

}  // namespace geopriv::batch
