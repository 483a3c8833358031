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

#include "geopriv/estimator.hpp"

#include <algorithm>
#include <cmath>

#include "geopriv/errors.hpp"

namespace geopriv {

AggregateCount::AggregateCount(std::uint64_t yes, std::uint64_t n)
    : yes_count(yes), n_participants(n) {
  if (n == 0) {
    throw InvalidArgumentError("participant count must be positive");
  }
  if (yes > n) {
    throw InvalidArgumentError("yes count exceeds participant count");
  }
}

Estimate estimate_count(const AggregateCount& agg, const CoinPair& coins) {
  const double p = coins.p();
  if (p <= 0.0) {
    throw DegenerateChannelError(
        "p = 0 channel is pure noise; the inversion divides by zero");
  }
  const double n = static_cast<double>(agg.n_participants);
  const double noise_floor = (1.0 - p) * coins.q() * n;
  Estimate est;
  est.raw = (static_cast<double>(agg.yes_count) - noise_floor) / p;
  est.clamped = std::clamp(est.raw, 0.0, n);
  est.stderr_est = stderr_of(agg.n_participants, coins, est.clamped / n);
  return est;
}

std::vector<Estimate> estimate_vector(
    const std::vector<AggregateCount>& per_cell_sums, const CoinPair& coins) {
  std::vector<Estimate> out;
  out.reserve(per_cell_sums.size());
  for (const auto& agg : per_cell_sums) {
    if (agg.n_participants != per_cell_sums.front().n_participants) {
      throw MismatchedNError("per-cell aggregates disagree on participant count");
    }
    out.push_back(estimate_count(agg, coins));
  }
  return out;
}

double stderr_of(std::uint64_t n, const CoinPair& coins, double pi) {
  const double p = coins.p();
  if (p <= 0.0) {
    throw DegenerateChannelError(
        "p = 0 channel is pure noise; the inversion has no finite variance");
  }
  if (!(pi >= 0.0 && pi <= 1.0)) {
    throw InvalidArgumentError("proportion must lie in [0, 1]");
  }
  const double p1 = pi * coins.response_prob(true) +
                    (1.0 - pi) * coins.response_prob(false);
  return std::sqrt(static_cast<double>(n) * p1 * (1.0 - p1)) / p;
}

}  // namespace geopriv
