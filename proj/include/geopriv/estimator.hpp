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

#ifndef GEOPRIV_ESTIMATOR_HPP_
#define GEOPRIV_ESTIMATOR_HPP_

#include <cstdint>
#include <vector>

#include "geopriv/rr.hpp"

namespace geopriv {

// Summed randomized responses for one attribute: yes_count "yes" answers
// out of n_participants owners.
struct AggregateCount {
  std::uint64_t yes_count = 0;
  std::uint64_t n_participants = 0;

  AggregateCount() = default;
  AggregateCount(std::uint64_t yes, std::uint64_t n);
};

// Inverted population estimate. `raw` is the unbiased value and may fall
// outside [0, N] on noisy samples; `clamped` is raw restricted to that
// range; `stderr_est` is the standard deviation of raw under independent
// responses, evaluated at the plug-in proportion clamped / N.
struct Estimate {
  double raw = 0.0;
  double clamped = 0.0;
  double stderr_est = 0.0;
};

// Unbiased inversion of the randomized-response channel:
//   raw = (yes_count - (1-p) * q * N) / p.
// Throws DegenerateChannelError when p = 0 (responses carry no
// information about the truth).
Estimate estimate_count(const AggregateCount& agg, const CoinPair& coins);

// estimate_count applied cell-wise. All cells must share one participant
// count; throws MismatchedNError otherwise.
std::vector<Estimate> estimate_vector(
    const std::vector<AggregateCount>& per_cell_sums, const CoinPair& coins);

// Standard deviation of the raw estimate over n independent responses
// when a proportion pi of owners truly hold the attribute:
//   P1 = pi * (p + (1-p)q) + (1-pi) * (1-p)q,
//   stderr = sqrt(n * P1 * (1 - P1)) / p.
double stderr_of(std::uint64_t n, const CoinPair& coins, double pi);

}  // namespace geopriv

#endif  // GEOPRIV_ESTIMATOR_HPP_
