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

#include <cmath>
#include <vector>

#include <doctest.h>

#include "geopriv/errors.hpp"
#include "geopriv/random.hpp"
#include "support.hpp"

namespace geopriv {
namespace {

// Exact expectation of the raw estimate for one attribute by exhaustive
// enumeration of every owner's coin outcome. Each owner's response bit
// has three elementary outcomes: truth branch (prob p, reports the true
// bit), noise heads (prob (1-p)q, reports 1), noise tails (prob
// (1-p)(1-q), reports 0). Independent of the estimator's internals
// except for the raw value it assigns to each aggregate.
double enumerate_expected_raw(const std::vector<bool>& truth_bits,
                              const CoinPair& coins) {
  const std::size_t n = truth_bits.size();
  std::vector<int> leaf(n, 0);
  const double p = coins.p();
  const double q = coins.q();
  double expected = 0.0;
  while (true) {
    double prob = 1.0;
    std::uint64_t yes = 0;
    for (std::size_t i = 0; i < n; ++i) {
      switch (leaf[i]) {
        case 0:
          prob *= p;
          yes += truth_bits[i] ? 1 : 0;
          break;
        case 1:
          prob *= (1.0 - p) * q;
          yes += 1;
          break;
        default:
          prob *= (1.0 - p) * (1.0 - q);
          break;
      }
    }
    expected += prob * estimate_count(AggregateCount(yes, n), coins).raw;

    std::size_t pos = 0;
    while (pos < n && leaf[pos] == 2) leaf[pos++] = 0;
    if (pos == n) break;
    ++leaf[pos];
  }
  return expected;
}

TEST_CASE("aggregate count enforces 0 <= yes <= n") {
  CHECK_NOTHROW(AggregateCount(0, 1));
  CHECK_NOTHROW(AggregateCount(5, 5));
  CHECK_THROWS_AS(AggregateCount(6, 5), InvalidArgumentError);
  CHECK_THROWS_AS(AggregateCount(0, 0), InvalidArgumentError);
}

TEST_CASE("estimate_count inverts the channel expectation") {
  // 60 yes answers from 100 owners through the fair-coin channel:
  // (60 - 0.5 * 0.5 * 100) / 0.5 = 70.
  const Estimate e = estimate_count(AggregateCount(60, 100), CoinPair(0.5, 0.5));
  CHECK(e.raw == doctest::Approx(70.0).epsilon(1e-15));
  CHECK(e.clamped == doctest::Approx(70.0).epsilon(1e-15));

  // A truthful channel passes the count through.
  CHECK(estimate_count(AggregateCount(37, 100), CoinPair(1.0, 0.25)).raw ==
        doctest::Approx(37.0).epsilon(1e-15));

  // Yes-count exactly at the noise floor estimates zero.
  // (1-p) * q * N = 0.5 * 0.5 * 200 = 50.
  CHECK(estimate_count(AggregateCount(50, 200), CoinPair(0.5, 0.5)).raw ==
        doctest::Approx(0.0).epsilon(1e-15));

  // Below the noise floor the raw estimate goes negative; clamped does not.
  const Estimate low = estimate_count(AggregateCount(10, 200), CoinPair(0.5, 0.5));
  CHECK(low.raw < 0.0);
  CHECK(low.clamped == 0.0);

  CHECK_THROWS_AS(estimate_count(AggregateCount(10, 100), CoinPair(0.0, 0.5)),
                  DegenerateChannelError);
}

TEST_CASE("estimate_count is affine in the yes count") {
  const CoinPair coins(0.85, 0.5);
  const double base = estimate_count(AggregateCount(400, 1000), coins).raw;
  const double bumped = estimate_count(AggregateCount(401, 1000), coins).raw;
  CHECK(bumped - base == doctest::Approx(1.0 / coins.p()).epsilon(1e-12));
}

TEST_CASE("estimate_vector applies the inversion cell-wise") {
  const CoinPair coins(0.5, 0.5);
  const std::vector<AggregateCount> sums = {
      AggregateCount(60, 100), AggregateCount(25, 100), AggregateCount(40, 100)};
  const auto estimates = estimate_vector(sums, coins);
  REQUIRE(estimates.size() == 3);
  CHECK(estimates[0].raw == doctest::Approx(70.0));
  CHECK(estimates[1].raw == doctest::Approx(0.0));
  CHECK(estimates[2].raw == doctest::Approx(30.0));

  const std::vector<AggregateCount> mismatched = {AggregateCount(1, 10),
                                                  AggregateCount(1, 11)};
  CHECK_THROWS_AS(estimate_vector(mismatched, coins), MismatchedNError);
}

TEST_CASE("truthful per-cell estimates sum to the population") {
  // With p = 1 every owner contributes exactly its one-hot vector.
  const CoinPair coins(1.0, 0.5);
  const std::vector<AggregateCount> sums = {
      AggregateCount(30, 100), AggregateCount(50, 100), AggregateCount(20, 100)};
  double total = 0.0;
  for (const auto& e : estimate_vector(sums, coins)) total += e.raw;
  CHECK(total == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("stderr_of evaluates the response-variance formula") {
  // Deterministic extremes have zero variance.
  CHECK(stderr_of(100, CoinPair(1.0, 0.5), 0.0) == doctest::Approx(0.0));
  CHECK(stderr_of(100, CoinPair(1.0, 0.5), 1.0) == doctest::Approx(0.0));

  // P1 = 0.3 * 0.925 + 0.7 * 0.075 = 0.33.
  const double se = stderr_of(100000, CoinPair(0.85, 0.5), 0.3);
  CHECK(se == doctest::Approx(std::sqrt(100000 * 0.33 * 0.67) / 0.85)
                  .epsilon(1e-12));
  CHECK(se == doctest::Approx(174.9).epsilon(1e-3));

  // Standard deviation scales with sqrt(n).
  const CoinPair coins(0.6, 0.4);
  CHECK(stderr_of(4000, coins, 0.2) ==
        doctest::Approx(2.0 * stderr_of(1000, coins, 0.2)).epsilon(1e-12));

  CHECK_THROWS_AS(stderr_of(100, CoinPair(0.0, 0.5), 0.5),
                  DegenerateChannelError);
}

TEST_CASE("raw estimate is unbiased and its spread matches stderr_of") {
  // Monte Carlo at reduced scale; the acceptance suite runs the full
  // 1000-trial version. Each owner holds the attribute with probability
  // pi, which is the population model stderr_of describes (marginal
  // response probability P1 per owner).
  const std::size_t n_owners = 10000;
  const std::size_t trials = 250;
  const double pi = 0.3;
  const CoinPair coins(0.85, 0.5);

  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    RandomSource rng(derive_seed(555, t));
    std::uint64_t ones = 0;
    for (std::size_t i = 0; i < n_owners; ++i) {
      const bool truth = rng.next_unit() < pi;
      ones += rr_bit(truth, coins, rng) ? 1 : 0;
    }
    const double raw = estimate_count(AggregateCount(ones, n_owners), coins).raw;
    sum += raw;
    sum_sq += raw * raw;
  }
  const double mean = sum / trials;
  const double sd =
      std::sqrt((sum_sq - trials * mean * mean) / (trials - 1.0));
  const double se_one = stderr_of(n_owners, coins, pi);

  CHECK(std::abs(mean - pi * n_owners) <=
        4.0 * se_one / std::sqrt(static_cast<double>(trials)));
  // Sample sd is itself noisy at 250 trials: se(sd)/sd ~ 1/sqrt(2T) ~ 4.5%.
  CHECK(sd == doctest::Approx(se_one).epsilon(0.2));
}

TEST_CASE("per-cell raw estimates over a full grid sum to N in expectation") {
  // Every owner occupies exactly one of 4 cells; the summed raw
  // estimates must recover the population within combined sampling
  // error.
  const std::size_t owners = 20000;
  const std::size_t cells = 4;
  const CoinPair coins(0.5, 0.5);
  const std::vector<double> shares = {0.4, 0.3, 0.2, 0.1};

  RandomSource rng(derive_seed(777, 0));
  std::vector<std::uint64_t> sums(cells, 0);
  std::size_t owner = 0;
  for (std::size_t c = 0; c < cells; ++c) {
    const auto count = static_cast<std::size_t>(shares[c] * owners);
    for (std::size_t i = 0; i < count; ++i, ++owner) {
      for (std::size_t bit = 0; bit < cells; ++bit) {
        sums[bit] += rr_bit(bit == c, coins, rng) ? 1 : 0;
      }
    }
  }
  REQUIRE(owner == owners);

  double total_raw = 0.0;
  double combined_var = 0.0;
  for (std::size_t c = 0; c < cells; ++c) {
    const Estimate est = estimate_count(AggregateCount(sums[c], owners), coins);
    total_raw += est.raw;
    const double se = stderr_of(owners, coins, shares[c]);
    combined_var += se * se;
  }
  CHECK(std::abs(total_raw - static_cast<double>(owners)) <=
        4.0 * std::sqrt(combined_var));
}

TEST_CASE("exhaustive enumeration confirms the estimator is exactly unbiased") {
  // Every owner count up to 6 here (8 in the acceptance suite), over a
  // 2-cell layout: k owners in cell 0, the rest in cell 1.
  for (const CoinPair& coins :
       {CoinPair(0.5, 0.5), CoinPair(0.85, 0.5), CoinPair(0.3, 0.7)}) {
    for (std::size_t n = 1; n <= 6; ++n) {
      for (std::size_t k = 0; k <= n; ++k) {
        std::vector<bool> cell0(n, false), cell1(n, false);
        for (std::size_t i = 0; i < n; ++i) {
          cell0[i] = i < k;
          cell1[i] = i >= k;
        }
        CHECK(enumerate_expected_raw(cell0, coins) ==
              doctest::Approx(static_cast<double>(k)).epsilon(1e-9));
        CHECK(enumerate_expected_raw(cell1, coins) ==
              doctest::Approx(static_cast<double>(n - k)).epsilon(1e-9));
      }
    }
  }
}

}  // namespace
}  // namespace geopriv
