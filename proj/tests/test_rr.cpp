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

#include "geopriv/rr.hpp"

#include <cmath>
#include <vector>

#include <doctest.h>

#include "geopriv/errors.hpp"
#include "geopriv/random.hpp"
#include "support.hpp"

namespace geopriv {
namespace {

using testing::ConstantRandom;
using testing::ScriptedRandom;

TEST_CASE("coin pair construction enforces the bias domains") {
  CHECK_NOTHROW(CoinPair(0.0, 0.5));
  CHECK_NOTHROW(CoinPair(1.0, 0.5));
  CHECK_THROWS_AS(CoinPair(-0.1, 0.5), InvalidArgumentError);
  CHECK_THROWS_AS(CoinPair(1.1, 0.5), InvalidArgumentError);
  // A deterministic noise coin is rejected outright.
  CHECK_THROWS_AS(CoinPair(0.5, 0.0), InvalidArgumentError);
  CHECK_THROWS_AS(CoinPair(0.5, 1.0), InvalidArgumentError);
}

TEST_CASE("rr_bit follows the two-coin draw contract") {
  // p = 1: always truthful, consuming exactly one draw.
  {
    ScriptedRandom rng({0.999});
    CHECK(rr_bit(true, CoinPair(1.0, 0.3), rng) == true);
    CHECK(rng.consumed() == 1);
  }
  {
    ConstantRandom rng(0.42);
    CHECK(rr_bit(false, CoinPair(1.0, 0.9), rng) == false);
  }
  // p = 0 with a noise coin that practically always lands heads: the
  // truth is never consulted.
  {
    ScriptedRandom rng({0.5, 0.0});
    CHECK(rr_bit(false, CoinPair(0.0, 1.0 - 1e-12), rng) == true);
    CHECK(rng.consumed() == 2);
  }
  // Documented trace: u1 = 0.7 >= p flips the noise coin; u2 = 0.2 < q
  // reports heads.
  {
    ScriptedRandom rng({0.7, 0.2});
    CHECK(rr_bit(true, CoinPair(0.5, 0.5), rng) == true);
    CHECK(rng.consumed() == 2);
  }
  // Truth branch consumes exactly one draw.
  {
    ScriptedRandom rng({0.3});
    CHECK(rr_bit(false, CoinPair(0.5, 0.5), rng) == false);
    CHECK(rng.consumed() == 1);
  }
}

TEST_CASE("rr_vector privatizes bits independently in index order") {
  const CellVector truth = {1, 0, 0};

  // p = 1 reproduces the truth bit for bit.
  {
    ConstantRandom rng(0.2);
    CHECK(rr_vector(truth, CoinPair(1.0, 0.5), rng) == truth);
  }
  // p = 0 with an always-heads noise coin sets every bit.
  {
    ConstantRandom rng(0.5);
    CHECK(rr_vector(truth, CoinPair(0.0, 1.0 - 1e-12), rng) ==
          CellVector{1, 1, 1});
  }
  // Trace the shared stream across bits: bit 0 truthful (one draw),
  // bit 1 noise->heads (two draws), bit 2 noise->tails (two draws).
  {
    ScriptedRandom rng({0.1, 0.9, 0.3, 0.8, 0.7});
    CHECK(rr_vector(truth, CoinPair(0.5, 0.5), rng) == CellVector{1, 1, 0});
    CHECK(rng.consumed() == 5);
  }
  // Output length always matches input length.
  {
    RandomSource rng(1);
    CHECK(rr_vector(CellVector(17, 0), CoinPair(0.5, 0.5), rng).size() == 17);
  }
}

TEST_CASE("radius_privatize samples the disk per the documented draws") {
  const GeoPoint origin(48.0, 11.0);

  // Zero radius is the identity.
  {
    ConstantRandom rng(0.99);
    const GeoPoint out = radius_privatize(origin, 0.0, rng);
    CHECK(out.lat_deg == origin.lat_deg);
    CHECK(out.lon_deg == origin.lon_deg);
  }
  // u1 = 0.25, u2 = 0 -> 500 m due east of a 1000 m disk.
  {
    ScriptedRandom rng({0.25, 0.0});
    const GeoPoint out = radius_privatize(origin, 1000.0, rng);
    const auto [north, east] = deg_to_meters(out.lat_deg - origin.lat_deg,
                                             out.lon_deg - origin.lon_deg,
                                             origin);
    CHECK(east == doctest::Approx(500.0).epsilon(1e-9));
    CHECK(north == doctest::Approx(0.0).epsilon(1e-9));
  }
  // Containment at any seed.
  {
    RandomSource rng(1234);
    for (int i = 0; i < 1000; ++i) {
      const GeoPoint out = radius_privatize(origin, 500.0, rng);
      CHECK(haversine_m(origin, out) <= 501.0);
    }
  }
  CHECK_THROWS_AS(
      [] {
        ConstantRandom rng(0.5);
        radius_privatize(GeoPoint(89.5, 0.0), 100.0, rng);
      }(),
      PolarRegionError);
}

TEST_CASE("radius_privatize matches the uniform-disk moments") {
  const GeoPoint origin(40.0, -74.0);
  const double radius = 500.0;
  RandomSource rng(20260810);
  const int n = 10000;
  double sum_dist = 0.0;
  int within_half = 0;
  for (int i = 0; i < n; ++i) {
    const GeoPoint out = radius_privatize(origin, radius, rng);
    const double d = haversine_m(origin, out);
    REQUIRE(d <= radius + 1.0);
    sum_dist += d;
    if (d <= radius / 2.0) ++within_half;
  }
  // Uniform over the disk: E[d] = 2r/3, P(d <= r/2) = 1/4 by area.
  CHECK(sum_dist / n > 0.64 * radius);
  CHECK(sum_dist / n < 0.69 * radius);
  CHECK(within_half / static_cast<double>(n) == doctest::Approx(0.25).epsilon(0.08));
}

TEST_CASE("epsilon_of computes the channel log-ratio bound") {
  // p = 0: the output is independent of the truth.
  CHECK(epsilon_of(CoinPair(0.0, 0.3)) == doctest::Approx(0.0).epsilon(1e-15));
  // The canonical fair-coin channel: ln 3.
  CHECK(epsilon_of(CoinPair(0.5, 0.5)) ==
        doctest::Approx(std::log(3.0)).epsilon(1e-12));
  // Asymmetric q: the bound takes the worse of the two output ratios.
  {
    const CoinPair coins(0.5, 0.25);
    const double r1 = (0.5 + 0.5 * 0.25) / (0.5 * 0.25);
    const double r0 = (0.5 + 0.5 * 0.75) / (0.5 * 0.75);
    CHECK(epsilon_of(coins) ==
          doctest::Approx(std::log(std::max(r1, r0))).epsilon(1e-12));
  }
  CHECK_THROWS_AS(epsilon_of(CoinPair(1.0, 0.5)), NoPrivacyError);
}

TEST_CASE("coins_for_epsilon inverts epsilon_of on the symmetric family") {
  const CoinPair canonical = coins_for_epsilon(Epsilon(std::log(3.0)));
  CHECK(canonical.p() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(canonical.q() == 0.5);

  // Vanishing budget drives the truth coin toward never-heads.
  CHECK(coins_for_epsilon(Epsilon(1e-9)).p() ==
        doctest::Approx(0.0).epsilon(1e-6));

  for (double eps : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    CHECK(epsilon_of(coins_for_epsilon(Epsilon(eps))) ==
          doctest::Approx(eps).epsilon(1e-12));
  }

  CHECK_THROWS_AS(Epsilon(0.0), InvalidArgumentError);
  CHECK_THROWS_AS(Epsilon(-1.0), InvalidArgumentError);
}

TEST_CASE("empirical channel frequencies match the closed form") {
  const std::size_t trials = 200000;
  for (double p : {0.25, 0.5, 0.75, 0.9}) {
    for (double q : {0.25, 0.5, 0.75}) {
      const CoinPair coins(p, q);
      for (bool truth : {false, true}) {
        RandomSource rng(derive_seed(0xc0ffee, static_cast<std::uint64_t>(
                                                   p * 100 + q * 10 + truth)));
        std::size_t ones = 0;
        for (std::size_t i = 0; i < trials; ++i) {
          ones += rr_bit(truth, coins, rng) ? 1 : 0;
        }
        const double expected = coins.response_prob(truth);
        const double se = testing::binomial_se(expected, trials);
        CHECK(std::abs(ones / static_cast<double>(trials) - expected) <=
              4.0 * se);
      }
    }
  }
}

TEST_CASE("empirical privacy loss stays within the epsilon bound") {
  const std::size_t trials = 200000;
  for (double p : {0.25, 0.5, 0.75, 0.9}) {
    for (double q : {0.25, 0.5, 0.75}) {
      const CoinPair coins(p, q);
      std::size_t ones_true = 0, ones_false = 0;
      RandomSource rng_true(derive_seed(0xdead, static_cast<std::uint64_t>(
                                                    p * 1000 + q * 10)));
      RandomSource rng_false(derive_seed(0xbeef, static_cast<std::uint64_t>(
                                                     p * 1000 + q * 10)));
      for (std::size_t i = 0; i < trials; ++i) {
        ones_true += rr_bit(true, coins, rng_true) ? 1 : 0;
        ones_false += rr_bit(false, coins, rng_false) ? 1 : 0;
      }
      const double ratio = std::log(static_cast<double>(ones_true) /
                                    static_cast<double>(ones_false));
      CHECK(ratio <= epsilon_of(coins) + 0.05);
    }
  }
}

TEST_CASE("rr_vector output bits are pairwise uncorrelated") {
  const std::size_t cells = 6;
  const std::size_t samples = 50000;
  const CoinPair coins(0.5, 0.5);
  const CellVector zeros(cells, 0);

  std::vector<std::vector<std::uint8_t>> outputs;
  outputs.reserve(samples);
  RandomSource rng(31337);
  for (std::size_t s = 0; s < samples; ++s) {
    outputs.push_back(rr_vector(zeros, coins, rng));
  }

  const double mean = coins.response_prob(false);
  for (std::size_t a = 0; a < cells; ++a) {
    for (std::size_t b = a + 1; b < cells; ++b) {
      double cov = 0.0;
      for (const auto& out : outputs) {
        cov += (out[a] - mean) * (out[b] - mean);
      }
      cov /= static_cast<double>(samples);
      const double corr = cov / (mean * (1.0 - mean));
      // Correlation of independent bits is 0 within sampling error.
      CHECK(std::abs(corr) <= 4.0 / std::sqrt(static_cast<double>(samples)));
    }
  }
}

TEST_CASE("identical seeds reproduce identical outputs") {
  const CoinPair coins(0.6, 0.4);
  const CellVector truth = {1, 0, 1, 0, 0, 1, 0};

  RandomSource a(42), b(42);
  CHECK(rr_vector(truth, coins, a) == rr_vector(truth, coins, b));

  RandomSource c(42), d(42);
  const GeoPoint p(10.0, 20.0);
  const GeoPoint out_c = radius_privatize(p, 800.0, c);
  const GeoPoint out_d = radius_privatize(p, 800.0, d);
  CHECK(out_c.lat_deg == out_d.lat_deg);
  CHECK(out_c.lon_deg == out_d.lon_deg);

  RandomSource e(7), f(8);
  bool any_diff = false;
  for (int i = 0; i < 64 && !any_diff; ++i) {
    any_diff = rr_bit(false, coins, e) != rr_bit(false, coins, f);
  }
  CHECK(any_diff);
}

}  // namespace
}  // namespace geopriv
