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

#ifndef GEOPRIV_RR_HPP_
#define GEOPRIV_RR_HPP_

#include <cmath>
#include <cstddef>

#include "geopriv/errors.hpp"
#include "geopriv/geo.hpp"
#include "geopriv/random.hpp"

namespace geopriv {

// The two coin biases of the randomized-response channel. The first
// (truth) coin lands heads with probability p, in which case the true
// bit is reported; otherwise the second (noise) coin is flipped and its
// outcome reported. q in {0, 1} would make the noise branch
// deterministic and the privacy-loss bound undefined on one output, so
// those values are rejected at construction.
class CoinPair {
 public:
  CoinPair(double p, double q);

  double p() const { return p_; }
  double q() const { return q_; }

  // P(report 1 | truth). Closed form of the two-coin channel.
  double response_prob(bool truth) const {
    return (truth ? p_ : 0.0) + (1.0 - p_) * q_;
  }

 private:
  double p_;
  double q_;
};

// Differential-privacy budget. Strictly positive and finite; this is the
// config-facing quantity that policies bound.
class Epsilon {
 public:
  explicit Epsilon(double value);
  double value() const { return value_; }

 private:
  double value_;
};

// One randomized-response coin flip.
//
// Draw-consumption contract (fixed so seeded traces replay identically):
// one draw u1; if u1 < p the true bit is reported and no further draw is
// consumed; otherwise a second draw u2 is consumed and (u2 < q) is
// reported. Channel: P(1|1) = p + (1-p)q, P(1|0) = (1-p)q.
template <typename Rng>
bool rr_bit(bool truth, const CoinPair& coins, Rng& rng) {
  if (rng.next_unit() < coins.p()) {
    return truth;
  }
  return rng.next_unit() < coins.q();
}

// Randomized response applied independently to every bit, in index order
// 0..len-1, consuming draws from the shared stream per the rr_bit
// contract. The output may have zero, one, or many bits set.
template <typename Rng>
CellVector rr_vector(const CellVector& truth, const CoinPair& coins,
                     Rng& rng) {
  CellVector out(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) {
    out[i] = rr_bit(truth[i] != 0, coins, rng) ? 1 : 0;
  }
  return out;
}

// Uniform sample over the disk of radius radius_m centered on
// true_point. Consumes two draws: u1 sets the distance radius_m*sqrt(u1)
// (the sqrt gives uniform density over area), u2 sets the bearing
// 2*pi*u2 measured counterclockwise from due east. The longitude of the
// result is wrapped into [-180, 180]; radii large enough to cross a pole
// are rejected by GeoPoint construction.
template <typename Rng>
GeoPoint radius_privatize(const GeoPoint& true_point, double radius_m,
                          Rng& rng) {
  if (!(radius_m >= 0.0)) {
    throw InvalidArgumentError("privatization radius must be >= 0");
  }
  if (radius_m == 0.0) {
    return true_point;
  }
  const double u1 = rng.next_unit();
  const double u2 = rng.next_unit();
  const double d = radius_m * std::sqrt(u1);
  const double theta = 2.0 * 3.14159265358979323846 * u2;
  const double east_m = d * std::cos(theta);
  const double north_m = d * std::sin(theta);
  const auto [dlat, dlon] = meters_to_deg(north_m, east_m, true_point);
  double lon = true_point.lon_deg + dlon;
  if (lon > 180.0) lon -= 360.0;
  if (lon < -180.0) lon += 360.0;
  return GeoPoint(true_point.lat_deg + dlat, lon);
}

// Tightest privacy-loss bound of the channel: the log of the larger
// likelihood ratio over the two outputs,
//   ln max( P(1|1)/P(1|0), P(0|0)/P(0|1) ).
// Returns 0 when p = 0 (output independent of truth). Throws
// NoPrivacyError when p = 1, where the ratio is infinite.
double epsilon_of(const CoinPair& coins);

// The symmetric channel (q = 0.5) whose privacy loss is exactly eps:
// p = (e^eps - 1)/(e^eps + 1). Inverse of epsilon_of on that family.
CoinPair coins_for_epsilon(const Epsilon& eps);

}  // namespace geopriv

#endif  // GEOPRIV_RR_HPP_
