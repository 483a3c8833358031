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

#include <algorithm>
#include <cmath>
#include <string>

namespace geopriv {

CoinPair::CoinPair(double p, double q) : p_(p), q_(q) {
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
    throw InvalidArgumentError("truth-coin bias p must lie in [0, 1]");
  }
  if (!std::isfinite(q) || q <= 0.0 || q >= 1.0) {
    throw InvalidArgumentError("noise-coin bias q must lie in (0, 1)");
  }
}

Epsilon::Epsilon(double value) : value_(value) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw InvalidArgumentError("epsilon must be positive and finite");
  }
}

double epsilon_of(const CoinPair& coins) {
  const double p = coins.p();
  const double q = coins.q();
  if (p >= 1.0) {
    throw NoPrivacyError("truthful channel (p = 1) has unbounded privacy loss");
  }
  const double r1 = (p + (1.0 - p) * q) / ((1.0 - p) * q);
  const double r0 = (p + (1.0 - p) * (1.0 - q)) / ((1.0 - p) * (1.0 - q));
  return std::log(std::max(r1, r0));
}

CoinPair coins_for_epsilon(const Epsilon& eps) {
  const double e = std::exp(eps.value());
  return CoinPair((e - 1.0) / (e + 1.0), 0.5);
}

}  // namespace geopriv
