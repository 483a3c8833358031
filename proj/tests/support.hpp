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

#ifndef GEOPRIV_TESTS_SUPPORT_HPP_
#define GEOPRIV_TESTS_SUPPORT_HPP_

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace geopriv::testing {

// Rng whose draws are given verbatim, for replaying documented
// draw-consumption traces.
class ScriptedRandom {
 public:
  explicit ScriptedRandom(std::vector<double> draws)
      : draws_(std::move(draws)) {}

  double next_unit() {
    if (next_ >= draws_.size()) {
      throw std::out_of_range("scripted rng exhausted");
    }
    return draws_[next_++];
  }

  std::size_t consumed() const { return next_; }

 private:
  std::vector<double> draws_;
  std::size_t next_ = 0;
};

// Rng that repeats one value forever.
class ConstantRandom {
 public:
  explicit ConstantRandom(double value) : value_(value) {}
  double next_unit() { return value_; }

 private:
  double value_;
};

// Standard error of a binomial proportion estimate.
inline double binomial_se(double p, std::size_t n) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

// Standard normal CDF.
inline double std_normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

}  // namespace geopriv::testing

#endif  // GEOPRIV_TESTS_SUPPORT_HPP_
