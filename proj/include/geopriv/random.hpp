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

#ifndef GEOPRIV_RANDOM_HPP_
#define GEOPRIV_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace geopriv {

// Deterministic stream of uniform draws in [0, 1). The same seed always
// produces the same stream (mt19937_64 output is fixed by the standard,
// and the uint64 -> double mapping below is explicit), so every coin flip
// in the system can be replayed.
//
// A RandomSource is single-consumer: the draw order is part of each
// mechanism's contract, so a stream must never be shared across
// concurrent callers. Allocate one per session / owner / trial and derive
// its seed with derive_seed.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  // Next uniform draw in [0, 1), using the top 53 bits of the engine
  // output so every representable value is an exact dyadic rational.
  double next_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer. Bijective 64-bit mix with full avalanche.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for the `index`-th child stream of `base`. Distinct indices give
// uncorrelated streams, which is what makes per-owner and per-session
// randomization both reproducible and schedule-independent.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(base + 0x9e3779b97f4a7c15ULL * index);
}

}  // namespace geopriv

#endif  // GEOPRIV_RANDOM_HPP_
