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

#ifndef GEOPRIV_CLOCK_HPP_
#define GEOPRIV_CLOCK_HPP_

#include <chrono>
#include <cstdint>

namespace geopriv {

// Monotonic milliseconds. Used for every schedule and staleness decision;
// never reported on the wire.
inline std::int64_t mono_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(steady_clock::now().time_since_epoch())
      .count();
}

// Wall-clock milliseconds since the Unix epoch. Used only for timestamps
// that leave the process.
inline std::int64_t wall_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch())
      .count();
}

}  // namespace geopriv

#endif  // GEOPRIV_CLOCK_HPP_
