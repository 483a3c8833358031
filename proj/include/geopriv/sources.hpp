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

#ifndef GEOPRIV_SOURCES_HPP_
#define GEOPRIV_SOURCES_HPP_

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "geopriv/nmea.hpp"

namespace geopriv {

// A fix plus the monotonic instant it is due to be emitted. Sources
// compute schedules; pump_fixes does the waiting.
struct ScheduledFix {
  Fix fix;
  std::int64_t due_mono_ms = 0;
};

// Single-producer stream of fixes. next() never blocks; it returns the
// next fix and its due time, or nullopt at end of stream. Streams never
// yield quality == no_fix readings — those are filtered at this
// boundary. One active source per daemon instance.
class FixSource {
 public:
  virtual ~FixSource() = default;
  virtual std::optional<ScheduledFix> next() = 0;
};

// Replays a newline-delimited NMEA file. Fixes are spaced by the
// recorded inter-sentence times (from the embedded UTC time of day)
// divided by `speedup`; with throttle off everything is due immediately.
// Corrupt lines are counted and skipped — serial capture files contain
// garbage and replay must survive it.
class ReplaySource : public FixSource {
 public:
  ReplaySource(const std::filesystem::path& path, double speedup,
               bool throttle = true);

  std::optional<ScheduledFix> next() override;

  std::size_t skipped() const { return skipped_; }
  std::size_t fix_count() const { return fixes_.size(); }

 private:
  std::vector<ScheduledFix> fixes_;  // due times relative to start
  std::size_t skipped_ = 0;
  std::size_t pos_ = 0;
  std::int64_t start_mono_ms_ = 0;
  std::int64_t start_wall_ms_ = 0;
};

// Endless fix stream that walks the waypoint path at `speed_mps`,
// emitting `rate_hz` fixes per second and looping at the path end.
// Positions are deterministic functions of the parameters.
class SyntheticSource : public FixSource {
 public:
  SyntheticSource(std::vector<GeoPoint> waypoints, double speed_mps,
                  double rate_hz);

  std::optional<ScheduledFix> next() override;

  // Position after traveling `distance_m` along the looped path.
  GeoPoint position_at(double distance_m) const;

 private:
  std::vector<GeoPoint> waypoints_;
  std::vector<double> cumulative_m_;
  double speed_mps_;
  double rate_hz_;
  std::uint64_t tick_ = 0;
  std::int64_t start_mono_ms_ = 0;
  std::int64_t start_wall_ms_ = 0;
};

// Waits until each fix is due and hands it to `on_fix`. Returns when the
// stream ends, `on_fix` returns false, or `stop` becomes true (checked
// promptly even mid-wait).
void pump_fixes(FixSource& source, const std::function<bool(const Fix&)>& on_fix,
                const std::atomic<bool>& stop);

// Builds a source from a CLI spec:
//   nmea:<path>             NMEA replay (speedup/throttle as given)
//   synthetic:<lat>,<lon>;<lat>,<lon>[;...][@<speed_mps>][@<rate_hz>]
// A single waypoint yields a stationary stream. Throws
// InvalidArgumentError / IoError.
std::unique_ptr<FixSource> make_source(const std::string& spec, double speedup,
                                       bool throttle);

}  // namespace geopriv

#endif  // GEOPRIV_SOURCES_HPP_
