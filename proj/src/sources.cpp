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

#include "geopriv/sources.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <thread>

#include "geopriv/clock.hpp"
#include "geopriv/errors.hpp"

namespace geopriv {

namespace {

constexpr std::int64_t kMsPerDay = 24 * 3600 * 1000;

// Forward difference of two times of day, tolerating one midnight wrap.
std::int64_t tod_delta_ms(std::int64_t prev, std::int64_t cur) {
  std::int64_t d = cur - prev;
  if (d < -kMsPerDay / 2) d += kMsPerDay;
  return d < 0 ? 0 : d;
}

}  // namespace

ReplaySource::ReplaySource(const std::filesystem::path& path, double speedup,
                           bool throttle) {
  if (!(speedup > 0.0)) {
    throw InvalidArgumentError("replay speedup must be positive");
  }
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open NMEA file: " + path.string());
  }
  start_mono_ms_ = mono_ms();
  start_wall_ms_ = wall_ms();
  std::string line;
  std::int64_t due = 0;
  std::optional<std::int64_t> prev_tod;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const NmeaParse parsed = parse_nmea(line);
    if (std::holds_alternative<NmeaError>(parsed)) {
      ++skipped_;
      continue;
    }
    if (std::holds_alternative<NotAFix>(parsed)) continue;
    Fix fix = std::get<Fix>(parsed);
    if (fix.quality == FixQuality::no_fix) continue;
    if (throttle) {
      if (prev_tod) {
        due += std::llround(
            static_cast<double>(tod_delta_ms(*prev_tod, fix.timestamp_ms)) /
            speedup);
      }
      prev_tod = fix.timestamp_ms;
    }
    // Rebase the sentence time of day onto the replay clock so stream
    // timestamps are monotone regardless of the recording date.
    fix.timestamp_ms = start_wall_ms_ + due;
    fixes_.push_back(ScheduledFix{fix, due});
  }
}

std::optional<ScheduledFix> ReplaySource::next() {
  if (pos_ >= fixes_.size()) return std::nullopt;
  ScheduledFix out = fixes_[pos_++];
  out.due_mono_ms += start_mono_ms_;
  return out;
}

SyntheticSource::SyntheticSource(std::vector<GeoPoint> waypoints,
                                 double speed_mps, double rate_hz)
    : waypoints_(std::move(waypoints)),
      speed_mps_(speed_mps),
      rate_hz_(rate_hz) {
  if (waypoints_.empty()) {
    throw InvalidArgumentError("synthetic source needs at least one waypoint");
  }
  if (waypoints_.size() == 1) waypoints_.push_back(waypoints_.front());
  if (!(speed_mps_ > 0.0)) {
    throw InvalidArgumentError("synthetic speed must be positive");
  }
  if (!(rate_hz_ > 0.0)) {
    throw InvalidArgumentError("synthetic rate must be positive");
  }
  cumulative_m_.resize(waypoints_.size(), 0.0);
  for (std::size_t i = 1; i < waypoints_.size(); ++i) {
    cumulative_m_[i] =
        cumulative_m_[i - 1] + haversine_m(waypoints_[i - 1], waypoints_[i]);
  }
  start_mono_ms_ = mono_ms();
  start_wall_ms_ = wall_ms();
}

GeoPoint SyntheticSource::position_at(double distance_m) const {
  const double total = cumulative_m_.back();
  if (total <= 0.0) return waypoints_.front();
  double d = std::fmod(distance_m, total);
  if (d < 0.0) d = 0.0;
  std::size_t seg = 1;
  while (seg < cumulative_m_.size() - 1 && cumulative_m_[seg] < d) ++seg;
  const double seg_len = cumulative_m_[seg] - cumulative_m_[seg - 1];
  const double t = seg_len <= 0.0 ? 0.0 : (d - cumulative_m_[seg - 1]) / seg_len;
  const GeoPoint& a = waypoints_[seg - 1];
  const GeoPoint& b = waypoints_[seg];
  return GeoPoint(a.lat_deg + t * (b.lat_deg - a.lat_deg),
                  a.lon_deg + t * (b.lon_deg - a.lon_deg));
}

std::optional<ScheduledFix> SyntheticSource::next() {
  const double t_s = static_cast<double>(tick_) / rate_hz_;
  const std::int64_t offset_ms = static_cast<std::int64_t>(
      std::llround(static_cast<double>(tick_) * 1000.0 / rate_hz_));
  ++tick_;
  Fix fix;
  fix.point = position_at(speed_mps_ * t_s);
  fix.timestamp_ms = start_wall_ms_ + offset_ms;
  fix.quality = FixQuality::gps;
  fix.num_satellites = 8;
  fix.hdop = 0.9;
  return ScheduledFix{fix, start_mono_ms_ + offset_ms};
}

void pump_fixes(FixSource& source,
                const std::function<bool(const Fix&)>& on_fix,
                const std::atomic<bool>& stop) {
  using namespace std::chrono;
  while (!stop.load(std::memory_order_relaxed)) {
    const auto scheduled = source.next();
    if (!scheduled) return;
    // Sleep in short slices so a stop request never waits out a long
    // inter-fix gap.
    while (!stop.load(std::memory_order_relaxed)) {
      const std::int64_t now = mono_ms();
      if (now >= scheduled->due_mono_ms) break;
      std::this_thread::sleep_for(
          milliseconds(std::min<std::int64_t>(scheduled->due_mono_ms - now, 20)));
    }
    if (stop.load(std::memory_order_relaxed)) return;
    if (!on_fix(scheduled->fix)) return;
  }
}

std::unique_ptr<FixSource> make_source(const std::string& spec, double speedup,
                                       bool throttle) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw InvalidArgumentError(
        "source spec must be nmea:<path> or synthetic:<waypoints>");
  }
  const std::string scheme = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  if (scheme == "nmea") {
    return std::make_unique<ReplaySource>(rest, speedup, throttle);
  }
  if (scheme != "synthetic") {
    throw InvalidArgumentError("unknown source scheme \"" + scheme + "\"");
  }
  // synthetic:<lat>,<lon>[;<lat>,<lon>...][@<speed_mps>][@<rate_hz>]
  double speed = 10.0, rate = 10.0;
  std::string points = rest;
  std::vector<std::string> at_parts;
  std::size_t at;
  while ((at = points.rfind('@')) != std::string::npos) {
    at_parts.insert(at_parts.begin(), points.substr(at + 1));
    points.resize(at);
    if (at_parts.size() == 2) break;
  }
  try {
    if (at_parts.size() >= 1 && !at_parts[0].empty()) speed = std::stod(at_parts[0]);
    if (at_parts.size() >= 2 && !at_parts[1].empty()) rate = std::stod(at_parts[1]);
  } catch (const std::exception&) {
    throw InvalidArgumentError("bad synthetic speed/rate in \"" + spec + "\"");
  }
  std::vector<GeoPoint> waypoints;
  std::size_t start = 0;
  while (start <= points.size()) {
    const std::size_t semi = points.find(';', start);
    const std::string token = points.substr(
        start, semi == std::string::npos ? std::string::npos : semi - start);
    const std::size_t comma = token.find(',');
    if (comma == std::string::npos) {
      throw InvalidArgumentError("bad waypoint \"" + token + "\"");
    }
    try {
      waypoints.emplace_back(std::stod(token.substr(0, comma)),
                             std::stod(token.substr(comma + 1)));
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw InvalidArgumentError("bad waypoint \"" + token + "\"");
    }
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return std::make_unique<SyntheticSource>(std::move(waypoints), speed, rate);
}

}  // namespace geopriv
