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

#include "geopriv/nmea.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <vector>

namespace geopriv {

namespace {

using Kind = NmeaError::Kind;

NmeaError err(Kind kind, std::string field) {
  return NmeaError{kind, std::move(field)};
}

std::vector<std::string_view> split_fields(std::string_view payload) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = payload.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(payload.substr(start));
      return fields;
    }
    fields.push_back(payload.substr(start, comma - start));
    start = comma + 1;
  }
}

std::optional<double> parse_double(std::string_view s) {
  double value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

std::optional<int> parse_int(std::string_view s) {
  int value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

// ddmm.mmmm (lat, deg_digits=2) or dddmm.mmmm (lon, deg_digits=3) to
// decimal degrees: dd + mm.mmmm / 60.
std::optional<double> parse_coordinate(std::string_view s, int deg_digits) {
  if (s.size() < static_cast<std::size_t>(deg_digits) + 2) return std::nullopt;
  for (int i = 0; i < deg_digits; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
  }
  int degrees = 0;
  std::from_chars(s.data(), s.data() + deg_digits, degrees);
  const auto minutes = parse_double(s.substr(deg_digits));
  if (!minutes || *minutes < 0.0 || *minutes >= 60.0) return std::nullopt;
  return degrees + *minutes / 60.0;
}

// hhmmss[.sss] UTC time of day to milliseconds since midnight.
std::optional<std::int64_t> parse_time_of_day(std::string_view s) {
  if (s.size() < 6) return std::nullopt;
  const auto hh = parse_int(s.substr(0, 2));
  const auto mm = parse_int(s.substr(2, 2));
  const auto fractional = parse_double(s.substr(4));
  if (!hh || !mm || !fractional) return std::nullopt;
  if (*hh > 23 || *mm > 59 || *fractional >= 61.0) return std::nullopt;
  return (static_cast<std::int64_t>(*hh) * 3600 + *mm * 60) * 1000 +
         static_cast<std::int64_t>(std::llround(*fractional * 1000.0));
}

struct Position {
  GeoPoint point;
  bool valid = false;
};

// Fields: lat, N/S, lon, E/W. `allow_empty` accepts a sentence with all
// four blank (a receiver with no fix).
std::variant<Position, NmeaError> parse_position(
    std::string_view lat, std::string_view ns, std::string_view lon,
    std::string_view ew, bool allow_empty) {
  if (lat.empty() && lon.empty()) {
    if (allow_empty) return Position{};
    return err(Kind::bad_number, "latitude");
  }
  const auto lat_val = parse_coordinate(lat, 2);
  if (!lat_val) return err(Kind::bad_number, std::string(lat));
  const auto lon_val = parse_coordinate(lon, 3);
  if (!lon_val) return err(Kind::bad_number, std::string(lon));
  double signed_lat = 0, signed_lon = 0;
  if (ns == "N") {
    signed_lat = *lat_val;
  } else if (ns == "S") {
    signed_lat = -*lat_val;
  } else {
    return err(Kind::bad_number, std::string(ns));
  }
  if (ew == "E") {
    signed_lon = *lon_val;
  } else if (ew == "W") {
    signed_lon = -*lon_val;
  } else {
    return err(Kind::bad_number, std::string(ew));
  }
  if (signed_lat < -90.0 || signed_lat > 90.0 || signed_lon < -180.0 ||
      signed_lon > 180.0) {
    return err(Kind::bad_number, std::string(lat));
  }
  Position pos;
  pos.point = GeoPoint(signed_lat, signed_lon);
  pos.valid = true;
  return pos;
}

NmeaParse parse_gga(const std::vector<std::string_view>& f) {
  // $--GGA,time,lat,N/S,lon,E/W,quality,numsat,hdop,...
  if (f.size() < 9) return err(Kind::bad_field_count, "GGA");
  const auto quality_raw = f[6].empty() ? std::optional<int>(0) : parse_int(f[6]);
  if (!quality_raw || *quality_raw < 0) {
    return err(Kind::bad_number, std::string(f[6]));
  }
  Fix fix;
  fix.quality = *quality_raw == 0   ? FixQuality::no_fix
                : *quality_raw == 1 ? FixQuality::gps
                                    : FixQuality::dgps;
  const bool allow_empty = fix.quality == FixQuality::no_fix;
  auto pos = parse_position(f[2], f[3], f[4], f[5], allow_empty);
  if (auto* e = std::get_if<NmeaError>(&pos)) return *e;
  fix.point = std::get<Position>(pos).point;
  if (fix.quality != FixQuality::no_fix && !std::get<Position>(pos).valid) {
    return err(Kind::bad_number, "latitude");
  }
  if (!f[1].empty()) {
    const auto tod = parse_time_of_day(f[1]);
    if (!tod) return err(Kind::bad_number, std::string(f[1]));
    fix.timestamp_ms = *tod;
  }
  if (!f[7].empty()) {
    const auto sats = parse_int(f[7]);
    if (!sats || *sats < 0) return err(Kind::bad_number, std::string(f[7]));
    fix.num_satellites = *sats;
  }
  if (!f[8].empty()) {
    const auto hdop = parse_double(f[8]);
    if (!hdop || *hdop < 0.0) return err(Kind::bad_number, std::string(f[8]));
    fix.hdop = *hdop;
  }
  return fix;
}

NmeaParse parse_rmc(const std::vector<std::string_view>& f) {
  // $--RMC,time,status,lat,N/S,lon,E/W,speed,track,date,...
  if (f.size() < 7) return err(Kind::bad_field_count, "RMC");
  Fix fix;
  if (f[2] == "A") {
    fix.quality = FixQuality::gps;
  } else if (f[2] == "V" || f[2].empty()) {
    fix.quality = FixQuality::no_fix;
  } else {
    return err(Kind::bad_number, std::string(f[2]));
  }
  auto pos = parse_position(f[3], f[4], f[5], f[6],
                            fix.quality == FixQuality::no_fix);
  if (auto* e = std::get_if<NmeaError>(&pos)) return *e;
  fix.point = std::get<Position>(pos).point;
  if (fix.quality != FixQuality::no_fix && !std::get<Position>(pos).valid) {
    return err(Kind::bad_number, "latitude");
  }
  if (!f[1].empty()) {
    const auto tod = parse_time_of_day(f[1]);
    if (!tod) return err(Kind::bad_number, std::string(f[1]));
    fix.timestamp_ms = *tod;
  }
  return fix;
}

}  // namespace

std::uint8_t nmea_checksum(std::string_view payload) {
  std::uint8_t sum = 0;
  for (char c : payload) sum ^= static_cast<std::uint8_t>(c);
  return sum;
}

std::string make_nmea_sentence(std::string_view payload) {
  char buf[4];
  std::snprintf(buf, sizeof buf, "*%02X", nmea_checksum(payload));
  return "$" + std::string(payload) + buf;
}

NmeaParse parse_nmea(std::string_view line) {
  // Tolerate trailing CR/LF and surrounding whitespace.
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r' ||
                           line.back() == ' ')) {
    line.remove_suffix(1);
  }
  if (line.empty() || line.front() != '$') {
    return err(Kind::bad_checksum, "missing $ framing");
  }
  const std::size_t star = line.rfind('*');
  if (star == std::string_view::npos || star + 3 != line.size()) {
    return err(Kind::bad_checksum, "missing *hh checksum");
  }
  const std::string_view payload = line.substr(1, star - 1);
  unsigned declared = 0;
  const auto* cs = line.data() + star + 1;
  auto [ptr, ec] = std::from_chars(cs, cs + 2, declared, 16);
  if (ec != std::errc{} || ptr != cs + 2) {
    return err(Kind::bad_checksum, std::string(line.substr(star + 1)));
  }
  if (nmea_checksum(payload) != declared) {
    return err(Kind::bad_checksum, std::string(line.substr(star + 1)));
  }
  const auto fields = split_fields(payload);
  if (fields.empty() || fields[0].size() < 3) {
    return err(Kind::bad_field_count, std::string(fields.empty() ? "" : fields[0]));
  }
  const std::string_view type = fields[0].substr(fields[0].size() - 3);
  if (type == "GGA") return parse_gga(fields);
  if (type == "RMC") return parse_rmc(fields);
  return NotAFix{};
}

}  // namespace geopriv
