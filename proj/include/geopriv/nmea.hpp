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

#ifndef GEOPRIV_NMEA_HPP_
#define GEOPRIV_NMEA_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "geopriv/geo.hpp"

namespace geopriv {

enum class FixQuality { no_fix, gps, dgps };

// One timestamped position reading.
//
// parse_nmea fills timestamp_ms with the sentence's UTC time of day in
// milliseconds (GGA carries no date); replay rebases it to the emission
// wall clock, so within any one stream timestamps are monotone
// non-decreasing. A no_fix reading carries no usable point and is
// filtered out at the source boundary.
struct Fix {
  GeoPoint point;
  std::int64_t timestamp_ms = 0;
  FixQuality quality = FixQuality::no_fix;
  int num_satellites = 0;
  std::optional<double> hdop;
};

// A valid sentence of a type that carries no 2-D position (GSV, VTG, ...).
struct NotAFix {};

struct NmeaError {
  enum class Kind { bad_checksum, bad_field_count, bad_number };
  Kind kind;
  std::string field;  // the offending field or a framing description
};

using NmeaParse = std::variant<Fix, NotAFix, NmeaError>;

// Decodes one `$...*hh` sentence. The checksum (XOR of every byte
// between `$` and `*`) is verified first; GGA and RMC sentences then
// yield a Fix, any other well-formed sentence yields NotAFix. Latitude
// ddmm.mmmm / longitude dddmm.mmmm fields are converted to signed
// decimal degrees via N/S/E/W.
NmeaParse parse_nmea(std::string_view line);

// XOR of all bytes of `payload` (the text between `$` and `*`).
std::uint8_t nmea_checksum(std::string_view payload);

// Frames a payload as `$<payload>*HH` with the checksum rendered as two
// uppercase hex digits.
std::string make_nmea_sentence(std::string_view payload);

}  // namespace geopriv

#endif  // GEOPRIV_NMEA_HPP_
