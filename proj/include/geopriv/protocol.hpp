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

#ifndef GEOPRIV_PROTOCOL_HPP_
#define GEOPRIV_PROTOCOL_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "geopriv/geo.hpp"
#include "geopriv/policy.hpp"

namespace geopriv {

// Default listen port. One above the conventional GPS daemon port so
// both can coexist on a device.
inline constexpr std::uint16_t kDefaultPort = 2948;

enum class ErrorCode {
  capacity,
  denied,
  bad_request,
  already_subscribed,
  rate_limited,
};

const char* to_string(ErrorCode code);

struct SubscribeMsg {
  std::string app_id;
  RequestedParams params;
};

struct UnsubscribeMsg {};

// A line that is not a well-formed request. `detail` says why.
struct MalformedMsg {
  std::string detail;
};

using ClientMsg = std::variant<SubscribeMsg, UnsubscribeMsg, MalformedMsg>;

// Parses one client line. Unknown message types and unknown fields are
// malformed — the daemon takes no hints from input it does not
// understand.
ClientMsg parse_client_line(std::string_view line);

// Serialized server messages, newline-terminated UTF-8 JSON.
std::string ack_line(const EffectiveConfig& eff);
std::string report_radius_line(std::uint64_t seq, const GeoPoint& p,
                               std::int64_t ts_ms);
std::string report_grid_line(std::uint64_t seq, const CellVector& cells,
                             std::int64_t ts_ms);
std::string report_stale_line(std::uint64_t seq, std::int64_t ts_ms);
std::string error_line(ErrorCode code, const std::string& detail);

nlohmann::json grid_to_wire(const GridSpec& g);

}  // namespace geopriv

#endif  // GEOPRIV_PROTOCOL_HPP_
