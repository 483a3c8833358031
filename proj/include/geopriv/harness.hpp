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

#ifndef GEOPRIV_HARNESS_HPP_
#define GEOPRIV_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "geopriv/policy.hpp"
#include "geopriv/protocol.hpp"

namespace geopriv {

// Reports arriving within 0.95 of the epoch of the previous one violate
// the release guarantee.
inline constexpr double kMinGapFraction = 0.95;

struct LoadClientConfig {
  std::string host = "127.0.0.1";
  std::uint16_t port = kDefaultPort;
  std::string app_id = "loadgen";
  RequestedParams params;
  std::int64_t duration_ms = 10000;
};

// One client session's observations.
struct LoadClientResult {
  bool connected = false;
  bool refused = false;            // got ERROR CAPACITY
  std::optional<std::string> error_code;  // first non-capacity ERROR
  nlohmann::json ack;              // the applied config, when subscribed
  int report_count = 0;
  std::vector<std::int64_t> arrivals_mono_ms;
  std::vector<std::string> raw_lines;  // every frame received, in order

  // Gap statistics over consecutive REPORT arrivals.
  std::int64_t min_gap_ms() const;
  std::int64_t max_gap_ms() const;
  double mean_gap_ms() const;
  int gap_violations(std::int64_t epoch_ms) const;
};

// Runs one subscribe-and-listen session for duration_ms after the ACK.
LoadClientResult run_load_client(const LoadClientConfig& config);

// Runs `clients` concurrent sessions.
std::vector<LoadClientResult> run_load_clients(const LoadClientConfig& config,
                                               int clients);

}  // namespace geopriv

#endif  // GEOPRIV_HARNESS_HPP_
