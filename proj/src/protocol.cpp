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

#include "geopriv/protocol.hpp"

#include <cmath>

namespace geopriv {

namespace {

using nlohmann::json;

MalformedMsg malformed(std::string detail) { return MalformedMsg{std::move(detail)}; }

std::variant<SubscribeMsg, MalformedMsg> parse_subscribe(const json& j) {
  SubscribeMsg msg;
  bool has_app_id = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "type") {
      continue;
    } else if (key == "app_id") {
      if (!value.is_string()) return malformed("app_id must be a string");
      msg.app_id = value.get<std::string>();
      has_app_id = true;
    } else if (key == "epoch_ms") {
      if (!value.is_number_integer() || value.get<std::int64_t>() <= 0) {
        return malformed("epoch_ms must be a positive integer");
      }
      msg.params.epoch_ms = value.get<std::int64_t>();
    } else if (key == "radius_m") {
      if (!value.is_number() || !(value.get<double>() >= 0.0)) {
        return malformed("radius_m must be a number >= 0");
      }
      msg.params.radius_m = value.get<double>();
    } else if (key == "epsilon") {
      if (!value.is_number() || !(value.get<double>() > 0.0) ||
          !std::isfinite(value.get<double>())) {
        return malformed("epsilon must be a positive finite number");
      }
      msg.params.epsilon = value.get<double>();
    } else if (key == "coins") {
      if (!value.is_object() || !value.contains("p") || !value.contains("q") ||
          value.size() != 2 || !value["p"].is_number() ||
          !value["q"].is_number()) {
        return malformed("coins must be an object {\"p\":<num>,\"q\":<num>}");
      }
      try {
        msg.params.coins = CoinPair(value["p"].get<double>(),
                                    value["q"].get<double>());
      } catch (const Error& e) {
        return malformed(e.what());
      }
    } else {
      return malformed("unknown SUBSCRIBE field \"" + key + "\"");
    }
  }
  if (!has_app_id || msg.app_id.empty()) {
    return malformed("SUBSCRIBE requires a non-empty app_id");
  }
  return msg;
}

}  // namespace

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::capacity:
      return "CAPACITY";
    case ErrorCode::denied:
      return "DENIED";
    case ErrorCode::bad_request:
      return "BAD_REQUEST";
    case ErrorCode::already_subscribed:
      return "ALREADY_SUBSCRIBED";
    case ErrorCode::rate_limited:
      return "RATE_LIMITED";
  }
  return "BAD_REQUEST";
}

ClientMsg parse_client_line(std::string_view line) {
  const json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    return malformed("message is not a JSON object");
  }
  const auto type_it = j.find("type");
  if (type_it == j.end() || !type_it->is_string()) {
    return malformed("message has no type");
  }
  const std::string type = type_it->get<std::string>();
  if (type == "SUBSCRIBE") {
    auto parsed = parse_subscribe(j);
    if (auto* m = std::get_if<MalformedMsg>(&parsed)) return *m;
    return std::get<SubscribeMsg>(parsed);
  }
  if (type == "UNSUBSCRIBE") {
    if (j.size() != 1) return malformed("UNSUBSCRIBE carries no fields");
    return UnsubscribeMsg{};
  }
  return malformed("unknown message type \"" + type + "\"");
}

nlohmann::json grid_to_wire(const GridSpec& g) {
  return json{{"origin_lat", g.origin.lat_deg},
              {"origin_lon", g.origin.lon_deg},
              {"cell_size_m", g.cell_size_m},
              {"rows", g.rows},
              {"cols", g.cols}};
}

std::string ack_line(const EffectiveConfig& eff) {
  json j;
  j["type"] = "ACK";
  j["mode"] = to_string(eff.mode);
  j["epoch_ms"] = eff.epoch_ms;
  if (eff.mode == PolicyMode::radius) {
    j["radius_m"] = eff.radius_m;
  } else {
    j["epsilon"] = epsilon_of(*eff.coins);
    j["grid"] = grid_to_wire(*eff.grid);
  }
  return j.dump() + "\n";
}

std::string report_radius_line(std::uint64_t seq, const GeoPoint& p,
                               std::int64_t ts_ms) {
  json j;
  j["type"] = "REPORT";
  j["seq"] = seq;
  j["mode"] = "radius";
  j["lat"] = p.lat_deg;
  j["lon"] = p.lon_deg;
  j["ts_ms"] = ts_ms;
  return j.dump() + "\n";
}

std::string report_grid_line(std::uint64_t seq, const CellVector& cells,
                             std::int64_t ts_ms) {
  json j;
  j["type"] = "REPORT";
  j["seq"] = seq;
  j["mode"] = "grid";
  json arr = json::array();
  for (auto bit : cells) arr.push_back(bit ? 1 : 0);
  j["cells"] = std::move(arr);
  j["ts_ms"] = ts_ms;
  return j.dump() + "\n";
}

std::string report_stale_line(std::uint64_t seq, std::int64_t ts_ms) {
  json j;
  j["type"] = "REPORT";
  j["seq"] = seq;
  j["mode"] = "stale";
  j["ts_ms"] = ts_ms;
  return j.dump() + "\n";
}

std::string error_line(ErrorCode code, const std::string& detail) {
  json j;
  j["type"] = "ERROR";
  j["code"] = to_string(code);
  j["detail"] = detail;
  return j.dump() + "\n";
}

}  // namespace geopriv
