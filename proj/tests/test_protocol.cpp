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

#include <doctest.h>
#include <json.hpp>

namespace geopriv {
namespace {

using nlohmann::json;

TEST_CASE("subscribe lines parse into requests") {
  const ClientMsg msg = parse_client_line(
      R"({"type":"SUBSCRIBE","app_id":"com.example.maps","epoch_ms":1000,"radius_m":250.5})");
  REQUIRE(std::holds_alternative<SubscribeMsg>(msg));
  const auto& sub = std::get<SubscribeMsg>(msg);
  CHECK(sub.app_id == "com.example.maps");
  CHECK(sub.params.epoch_ms == 1000);
  CHECK(sub.params.radius_m == 250.5);
  CHECK_FALSE(sub.params.epsilon.has_value());
  CHECK_FALSE(sub.params.coins.has_value());
}

TEST_CASE("subscribe accepts explicit coins") {
  const ClientMsg msg = parse_client_line(
      R"({"type":"SUBSCRIBE","app_id":"a","coins":{"p":0.5,"q":0.5}})");
  REQUIRE(std::holds_alternative<SubscribeMsg>(msg));
  const auto& sub = std::get<SubscribeMsg>(msg);
  REQUIRE(sub.params.coins.has_value());
  CHECK(sub.params.coins->p() == 0.5);
}

TEST_CASE("malformed client lines are classified with a reason") {
  auto detail_of = [](const ClientMsg& msg) {
    REQUIRE(std::holds_alternative<MalformedMsg>(msg));
    return std::get<MalformedMsg>(msg).detail;
  };

  CHECK(detail_of(parse_client_line("not json")) ==
        "message is not a JSON object");
  CHECK(detail_of(parse_client_line("[1,2,3]")) ==
        "message is not a JSON object");
  CHECK(detail_of(parse_client_line(R"({"app_id":"x"})")) ==
        "message has no type");
  CHECK(detail_of(parse_client_line(R"({"type":"POLL"})")) ==
        "unknown message type \"POLL\"");
  CHECK(detail_of(parse_client_line(R"({"type":"SUBSCRIBE"})")) ==
        "SUBSCRIBE requires a non-empty app_id");
  // Unknown fields fail closed.
  REQUIRE(std::holds_alternative<MalformedMsg>(parse_client_line(
      R"({"type":"SUBSCRIBE","app_id":"a","spy_on":"everything"})")));
  // Bad parameter domains.
  REQUIRE(std::holds_alternative<MalformedMsg>(
      parse_client_line(R"({"type":"SUBSCRIBE","app_id":"a","epoch_ms":0})")));
  REQUIRE(std::holds_alternative<MalformedMsg>(
      parse_client_line(R"({"type":"SUBSCRIBE","app_id":"a","radius_m":-1})")));
  REQUIRE(std::holds_alternative<MalformedMsg>(parse_client_line(
      R"({"type":"SUBSCRIBE","app_id":"a","coins":{"p":2.0,"q":0.5}})")));
}

TEST_CASE("unsubscribe parses strictly") {
  CHECK(std::holds_alternative<UnsubscribeMsg>(
      parse_client_line(R"({"type":"UNSUBSCRIBE"})")));
  CHECK(std::holds_alternative<MalformedMsg>(
      parse_client_line(R"({"type":"UNSUBSCRIBE","extra":1})")));
}

TEST_CASE("server lines carry the documented shapes") {
  EffectiveConfig radius_cfg;
  radius_cfg.mode = PolicyMode::radius;
  radius_cfg.epoch_ms = 5000;
  radius_cfg.radius_m = 500.0;
  const json ack = json::parse(ack_line(radius_cfg));
  CHECK(ack["type"] == "ACK");
  CHECK(ack["mode"] == "radius");
  CHECK(ack["epoch_ms"] == 5000);
  CHECK(ack["radius_m"] == 500.0);
  CHECK_FALSE(ack.contains("grid"));

  EffectiveConfig grid_cfg;
  grid_cfg.mode = PolicyMode::grid;
  grid_cfg.epoch_ms = 1000;
  grid_cfg.coins = CoinPair(0.5, 0.5);
  grid_cfg.grid = GridSpec(GeoPoint(48.0, 11.0), 1000.0, 3, 3);
  const json gack = json::parse(ack_line(grid_cfg));
  CHECK(gack["mode"] == "grid");
  CHECK(gack["epsilon"].get<double>() == doctest::Approx(std::log(3.0)));
  CHECK(gack["grid"]["rows"] == 3);
  CHECK(gack["grid"]["origin_lat"] == 48.0);

  const json report = json::parse(report_radius_line(7, GeoPoint(1.5, 2.5), 123456));
  CHECK(report["type"] == "REPORT");
  CHECK(report["seq"] == 7);
  CHECK(report["mode"] == "radius");
  CHECK(report["lat"] == 1.5);
  CHECK(report["lon"] == 2.5);
  CHECK(report["ts_ms"] == 123456);

  const json grid_report = json::parse(report_grid_line(3, CellVector{1, 0, 1}, 99));
  CHECK(grid_report["mode"] == "grid");
  CHECK(grid_report["cells"] == json::array({1, 0, 1}));

  const json stale = json::parse(report_stale_line(4, 77));
  CHECK(stale["mode"] == "stale");
  CHECK_FALSE(stale.contains("lat"));
  CHECK_FALSE(stale.contains("cells"));

  const json error = json::parse(error_line(ErrorCode::capacity, "full"));
  CHECK(error["type"] == "ERROR");
  CHECK(error["code"] == "CAPACITY");
  CHECK(error["detail"] == "full");
}

TEST_CASE("every server line is newline-terminated") {
  EffectiveConfig cfg;
  cfg.mode = PolicyMode::radius;
  cfg.epoch_ms = 1000;
  CHECK(ack_line(cfg).back() == '\n');
  CHECK(report_stale_line(0, 0).back() == '\n');
  CHECK(error_line(ErrorCode::denied, "x").back() == '\n');
}

}  // namespace
}  // namespace geopriv
