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

#include "geopriv/harness.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "geopriv/client.hpp"
#include "geopriv/clock.hpp"

namespace geopriv {

namespace {

using nlohmann::json;

json subscribe_json(const LoadClientConfig& config) {
  json j;
  j["type"] = "SUBSCRIBE";
  j["app_id"] = config.app_id;
  if (config.params.epoch_ms) j["epoch_ms"] = *config.params.epoch_ms;
  if (config.params.radius_m) j["radius_m"] = *config.params.radius_m;
  if (config.params.epsilon) j["epsilon"] = *config.params.epsilon;
  if (config.params.coins) {
    j["coins"] = json{{"p", config.params.coins->p()},
                      {"q", config.params.coins->q()}};
  }
  return j;
}

}  // namespace

std::int64_t LoadClientResult::min_gap_ms() const {
  std::int64_t best = 0;
  for (std::size_t i = 1; i < arrivals_mono_ms.size(); ++i) {
    const std::int64_t gap = arrivals_mono_ms[i] - arrivals_mono_ms[i - 1];
    if (i == 1 || gap < best) best = gap;
  }
  return best;
}

std::int64_t LoadClientResult::max_gap_ms() const {
  std::int64_t best = 0;
  for (std::size_t i = 1; i < arrivals_mono_ms.size(); ++i) {
    best = std::max(best, arrivals_mono_ms[i] - arrivals_mono_ms[i - 1]);
  }
  return best;
}

double LoadClientResult::mean_gap_ms() const {
  if (arrivals_mono_ms.size() < 2) return 0.0;
  return static_cast<double>(arrivals_mono_ms.back() -
                             arrivals_mono_ms.front()) /
         static_cast<double>(arrivals_mono_ms.size() - 1);
}

int LoadClientResult::gap_violations(std::int64_t epoch_ms) const {
  const double floor_ms = kMinGapFraction * static_cast<double>(epoch_ms);
  int violations = 0;
  for (std::size_t i = 1; i < arrivals_mono_ms.size(); ++i) {
    if (static_cast<double>(arrivals_mono_ms[i] - arrivals_mono_ms[i - 1]) <
        floor_ms) {
      ++violations;
    }
  }
  return violations;
}

LoadClientResult run_load_client(const LoadClientConfig& config) {
  LoadClientResult result;
  LineClient client;
  if (!client.connect(config.host, config.port)) {
    return result;
  }
  result.connected = true;
  if (!client.send_line(subscribe_json(config).dump())) {
    return result;
  }

  // First line is the verdict: ACK or an error (possibly CAPACITY races
  // ahead of the subscribe).
  const auto first = client.read_line(5000);
  if (!first) return result;
  result.raw_lines.push_back(first->text);
  const json head = json::parse(first->text, nullptr, false);
  if (head.is_discarded()) return result;
  if (head.value("type", "") == "ERROR") {
    const std::string code = head.value("code", "");
    if (code == "CAPACITY") {
      result.refused = true;
    } else {
      result.error_code = code;
    }
    return result;
  }
  if (head.value("type", "") != "ACK") return result;
  result.ack = head;

  const std::int64_t window_end = mono_ms() + config.duration_ms;
  while (true) {
    const std::int64_t remaining = window_end - mono_ms();
    if (remaining <= 0) break;
    const auto line = client.read_line(static_cast<int>(remaining));
    if (!line) {
      if (!client.connected()) break;
      continue;
    }
    if (line->arrival_mono_ms > window_end) break;
    result.raw_lines.push_back(line->text);
    const json msg = json::parse(line->text, nullptr, false);
    if (msg.is_discarded()) continue;
    if (msg.value("type", "") == "REPORT") {
      ++result.report_count;
      result.arrivals_mono_ms.push_back(line->arrival_mono_ms);
    } else if (msg.value("type", "") == "ERROR" && !result.error_code) {
      result.error_code = msg.value("code", "");
    }
  }
  return result;
}

std::vector<LoadClientResult> run_load_clients(const LoadClientConfig& config,
                                               int clients) {
  std::vector<LoadClientResult> results(static_cast<std::size_t>(clients));
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(clients));
  for (int i = 0; i < clients; ++i) {
    threads.emplace_back([&results, &config, i] {
      results[static_cast<std::size_t>(i)] = run_load_client(config);
    });
  }
  for (auto& t : threads) t.join();
  return results;
}

}  // namespace geopriv
