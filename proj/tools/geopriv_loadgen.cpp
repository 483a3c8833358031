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

// geopriv-loadgen: opens many concurrent subscriptions against a running
// daemon and checks the release guarantee from the outside: every client
// gets its reports, and never two reports closer than 95% of the epoch.
// Gap violations make the exit status nonzero so CI can gate on it.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geopriv/harness.hpp"
#include "tool_util.hpp"

int main(int argc, char** argv) {
  CLI::App app{"geopriv-loadgen - concurrent-client epoch guarantee checker"};

  int clients = 1;
  std::int64_t epoch_ms = 1000;
  std::int64_t duration_ms = 10000;
  std::string addr = "127.0.0.1:2948";
  int iterations = 10;
  std::string app_id = "loadgen";
  std::string out_path;

  app.add_option("--clients", clients, "concurrent sessions")
      ->capture_default_str();
  app.add_option("--epoch-ms", epoch_ms, "requested epoch")
      ->capture_default_str();
  app.add_option("--duration-ms", duration_ms, "measurement window per iteration")
      ->capture_default_str();
  app.add_option("--addr", addr, "daemon address host:port")
      ->capture_default_str();
  app.add_option("--iterations", iterations, "repetitions to average over")
      ->capture_default_str();
  app.add_option("--app-id", app_id, "application id to subscribe with")
      ->capture_default_str();
  app.add_option("--out", out_path, "per-client CSV output file");

  CLI11_PARSE(app, argc, argv);

  const auto colon = addr.rfind(':');
  if (colon == std::string::npos) {
    std::fprintf(stderr, "geopriv-loadgen: --addr must be host:port\n");
    return 2;
  }

  geopriv::LoadClientConfig config;
  config.host = addr.substr(0, colon);
  config.port = static_cast<std::uint16_t>(std::stoi(addr.substr(colon + 1)));
  config.app_id = app_id;
  config.params.epoch_ms = epoch_ms;
  config.duration_ms = duration_ms;

  std::ofstream csv;
  if (!out_path.empty()) {
    csv.open(out_path);
    if (!csv) {
      std::fprintf(stderr, "geopriv-loadgen: cannot open %s\n",
                   out_path.c_str());
      return 2;
    }
    csv << "iteration,client,connected,refused,reports,min_gap_ms,"
           "mean_gap_ms,max_gap_ms,violations\n";
  }

  int total_violations = 0;
  int total_refusals = 0;
  double count_sum = 0.0;
  int counted_clients = 0;

  for (int it = 0; it < iterations; ++it) {
    const auto results = geopriv::run_load_clients(config, clients);
    for (int c = 0; c < clients; ++c) {
      const auto& r = results[static_cast<std::size_t>(c)];
      const int violations =
          r.report_count > 1 ? r.gap_violations(epoch_ms) : 0;
      total_violations += violations;
      total_refusals += r.refused ? 1 : 0;
      if (!r.refused && r.connected && !r.error_code) {
        count_sum += r.report_count;
        ++counted_clients;
      }
      if (csv.is_open()) {
        csv << it << ',' << c << ',' << (r.connected ? 1 : 0) << ','
            << (r.refused ? 1 : 0) << ',' << r.report_count << ','
            << r.min_gap_ms() << ','
            << geopriv::tools::csv_num(r.mean_gap_ms()) << ','
            << r.max_gap_ms() << ',' << violations << '\n';
      }
      if (r.refused) {
        std::fprintf(stderr, "iteration %d client %d: refused (CAPACITY)\n",
                     it, c);
      } else if (r.error_code) {
        std::fprintf(stderr, "iteration %d client %d: error %s\n", it, c,
                     r.error_code->c_str());
      }
    }
  }

  const double mean_reports =
      counted_clients > 0 ? count_sum / counted_clients : 0.0;
  std::printf(
      "clients=%d epoch_ms=%lld duration_ms=%lld iterations=%d "
      "mean_reports=%.2f refusals=%d gap_violations=%d\n",
      clients, static_cast<long long>(epoch_ms),
      static_cast<long long>(duration_ms), iterations, mean_reports,
      total_refusals, total_violations);

  return total_violations == 0 ? 0 : 1;
}
