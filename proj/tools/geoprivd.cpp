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

// geoprivd: the privacy-enforcing location daemon. Clients subscribe on
// loopback TCP and receive at most one privatized report per epoch;
// everything a client can obtain has already passed the data owner's
// policy.

#include <csignal>
#include <cstdio>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "geopriv/errors.hpp"
#include "geopriv/protocol.hpp"
#include "geopriv/server.hpp"

namespace {

geopriv::Server* g_server = nullptr;

void on_terminate(int) {
  if (g_server != nullptr) g_server->request_stop();
}

void on_reload(int) {
  if (g_server != nullptr) g_server->trigger_reload();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geoprivd - privacy-enforcing GPS location daemon"};

  std::uint16_t port = geopriv::kDefaultPort;
  std::string policy_path;
  std::string source_spec;
  double speedup = 1.0;
  bool no_throttle = false;
  std::uint64_t seed = std::random_device{}();
  int max_clients = 64;
  bool reload_signal = false;

  app.add_option("--port", port, "TCP port on 127.0.0.1")
      ->capture_default_str();
  app.add_option("--policy", policy_path, "policy file (JSON)")->required();
  app.add_option("--source", source_spec,
                 "fix source: nmea:<path> or "
                 "synthetic:<lat>,<lon>[;...][@<speed_mps>][@<rate_hz>]")
      ->required();
  app.add_option("--speedup", speedup, "replay time compression factor")
      ->capture_default_str();
  app.add_flag("--no-throttle", no_throttle,
               "replay as fast as fixes are consumed");
  app.add_option("--seed", seed, "seed for all privatization randomness");
  app.add_option("--max-clients", max_clients, "concurrent client limit")
      ->capture_default_str();
  app.add_flag("--reload-signal", reload_signal,
               "re-read the policy file on SIGHUP");

  CLI11_PARSE(app, argc, argv);

  geopriv::ServerOptions options;
  options.port = port;
  options.max_clients = max_clients;
  options.seed = seed;
  options.policy_path = policy_path;
  try {
    options.policy = geopriv::load_policies_file(policy_path);
    options.source = geopriv::make_source(source_spec, speedup, !no_throttle);
  } catch (const geopriv::Error& e) {
    std::fprintf(stderr, "geoprivd: %s\n", e.what());
    return 1;
  }

  geopriv::Server server(std::move(options));
  try {
    server.start();
  } catch (const geopriv::Error& e) {
    std::fprintf(stderr, "geoprivd: %s\n", e.what());
    return 1;
  }

  g_server = &server;
  std::signal(SIGINT, on_terminate);
  std::signal(SIGTERM, on_terminate);
  std::signal(SIGPIPE, SIG_IGN);
  if (reload_signal) std::signal(SIGHUP, on_reload);

  std::fprintf(stderr, "geoprivd: listening on 127.0.0.1:%u (max %d clients)\n",
               server.port(), max_clients);
  server.join();
  g_server = nullptr;
  return 0;
}
