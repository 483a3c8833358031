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

#ifndef GEOPRIV_SERVER_HPP_
#define GEOPRIV_SERVER_HPP_

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "geopriv/policy.hpp"
#include "geopriv/sources.hpp"

namespace geopriv {

struct ServerOptions {
  // 0 binds an ephemeral port (tests); read it back with port().
  std::uint16_t port = 2948;
  int max_clients = 64;
  std::uint64_t seed = 0;
  PolicyStore policy;
  // When set, reload_policy()/trigger_reload() re-read this file.
  std::optional<std::filesystem::path> policy_path;
  std::shared_ptr<FixSource> source;
};

// The location daemon. Listens on loopback TCP only, one newline-framed
// JSON message per line. Every subscription is clamped against the
// owner's policy and receives at most one privatized report per epoch;
// raw fixes never reach a client.
//
// Concurrency: a single event loop owns every connection and session; a
// separate pump thread owns the fix source and publishes the latest fix
// as a snapshot. The policy store is an immutable value swapped
// atomically, so a clamp sees exactly one version.
class Server {
 public:
  explicit Server(ServerOptions options);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds and starts the event loop and source pump. Throws IoError on
  // bind failure.
  void start();

  // Port actually bound (after start()).
  std::uint16_t port() const { return bound_port_; }

  // Asks the loop to shut down: every open connection is closed and
  // join() returns.
  void request_stop();
  void join();

  // Re-reads the policy file and swaps the store in atomically. On any
  // error the previous store stays in effect and the error text is
  // returned. Sessions pick up the new store at their next epoch
  // boundary.
  std::optional<std::string> reload_policy();

  // Async-signal-safe reload request; the event loop performs the swap.
  void trigger_reload();

  // Live connections (tests).
  int connection_count() const { return connection_count_.load(); }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::uint16_t bound_port_ = 0;
  std::atomic<int> connection_count_{0};
};

}  // namespace geopriv

#endif  // GEOPRIV_SERVER_HPP_
