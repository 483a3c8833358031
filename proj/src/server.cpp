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

#include "geopriv/server.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <map>
#include <vector>

#include "geopriv/clock.hpp"
#include "geopriv/errors.hpp"
#include "geopriv/protocol.hpp"
#include "geopriv/random.hpp"
#include "geopriv/rr.hpp"

namespace geopriv {

namespace {

// A connection is dropped after this many rate-limit violations inside
// one epoch.
constexpr int kMaxViolationsPerEpoch = 3;

// Inbound lines longer than this are hostile; the connection is closed.
constexpr std::size_t kMaxLineBytes = 64 * 1024;

void set_nonblocking(int fd) {
  const int flags = fcntl(fd, F_GETFL, 0);
  fcntl(fd, F_SETFL, flags | O_NONBLOCK);
}

void set_nodelay(int fd) {
  int one = 1;
  setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
}

}  // namespace

struct Server::Impl {
  explicit Impl(ServerOptions opts, std::atomic<int>& conn_count)
      : options(std::move(opts)),
        policy(std::make_shared<const PolicyStore>(options.policy)),
        connection_count(conn_count) {}

  struct Session {
    std::string app_id;
    RequestedParams requested;
    EffectiveConfig effective;
    std::uint64_t policy_version = 0;
    RandomSource rng{0};
    std::uint64_t epoch_seq = 0;
    std::int64_t next_release_mono = 0;
    int violations = 0;
  };

  struct Connection {
    int fd = -1;
    std::string inbuf;
    std::string outbuf;
    std::optional<Session> session;
    bool close_after_flush = false;
  };

  ServerOptions options;

  int listen_fd = -1;
  int wake_read = -1;
  int wake_write = -1;

  std::atomic<bool> stop{false};
  std::atomic<bool> reload_requested{false};

  std::thread loop_thread;
  std::thread pump_thread;

  // Latest fix snapshot: single writer (pump thread), read at release
  // time by the event loop.
  std::mutex fix_mutex;
  std::optional<Fix> latest_fix;
  std::int64_t fix_receipt_mono = 0;

  // Immutable store swapped under the mutex; version bumps tell live
  // sessions to re-clamp at their next boundary.
  mutable std::mutex policy_mutex;
  std::shared_ptr<const PolicyStore> policy;
  std::uint64_t policy_version = 1;

  std::map<int, Connection> connections;
  std::uint64_t session_counter = 0;
  std::atomic<int>& connection_count;

  // ---- shared-state accessors ----

  std::pair<std::shared_ptr<const PolicyStore>, std::uint64_t> load_policy()
      const {
    std::lock_guard lock(policy_mutex);
    return {policy, policy_version};
  }

  void store_policy(PolicyStore next) {
    std::lock_guard lock(policy_mutex);
    policy = std::make_shared<const PolicyStore>(std::move(next));
    ++policy_version;
  }

  std::pair<std::optional<Fix>, std::int64_t> load_fix() {
    std::lock_guard lock(fix_mutex);
    return {latest_fix, fix_receipt_mono};
  }

  void publish_fix(const Fix& fix) {
    std::lock_guard lock(fix_mutex);
    latest_fix = fix;
    fix_receipt_mono = mono_ms();
  }

  void wake() {
    const char byte = 0;
    [[maybe_unused]] ssize_t n = ::write(wake_write, &byte, 1);
  }

  // ---- connection plumbing ----

  void send_text(Connection& conn, const std::string& text) {
    conn.outbuf += text;
    flush(conn);
  }

  void flush(Connection& conn) {
    while (!conn.outbuf.empty()) {
      const ssize_t n = ::send(conn.fd, conn.outbuf.data(), conn.outbuf.size(),
                               MSG_NOSIGNAL);
      if (n > 0) {
        conn.outbuf.erase(0, static_cast<std::size_t>(n));
      } else if (n < 0 && (errno == EAGAIN || errno == EWOULDBLOCK)) {
        return;  // poll for POLLOUT
      } else {
        conn.close_after_flush = true;
        conn.outbuf.clear();
        return;
      }
    }
  }

  void close_connection(int fd) {
    ::close(fd);
    connections.erase(fd);
    connection_count.store(static_cast<int>(connections.size()));
  }

  // ---- protocol handling ----

  void handle_line(Connection& conn, std::string_view line) {
    if (conn.session) {
      handle_line_subscribed(conn, line);
    } else {
      handle_line_unsubscribed(conn, line);
    }
  }

  void handle_line_unsubscribed(Connection& conn, std::string_view line) {
    const ClientMsg msg = parse_client_line(line);
    if (const auto* bad = std::get_if<MalformedMsg>(&msg)) {
      send_text(conn, error_line(ErrorCode::bad_request, bad->detail));
      return;
    }
    if (std::holds_alternative<UnsubscribeMsg>(msg)) {
      send_text(conn, error_line(ErrorCode::bad_request, "not subscribed"));
      return;
    }
    handle_subscribe(conn, std::get<SubscribeMsg>(msg));
  }

  void handle_subscribe(Connection& conn, const SubscribeMsg& msg) {
    const auto [store, version] = load_policy();
    const AppPolicy& app_policy = store->resolve(msg.app_id);
    EffectiveConfig effective;
    try {
      effective = clamp(msg.params, app_policy);
    } catch (const DeniedByPolicyError&) {
      send_text(conn, error_line(ErrorCode::denied,
                                 "policy denies location release"));
      return;
    }
    Session session;
    session.app_id = msg.app_id;
    session.requested = msg.params;
    session.effective = effective;
    session.policy_version = version;
    session.rng = RandomSource(derive_seed(options.seed, ++session_counter));
    session.next_release_mono = mono_ms() + effective.epoch_ms;
    conn.session = std::move(session);
    send_text(conn, ack_line(effective));
  }

  // Any traffic on a subscribed connection is an attempt to extract data
  // between releases. It never perturbs the schedule; it only burns the
  // violation budget. The single exception is a clean UNSUBSCRIBE.
  // A duplicate SUBSCRIBE that does not ask for a faster epoch is merely
  // redundant, not aggressive, and gets ALREADY_SUBSCRIBED.
  void handle_line_subscribed(Connection& conn, std::string_view line) {
    const ClientMsg msg = parse_client_line(line);
    if (std::holds_alternative<UnsubscribeMsg>(msg)) {
      conn.session.reset();
      return;
    }
    if (const auto* sub = std::get_if<SubscribeMsg>(&msg)) {
      const bool wants_faster =
          sub->params.epoch_ms &&
          *sub->params.epoch_ms < conn.session->effective.epoch_ms;
      if (!wants_faster) {
        send_text(conn, error_line(ErrorCode::already_subscribed,
                                   "session already has a subscription"));
        return;
      }
    }
    Session& session = *conn.session;
    ++session.violations;
    send_text(conn,
              error_line(ErrorCode::rate_limited,
                         "data is released once per epoch; request denied"));
    if (session.violations >= kMaxViolationsPerEpoch) {
      conn.close_after_flush = true;
    }
  }

  // ---- release scheduling ----

  std::optional<std::int64_t> next_deadline() const {
    std::optional<std::int64_t> deadline;
    for (const auto& [fd, conn] : connections) {
      if (conn.session) {
        const std::int64_t t = conn.session->next_release_mono;
        if (!deadline || t < *deadline) deadline = t;
      }
    }
    return deadline;
  }

  void run_due_releases() {
    const std::int64_t now = mono_ms();
    for (auto& [fd, conn] : connections) {
      if (conn.session && now >= conn.session->next_release_mono) {
        release_tick(conn, now);
      }
    }
  }

  void release_tick(Connection& conn, std::int64_t now) {
    Session& session = *conn.session;

    // Pick up a swapped policy store at the boundary: re-clamp the
    // original request against the current policy.
    const auto [store, version] = load_policy();
    if (version != session.policy_version) {
      session.policy_version = version;
      try {
        session.effective = clamp(session.requested,
                                  store->resolve(session.app_id));
      } catch (const DeniedByPolicyError&) {
        send_text(conn, error_line(ErrorCode::denied,
                                   "policy now denies location release"));
        conn.close_after_flush = true;
        return;
      }
    }
    const EffectiveConfig& eff = session.effective;

    const auto [fix, receipt_mono] = load_fix();
    const bool stale =
        !fix || (now - receipt_mono) > 2 * eff.epoch_ms;

    if (stale) {
      send_text(conn, report_stale_line(session.epoch_seq, wall_ms()));
      ++session.epoch_seq;
    } else if (eff.allowed_region && !eff.allowed_region->contains(fix->point)) {
      // Outside the permitted region: silence. An explicit refusal would
      // itself reveal where the device is, so the epoch simply passes;
      // the sequence number does not advance.
    } else if (eff.mode == PolicyMode::radius) {
      try {
        const GeoPoint noised =
            radius_privatize(fix->point, eff.radius_m, session.rng);
        send_text(conn,
                  report_radius_line(session.epoch_seq, noised, wall_ms()));
        ++session.epoch_seq;
      } catch (const Error&) {
        // Unprivatizable fix (polar region): release nothing this epoch.
      }
    } else {
      CellVector truth(eff.grid->cell_count(), 0);
      if (const auto cell = cell_of(fix->point, *eff.grid)) {
        truth[*cell] = 1;
      }
      const CellVector response = rr_vector(truth, *eff.coins, session.rng);
      send_text(conn,
                report_grid_line(session.epoch_seq, response, wall_ms()));
      ++session.epoch_seq;
    }

    session.violations = 0;
    // Fixed cadence: schedule from the previous deadline, not from now,
    // so lateness never compounds. If the loop stalled past a whole
    // epoch, rebase instead of bursting stacked reports.
    session.next_release_mono += eff.epoch_ms;
    if (session.next_release_mono <= now) {
      session.next_release_mono = now + eff.epoch_ms;
    }
  }

  // ---- event loop ----

  void run_loop() {
    std::vector<pollfd> pfds;
    std::vector<int> to_close;
    while (!stop.load(std::memory_order_relaxed)) {
      pfds.clear();
      pfds.push_back({wake_read, POLLIN, 0});
      pfds.push_back({listen_fd, POLLIN, 0});
      for (const auto& [fd, conn] : connections) {
        short events = POLLIN;
        if (!conn.outbuf.empty()) events |= POLLOUT;
        pfds.push_back({fd, events, 0});
      }

      int timeout = 200;
      if (const auto deadline = next_deadline()) {
        timeout = static_cast<int>(
            std::clamp<std::int64_t>(*deadline - mono_ms(), 0, 200));
      }

      const int rc = ::poll(pfds.data(), pfds.size(), timeout);
      if (rc < 0 && errno != EINTR) break;

      if (stop.load(std::memory_order_relaxed)) break;

      if (pfds[0].revents & POLLIN) {
        char buf[64];
        while (::read(wake_read, buf, sizeof buf) > 0) {
        }
      }

      if (reload_requested.exchange(false)) {
        do_reload();
      }

      if (pfds[1].revents & POLLIN) {
        accept_new_connections();
      }

      to_close.clear();
      for (std::size_t i = 2; i < pfds.size(); ++i) {
        const int fd = pfds[i].fd;
        auto it = connections.find(fd);
        if (it == connections.end()) continue;
        Connection& conn = it->second;
        if (pfds[i].revents & (POLLERR | POLLHUP)) {
          to_close.push_back(fd);
          continue;
        }
        if (pfds[i].revents & POLLIN) {
          if (!read_available(conn)) {
            to_close.push_back(fd);
            continue;
          }
        }
        if (pfds[i].revents & POLLOUT) {
          flush(conn);
        }
        if (conn.close_after_flush && conn.outbuf.empty()) {
          to_close.push_back(fd);
        }
      }
      for (int fd : to_close) close_connection(fd);

      run_due_releases();
      // A release may have queued a close (e.g. re-clamp hit a deny).
      to_close.clear();
      for (auto& [fd, conn] : connections) {
        if (conn.close_after_flush && conn.outbuf.empty()) {
          to_close.push_back(fd);
        }
      }
      for (int fd : to_close) close_connection(fd);
    }

    for (auto& [fd, conn] : connections) ::close(fd);
    connections.clear();
    connection_count.store(0);
  }

  void accept_new_connections() {
    while (true) {
      sockaddr_in addr{};
      socklen_t len = sizeof addr;
      const int fd = ::accept(listen_fd, reinterpret_cast<sockaddr*>(&addr), &len);
      if (fd < 0) return;
      set_nonblocking(fd);
      set_nodelay(fd);
      if (static_cast<int>(connections.size()) >= options.max_clients) {
        // Admission is first-come: the next connection learns it lost.
        const std::string line =
            error_line(ErrorCode::capacity, "client limit reached");
        [[maybe_unused]] ssize_t n =
            ::send(fd, line.data(), line.size(), MSG_NOSIGNAL);
        ::close(fd);
        continue;
      }
      Connection conn;
      conn.fd = fd;
      connections.emplace(fd, std::move(conn));
      connection_count.store(static_cast<int>(connections.size()));
    }
  }

  // Returns false when the peer went away.
  bool read_available(Connection& conn) {
    char buf[4096];
    while (true) {
      const ssize_t n = ::recv(conn.fd, buf, sizeof buf, 0);
      if (n > 0) {
        conn.inbuf.append(buf, static_cast<std::size_t>(n));
        if (conn.inbuf.size() > kMaxLineBytes) return false;
      } else if (n == 0) {
        return false;
      } else if (errno == EAGAIN || errno == EWOULDBLOCK) {
        break;
      } else {
        return false;
      }
    }
    std::size_t start = 0;
    while (true) {
      const std::size_t nl = conn.inbuf.find('\n', start);
      if (nl == std::string::npos) break;
      handle_line(conn, std::string_view(conn.inbuf).substr(start, nl - start));
      start = nl + 1;
      if (conn.close_after_flush) break;
    }
    conn.inbuf.erase(0, start);
    return true;
  }

  void do_reload() {
    if (!options.policy_path) return;
    try {
      store_policy(load_policies_file(*options.policy_path));
    } catch (const Error&) {
      // Keep the old store; reload_policy() reports errors when called
      // synchronously.
    }
  }
};

Server::Server(ServerOptions options)
    : impl_(std::make_unique<Impl>(std::move(options), connection_count_)) {}

Server::~Server() {
  request_stop();
  join();
  if (impl_->listen_fd >= 0) ::close(impl_->listen_fd);
  if (impl_->wake_read >= 0) ::close(impl_->wake_read);
  if (impl_->wake_write >= 0) ::close(impl_->wake_write);
}

void Server::start() {
  int pipefd[2];
  if (::pipe(pipefd) != 0) {
    throw IoError("cannot create wake pipe");
  }
  impl_->wake_read = pipefd[0];
  impl_->wake_write = pipefd[1];
  set_nonblocking(impl_->wake_read);
  set_nonblocking(impl_->wake_write);

  impl_->listen_fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (impl_->listen_fd < 0) {
    throw IoError("cannot create listen socket");
  }
  int one = 1;
  setsockopt(impl_->listen_fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);  // loopback only
  addr.sin_port = htons(impl_->options.port);
  if (::bind(impl_->listen_fd, reinterpret_cast<sockaddr*>(&addr),
             sizeof addr) != 0) {
    throw IoError("cannot bind 127.0.0.1:" +
                  std::to_string(impl_->options.port) + ": " +
                  std::strerror(errno));
  }
  if (::listen(impl_->listen_fd, 128) != 0) {
    throw IoError("cannot listen: " + std::string(std::strerror(errno)));
  }
  socklen_t len = sizeof addr;
  getsockname(impl_->listen_fd, reinterpret_cast<sockaddr*>(&addr), &len);
  bound_port_ = ntohs(addr.sin_port);
  set_nonblocking(impl_->listen_fd);

  impl_->loop_thread = std::thread([this] { impl_->run_loop(); });
  if (impl_->options.source) {
    impl_->pump_thread = std::thread([this] {
      pump_fixes(
          *impl_->options.source,
          [this](const Fix& fix) {
            impl_->publish_fix(fix);
            return true;
          },
          impl_->stop);
    });
  }
}

void Server::request_stop() {
  impl_->stop.store(true);
  if (impl_->wake_write >= 0) impl_->wake();
}

void Server::join() {
  if (impl_->loop_thread.joinable()) impl_->loop_thread.join();
  if (impl_->pump_thread.joinable()) impl_->pump_thread.join();
}

std::optional<std::string> Server::reload_policy() {
  if (!impl_->options.policy_path) {
    return "no policy file configured";
  }
  try {
    impl_->store_policy(load_policies_file(*impl_->options.policy_path));
    return std::nullopt;
  } catch (const Error& e) {
    return std::string(e.what());
  }
}

void Server::trigger_reload() {
  impl_->reload_requested.store(true);
  if (impl_->wake_write >= 0) impl_->wake();
}

}  // namespace geopriv
