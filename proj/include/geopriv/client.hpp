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

#ifndef GEOPRIV_CLIENT_HPP_
#define GEOPRIV_CLIENT_HPP_

#include <cstdint>
#include <optional>
#include <string>

namespace geopriv {

// A received line plus the monotonic instant its newline was read off
// the socket.
struct TimedLine {
  std::string text;
  std::int64_t arrival_mono_ms = 0;
};

// Minimal blocking newline-framed TCP client. One per thread.
class LineClient {
 public:
  LineClient() = default;
  ~LineClient();

  LineClient(const LineClient&) = delete;
  LineClient& operator=(const LineClient&) = delete;
  LineClient(LineClient&& other) noexcept;
  LineClient& operator=(LineClient&& other) noexcept;

  // Connects to host:port. Returns false on refusal/timeout.
  bool connect(const std::string& host, std::uint16_t port,
               int timeout_ms = 5000);

  bool connected() const { return fd_ >= 0; }

  // Sends one line (a trailing newline is appended when missing).
  bool send_line(const std::string& line);

  // Next full line, waiting at most timeout_ms. nullopt on timeout or
  // connection close (distinguish with connected()).
  std::optional<TimedLine> read_line(int timeout_ms);

  void close();

 private:
  int fd_ = -1;
  std::string buffer_;
};

}  // namespace geopriv

#endif  // GEOPRIV_CLIENT_HPP_
