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

#ifndef GEOPRIV_TOOLS_TOOL_UTIL_HPP_
#define GEOPRIV_TOOLS_TOOL_UTIL_HPP_

#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "geopriv/geo.hpp"
#include "geopriv/rr.hpp"

namespace geopriv::tools {

// Grid flag format: <rows>x<cols>:<cell_m>@<lat>,<lon>
// e.g. 3x3:1000@48.0,11.0 (origin is the southwest corner).
inline GridSpec parse_grid_flag(const std::string& spec) {
  const auto x = spec.find('x');
  const auto colon = spec.find(':', x == std::string::npos ? 0 : x);
  const auto at = spec.find('@', colon == std::string::npos ? 0 : colon);
  const auto comma = spec.find(',', at == std::string::npos ? 0 : at);
  if (x == std::string::npos || colon == std::string::npos ||
      at == std::string::npos || comma == std::string::npos) {
    throw std::invalid_argument(
        "grid must look like <rows>x<cols>:<cell_m>@<lat>,<lon>");
  }
  return GridSpec(
      GeoPoint(std::stod(spec.substr(at + 1, comma - at - 1)),
               std::stod(spec.substr(comma + 1))),
      std::stod(spec.substr(colon + 1, at - colon - 1)),
      static_cast<std::size_t>(std::stoul(spec.substr(0, x))),
      static_cast<std::size_t>(std::stoul(spec.substr(x + 1, colon - x - 1))));
}

// Coins flag format: <p>,<q>.
inline CoinPair parse_coins_flag(const std::string& spec) {
  const auto comma = spec.find(',');
  if (comma == std::string::npos) {
    throw std::invalid_argument("coins must look like <p>,<q>");
  }
  return CoinPair(std::stod(spec.substr(0, comma)),
                  std::stod(spec.substr(comma + 1)));
}

// Exactly one of --epsilon / --coins.
inline CoinPair coins_from_flags(const std::optional<double>& epsilon,
                                 const std::optional<std::string>& coins) {
  if (epsilon.has_value() == coins.has_value()) {
    throw std::invalid_argument("give exactly one of --epsilon or --coins");
  }
  if (coins) return parse_coins_flag(*coins);
  return coins_for_epsilon(Epsilon(*epsilon));
}

// Comma-separated proportions list.
inline std::vector<double> parse_dist_flag(const std::string& spec) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const auto comma = spec.find(',', start);
    const std::string token = spec.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(std::stod(token));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

// Fixed short decimal rendering for CSV fields.
inline std::string csv_num(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

}  // namespace geopriv::tools

#endif  // GEOPRIV_TOOLS_TOOL_UTIL_HPP_
