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

#ifndef GEOPRIV_POLICY_HPP_
#define GEOPRIV_POLICY_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "geopriv/geo.hpp"
#include "geopriv/rr.hpp"

namespace geopriv {

enum class PolicyMode { radius, grid, deny };

const char* to_string(PolicyMode mode);

// Data-owner limits for one application id. These are floors and
// ceilings, never the applied values: a client request is clamped
// against them.
struct AppPolicy {
  PolicyMode mode = PolicyMode::deny;
  // Floor on the release interval. At least 100 ms to keep a hostile
  // policy file from configuring a busy loop.
  std::int64_t min_epoch_ms = 100;
  // Radius mode: floor on the obfuscation radius.
  double min_radius_m = 0.0;
  // Grid mode: ceiling on the privacy loss and the (owner-controlled)
  // grid the released bit-vectors range over.
  std::optional<Epsilon> max_epsilon;
  std::optional<GridSpec> grid;
  // When set, releases are suppressed while the device is outside.
  std::optional<BoundingBox> allowed_region;

  // Enforces the per-mode field requirements. `name` labels errors.
  void validate(const std::string& name) const;
};

// Immutable policy set: one entry per application id plus the default
// applied to unknown (including fabricated) ids.
struct PolicyStore {
  AppPolicy default_policy;
  std::map<std::string, AppPolicy> entries;

  // Entry for app_id, or the default. Total: never fails.
  const AppPolicy& resolve(const std::string& app_id) const;
};

// Privacy parameters a client asks for. Any field may be absent, in
// which case the policy's own limit is applied.
struct RequestedParams {
  std::optional<std::int64_t> epoch_ms;
  std::optional<double> radius_m;
  std::optional<double> epsilon;
  std::optional<CoinPair> coins;
};

// The clamped per-session configuration actually applied.
struct EffectiveConfig {
  PolicyMode mode = PolicyMode::radius;
  std::int64_t epoch_ms = 0;
  double radius_m = 0.0;                   // radius mode
  std::optional<CoinPair> coins;           // grid mode
  std::optional<GridSpec> grid;            // grid mode
  std::optional<BoundingBox> allowed_region;
};

// Clamps a request against a policy:
//   epoch  = max(requested, min_epoch_ms)
//   radius = max(requested, min_radius_m)
//   grid mode: explicit coins are honored iff their privacy loss fits
//   the epsilon budget, otherwise the symmetric channel at the budget
//   (or at min(requested epsilon, budget)) is applied. The grid itself
//   always comes from the policy; clients cannot move or refine it.
// Missing request fields inherit the policy limits. Throws
// DeniedByPolicyError for deny-mode policies.
EffectiveConfig clamp(const RequestedParams& requested,
                      const AppPolicy& policy);

// Parses and validates a policy document (UTF-8 JSON, see README for the
// schema). Unknown fields fail closed. Throws PolicyError with kind
// parse / validation / missing_default.
PolicyStore load_policies(const std::string& document);

// load_policies over the contents of a file. Throws IoError when the
// file cannot be read.
PolicyStore load_policies_file(const std::filesystem::path& path);

// Inverse of load_policies on valid stores.
std::string serialize_policies(const PolicyStore& store);

}  // namespace geopriv

#endif  // GEOPRIV_POLICY_HPP_
