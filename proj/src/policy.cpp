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

#include "geopriv/policy.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "geopriv/errors.hpp"

namespace geopriv {

namespace {

using nlohmann::json;

// Tolerance on the privacy-loss comparison: coins_for_epsilon followed
// by epsilon_of round-trips only to floating-point accuracy.
constexpr double kEpsilonSlack = 1e-9;

[[noreturn]] void fail_validation(const std::string& name,
                                  const std::string& why) {
  throw PolicyError(PolicyError::Kind::validation, name + ": " + why);
}

double require_number(const json& j, const std::string& name,
                      const std::string& key) {
  if (!j.is_number()) fail_validation(name, key + " must be a number");
  return j.get<double>();
}

GridSpec parse_grid(const json& j, const std::string& name) {
  if (!j.is_object()) fail_validation(name, "grid must be an object");
  double origin_lat = 0, origin_lon = 0, cell_size_m = 0;
  std::int64_t rows = 0, cols = 0;
  bool has_lat = false, has_lon = false, has_cell = false, has_rows = false,
       has_cols = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "origin_lat") {
      origin_lat = require_number(value, name, key);
      has_lat = true;
    } else if (key == "origin_lon") {
      origin_lon = require_number(value, name, key);
      has_lon = true;
    } else if (key == "cell_size_m") {
      cell_size_m = require_number(value, name, key);
      has_cell = true;
    } else if (key == "rows") {
      if (!value.is_number_integer()) fail_validation(name, "rows must be an integer");
      rows = value.get<std::int64_t>();
      has_rows = true;
    } else if (key == "cols") {
      if (!value.is_number_integer()) fail_validation(name, "cols must be an integer");
      cols = value.get<std::int64_t>();
      has_cols = true;
    } else {
      fail_validation(name, "unknown grid field \"" + key + "\"");
    }
  }
  if (!(has_lat && has_lon && has_cell && has_rows && has_cols)) {
    fail_validation(name, "grid requires origin_lat, origin_lon, cell_size_m, rows, cols");
  }
  if (rows < 1 || cols < 1) fail_validation(name, "grid rows/cols must be positive");
  try {
    return GridSpec(GeoPoint(origin_lat, origin_lon), cell_size_m,
                    static_cast<std::size_t>(rows),
                    static_cast<std::size_t>(cols));
  } catch (const Error& e) {
    fail_validation(name, e.what());
  }
}

BoundingBox parse_region(const json& j, const std::string& name) {
  if (!j.is_object()) fail_validation(name, "allowed_region must be an object");
  BoundingBox box;
  bool has_min_lat = false, has_min_lon = false, has_max_lat = false,
       has_max_lon = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "min_lat") {
      box.min_lat = require_number(value, name, key);
      has_min_lat = true;
    } else if (key == "min_lon") {
      box.min_lon = require_number(value, name, key);
      has_min_lon = true;
    } else if (key == "max_lat") {
      box.max_lat = require_number(value, name, key);
      has_max_lat = true;
    } else if (key == "max_lon") {
      box.max_lon = require_number(value, name, key);
      has_max_lon = true;
    } else {
      fail_validation(name, "unknown allowed_region field \"" + key + "\"");
    }
  }
  if (!(has_min_lat && has_min_lon && has_max_lat && has_max_lon)) {
    fail_validation(name, "allowed_region requires min_lat, min_lon, max_lat, max_lon");
  }
  if (box.min_lat > box.max_lat || box.min_lon > box.max_lon) {
    fail_validation(name, "allowed_region bounds are inverted");
  }
  return box;
}

AppPolicy parse_policy(const json& j, const std::string& name) {
  if (!j.is_object()) fail_validation(name, "policy must be an object");
  AppPolicy policy;
  bool has_mode = false, has_radius = false, has_eps = false, has_grid = false,
       has_region = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "mode") {
      if (!value.is_string()) fail_validation(name, "mode must be a string");
      const std::string mode = value.get<std::string>();
      if (mode == "radius") {
        policy.mode = PolicyMode::radius;
      } else if (mode == "grid") {
        policy.mode = PolicyMode::grid;
      } else if (mode == "deny") {
        policy.mode = PolicyMode::deny;
      } else {
        fail_validation(name, "unknown mode \"" + mode + "\"");
      }
      has_mode = true;
    } else if (key == "min_epoch_ms") {
      if (!value.is_number_integer()) {
        fail_validation(name, "min_epoch_ms must be an integer");
      }
      policy.min_epoch_ms = value.get<std::int64_t>();
    } else if (key == "min_radius_m") {
      policy.min_radius_m = require_number(value, name, key);
      has_radius = true;
    } else if (key == "max_epsilon") {
      const double eps = require_number(value, name, key);
      try {
        policy.max_epsilon = Epsilon(eps);
      } catch (const Error& e) {
        fail_validation(name, e.what());
      }
      has_eps = true;
    } else if (key == "grid") {
      policy.grid = parse_grid(value, name);
      has_grid = true;
    } else if (key == "allowed_region") {
      policy.allowed_region = parse_region(value, name);
      has_region = true;
    } else {
      fail_validation(name, "unknown field \"" + key + "\"");
    }
  }
  if (!has_mode) fail_validation(name, "policy requires a mode");
  // Fields that do not apply to the declared mode fail closed rather
  // than being silently dropped.
  if (policy.mode != PolicyMode::radius && has_radius) {
    fail_validation(name, "min_radius_m only applies to radius mode");
  }
  if (policy.mode != PolicyMode::grid && (has_eps || has_grid)) {
    fail_validation(name, "max_epsilon/grid only apply to grid mode");
  }
  if (policy.mode == PolicyMode::deny && has_region) {
    fail_validation(name, "allowed_region does not apply to deny mode");
  }
  policy.validate(name);
  return policy;
}

json grid_to_json(const GridSpec& g) {
  return json{{"origin_lat", g.origin.lat_deg},
              {"origin_lon", g.origin.lon_deg},
              {"cell_size_m", g.cell_size_m},
              {"rows", g.rows},
              {"cols", g.cols}};
}

json policy_to_json(const AppPolicy& p) {
  json j;
  j["mode"] = to_string(p.mode);
  j["min_epoch_ms"] = p.min_epoch_ms;
  if (p.mode == PolicyMode::radius) j["min_radius_m"] = p.min_radius_m;
  if (p.max_epsilon) j["max_epsilon"] = p.max_epsilon->value();
  if (p.grid) j["grid"] = grid_to_json(*p.grid);
  if (p.allowed_region) {
    j["allowed_region"] = json{{"min_lat", p.allowed_region->min_lat},
                               {"min_lon", p.allowed_region->min_lon},
                               {"max_lat", p.allowed_region->max_lat},
                               {"max_lon", p.allowed_region->max_lon}};
  }
  return j;
}

}  // namespace

const char* to_string(PolicyMode mode) {
  switch (mode) {
    case PolicyMode::radius:
      return "radius";
    case PolicyMode::grid:
      return "grid";
    case PolicyMode::deny:
      return "deny";
  }
  return "deny";
}

void AppPolicy::validate(const std::string& name) const {
  if (min_epoch_ms < 100) {
    fail_validation(name, "min_epoch_ms must be at least 100");
  }
  switch (mode) {
    case PolicyMode::radius:
      if (!(min_radius_m >= 0.0)) {
        fail_validation(name, "radius mode requires min_radius_m >= 0");
      }
      break;
    case PolicyMode::grid:
      if (!max_epsilon) fail_validation(name, "grid mode requires max_epsilon");
      if (!grid) fail_validation(name, "grid mode requires a grid");
      break;
    case PolicyMode::deny:
      break;
  }
}

const AppPolicy& PolicyStore::resolve(const std::string& app_id) const {
  auto it = entries.find(app_id);
  return it == entries.end() ? default_policy : it->second;
}

EffectiveConfig clamp(const RequestedParams& requested,
                      const AppPolicy& policy) {
  if (policy.mode == PolicyMode::deny) {
    throw DeniedByPolicyError("policy denies location release");
  }
  EffectiveConfig eff;
  eff.mode = policy.mode;
  eff.epoch_ms = std::max(requested.epoch_ms.value_or(policy.min_epoch_ms),
                          policy.min_epoch_ms);
  eff.allowed_region = policy.allowed_region;
  if (policy.mode == PolicyMode::radius) {
    eff.radius_m = std::max(requested.radius_m.value_or(policy.min_radius_m),
                            policy.min_radius_m);
    return eff;
  }
  // Grid mode. The epsilon budget is the checkable quantity: explicit
  // coins pass through only when their loss fits it.
  const double budget = policy.max_epsilon->value();
  if (requested.coins) {
    bool within = false;
    try {
      within = epsilon_of(*requested.coins) <= budget + kEpsilonSlack;
    } catch (const NoPrivacyError&) {
      within = false;  // p = 1 exceeds any finite budget
    }
    eff.coins = within ? *requested.coins
                       : coins_for_epsilon(Epsilon(budget));
  } else if (requested.epsilon) {
    eff.coins = coins_for_epsilon(Epsilon(std::min(*requested.epsilon, budget)));
  } else {
    eff.coins = coins_for_epsilon(Epsilon(budget));
  }
  eff.grid = policy.grid;
  return eff;
}

PolicyStore load_policies(const std::string& document) {
  json doc = json::parse(document, nullptr, false);
  if (doc.is_discarded()) {
    // Re-parse with exceptions to surface nlohmann's position diagnostics.
    try {
      doc = json::parse(document);
    } catch (const json::parse_error& e) {
      throw PolicyError(PolicyError::Kind::parse, e.what());
    }
  }
  if (!doc.is_object()) {
    throw PolicyError(PolicyError::Kind::parse, "top level must be an object");
  }
  PolicyStore store;
  bool has_default = false;
  for (const auto& [key, value] : doc.items()) {
    if (key == "default") {
      store.default_policy = parse_policy(value, "default");
      has_default = true;
    } else if (key == "apps") {
      if (!value.is_object()) {
        fail_validation("apps", "must map app ids to policies");
      }
      for (const auto& [app_id, policy_json] : value.items()) {
        if (app_id == "default") {
          fail_validation("apps.default", "\"default\" is reserved; use the top-level entry");
        }
        store.entries.emplace(app_id,
                              parse_policy(policy_json, "apps." + app_id));
      }
    } else {
      fail_validation(key, "unknown top-level field");
    }
  }
  if (!has_default) {
    throw PolicyError(PolicyError::Kind::missing_default,
                      "policy document has no \"default\" entry");
  }
  return store;
}

PolicyStore load_policies_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open policy file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_policies(buf.str());
}

std::string serialize_policies(const PolicyStore& store) {
  json doc;
  doc["default"] = policy_to_json(store.default_policy);
  json apps = json::object();
  for (const auto& [app_id, policy] : store.entries) {
    apps[app_id] = policy_to_json(policy);
  }
  doc["apps"] = apps;
  return doc.dump(2);
}

}  // namespace geopriv
