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

// geopriv-aggregate: analyst-side aggregation. Reads privatized
// bit-vector records (NDJSON, one per owner), sums them per cell, and
// inverts the randomized-response channel into per-cell population
// estimates.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "geopriv/batch.hpp"
#include "geopriv/errors.hpp"
#include "geopriv/estimator.hpp"
#include "tool_util.hpp"

namespace {

using geopriv::CellVector;
using nlohmann::json;

// One NDJSON line -> one owner's bit-vector.
CellVector parse_record(const std::string& line, std::size_t cells,
                        std::size_t line_no) {
  const json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("cells") ||
      !j["cells"].is_array()) {
    throw geopriv::InvalidArgumentError(
        "line " + std::to_string(line_no) +
        ": expected {\"app_id\":...,\"cells\":[0|1,...]}");
  }
  const auto& arr = j["cells"];
  if (arr.size() != cells) {
    throw geopriv::InvalidArgumentError(
        "line " + std::to_string(line_no) + ": record has " +
        std::to_string(arr.size()) + " cells, grid has " +
        std::to_string(cells));
  }
  CellVector v(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    if (!arr[i].is_number_integer() ||
        (arr[i] != 0 && arr[i] != 1)) {
      throw geopriv::InvalidArgumentError(
          "line " + std::to_string(line_no) + ": cells must be 0 or 1");
    }
    v[i] = arr[i].get<int>();
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geopriv-aggregate - population estimates from privatized "
               "bit-vector records"};

  std::string in_path = "-";
  std::string out_path = "-";
  std::string grid_spec;
  std::optional<double> epsilon;
  std::optional<std::string> coins_spec;

  app.add_option("--in", in_path, "NDJSON records file, - for stdin")
      ->capture_default_str();
  app.add_option("--out", out_path, "CSV output file, - for stdout")
      ->capture_default_str();
  app.add_option("--grid", grid_spec, "<rows>x<cols>:<cell_m>@<lat>,<lon>")
      ->required();
  app.add_option("--epsilon", epsilon, "privacy budget the records used");
  app.add_option("--coins", coins_spec, "coin biases the records used: <p>,<q>");

  CLI11_PARSE(app, argc, argv);

  try {
    const geopriv::GridSpec grid = geopriv::tools::parse_grid_flag(grid_spec);
    const geopriv::CoinPair coins =
        geopriv::tools::coins_from_flags(epsilon, coins_spec);

    std::ifstream file_in;
    if (in_path != "-") {
      file_in.open(in_path);
      if (!file_in) {
        throw geopriv::IoError("cannot open " + in_path);
      }
    }
    std::istream& in = in_path == "-" ? std::cin : file_in;

    std::vector<CellVector> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      records.push_back(parse_record(line, grid.cell_count(), line_no));
    }
    if (records.empty()) {
      throw geopriv::InvalidArgumentError("no input records");
    }

    const auto sums = geopriv::batch::sum_cell_vectors(
        records, grid.cell_count(), geopriv::batch::Execution::parallel);

    std::vector<geopriv::AggregateCount> aggregates;
    aggregates.reserve(sums.size());
    for (auto yes : sums) {
      aggregates.emplace_back(yes, records.size());
    }
    const auto estimates = geopriv::estimate_vector(aggregates, coins);

    std::ofstream file_out;
    if (out_path != "-") {
      file_out.open(out_path);
      if (!file_out) {
        throw geopriv::IoError("cannot open " + out_path);
      }
    }
    std::ostream& out = out_path == "-" ? std::cout : file_out;

    out << "cell_index,center_lat,center_lon,yes_count,raw,clamped,stderr\n";
    for (std::size_t c = 0; c < estimates.size(); ++c) {
      const geopriv::GeoPoint center = geopriv::cell_center(c, grid);
      out << c << ',' << geopriv::tools::csv_num(center.lat_deg) << ','
          << geopriv::tools::csv_num(center.lon_deg) << ',' << sums[c] << ','
          << geopriv::tools::csv_num(estimates[c].raw) << ','
          << geopriv::tools::csv_num(estimates[c].clamped) << ','
          << geopriv::tools::csv_num(estimates[c].stderr_est) << '\n';
    }
    std::fprintf(stderr, "geopriv-aggregate: %zu records over %zu cells\n",
                 records.size(), grid.cell_count());
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "geopriv-aggregate: %s\n", e.what());
    return 1;
  }
}
