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

#include "geopriv/geo.hpp"

#include <cmath>
#include <string>

#include "geopriv/errors.hpp"

namespace geopriv {

namespace {

constexpr double kPi = 3.14159265358979323846;

double deg2rad(double deg) { return deg * kPi / 180.0; }

}  // namespace

GeoPoint::GeoPoint(double lat, double lon) : lat_deg(lat), lon_deg(lon) {
  if (!std::isfinite(lat) || lat < -90.0 || lat > 90.0) {
    throw InvalidArgumentError("latitude out of range: " + std::to_string(lat));
  }
  if (!std::isfinite(lon) || lon < -180.0 || lon > 180.0) {
    throw InvalidArgumentError("longitude out of range: " +
                               std::to_string(lon));
  }
}

GridSpec::GridSpec(GeoPoint origin_, double cell_size_m_, std::size_t rows_,
                   std::size_t cols_)
    : origin(origin_), cell_size_m(cell_size_m_), rows(rows_), cols(cols_) {
  if (!std::isfinite(cell_size_m) || cell_size_m <= 0.0) {
    throw InvalidArgumentError("grid cell size must be positive");
  }
  if (rows < 1 || cols < 1) {
    throw InvalidArgumentError("grid must have at least one cell");
  }
  if (static_cast<double>(rows) * cell_size_m > kMaxGridExtentM ||
      static_cast<double>(cols) * cell_size_m > kMaxGridExtentM) {
    throw InvalidArgumentError(
        "grid extent exceeds the planar validity bound (100 km per axis)");
  }
  if (std::abs(origin.lat_deg) >= 89.0) {
    throw PolarRegionError("grid origin within 1 degree of a pole");
  }
}

bool GridSpec::operator==(const GridSpec& other) const {
  return origin.lat_deg == other.origin.lat_deg &&
         origin.lon_deg == other.origin.lon_deg &&
         cell_size_m == other.cell_size_m && rows == other.rows &&
         cols == other.cols;
}

std::pair<double, double> meters_to_deg(double north_m, double east_m,
                                        const GeoPoint& at) {
  if (std::abs(at.lat_deg) >= 89.0) {
    throw PolarRegionError("meter offsets degenerate within 1 degree of a pole");
  }
  const double dlat = north_m / kMetersPerDegree;
  const double dlon = east_m / (kMetersPerDegree * std::cos(deg2rad(at.lat_deg)));
  return {dlat, dlon};
}

std::pair<double, double> deg_to_meters(double dlat, double dlon,
                                        const GeoPoint& at) {
  if (std::abs(at.lat_deg) >= 89.0) {
    throw PolarRegionError("meter offsets degenerate within 1 degree of a pole");
  }
  const double north_m = dlat * kMetersPerDegree;
  const double east_m = dlon * kMetersPerDegree * std::cos(deg2rad(at.lat_deg));
  return {north_m, east_m};
}

std::optional<CellIndex> cell_of(const GeoPoint& p, const GridSpec& g) {
  const auto [north_m, east_m] = deg_to_meters(
      p.lat_deg - g.origin.lat_deg, p.lon_deg - g.origin.lon_deg, g.origin);
  const double row_f = std::floor(north_m / g.cell_size_m);
  const double col_f = std::floor(east_m / g.cell_size_m);
  if (row_f < 0.0 || col_f < 0.0 || row_f >= static_cast<double>(g.rows) ||
      col_f >= static_cast<double>(g.cols)) {
    return std::nullopt;
  }
  const auto row = static_cast<std::size_t>(row_f);
  const auto col = static_cast<std::size_t>(col_f);
  return row * g.cols + col;
}

GeoPoint cell_center(CellIndex i, const GridSpec& g) {
  if (i >= g.cell_count()) {
    throw IndexOutOfRangeError("cell index " + std::to_string(i) +
                               " outside grid of " +
                               std::to_string(g.cell_count()) + " cells");
  }
  const std::size_t row = i / g.cols;
  const std::size_t col = i % g.cols;
  const double north_m = (static_cast<double>(row) + 0.5) * g.cell_size_m;
  const double east_m = (static_cast<double>(col) + 0.5) * g.cell_size_m;
  const auto [dlat, dlon] = meters_to_deg(north_m, east_m, g.origin);
  return GeoPoint(g.origin.lat_deg + dlat, g.origin.lon_deg + dlon);
}

double haversine_m(const GeoPoint& a, const GeoPoint& b) {
  const double lat1 = deg2rad(a.lat_deg);
  const double lat2 = deg2rad(b.lat_deg);
  const double u = std::sin((lat2 - lat1) / 2.0);
  const double v = std::sin(deg2rad(b.lon_deg - a.lon_deg) / 2.0);
  const double s = u * u + std::cos(lat1) * std::cos(lat2) * v * v;
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(std::min(1.0, s)));
}

CellVector one_hot(CellIndex i, const GridSpec& g) {
  if (i >= g.cell_count()) {
    throw IndexOutOfRangeError("cell index " + std::to_string(i) +
                               " outside grid of " +
                               std::to_string(g.cell_count()) + " cells");
  }
  CellVector v(g.cell_count(), 0);
  v[i] = 1;
  return v;
}

}  // namespace geopriv
