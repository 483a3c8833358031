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

#ifndef GEOPRIV_GEO_HPP_
#define GEOPRIV_GEO_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace geopriv {

// Meters per degree of latitude under the local equirectangular
// approximation used throughout. Longitude scales by cos(latitude).
inline constexpr double kMetersPerDegree = 111320.0;

// Mean Earth radius for great-circle distances, in meters.
inline constexpr double kEarthRadiusM = 6371000.0;

// Grids and offsets are planar approximations; they stay accurate for
// city-scale extents and are rejected beyond this bound per axis.
inline constexpr double kMaxGridExtentM = 100000.0;

// A WGS-84 style coordinate pair in decimal degrees. Construction
// rejects values outside [-90, 90] x [-180, 180] and non-finite input.
struct GeoPoint {
  double lat_deg = 0.0;
  double lon_deg = 0.0;

  GeoPoint() = default;
  GeoPoint(double lat, double lon);
};

// Latitude/longitude bounding box, closed on all edges.
struct BoundingBox {
  double min_lat = 0.0;
  double min_lon = 0.0;
  double max_lat = 0.0;
  double max_lon = 0.0;

  bool contains(const GeoPoint& p) const {
    return p.lat_deg >= min_lat && p.lat_deg <= max_lat &&
           p.lon_deg >= min_lon && p.lon_deg <= max_lon;
  }
};

// Row-major discretization of a rectangular patch of the location space.
// `origin` is the southwest corner; cell (0,0) touches it. Cells are
// half-open on their north and east edges so every interior point maps
// to exactly one cell. The planar frame is anchored at the origin
// latitude, which makes cell_of and cell_center exact inverses.
struct GridSpec {
  GeoPoint origin;
  double cell_size_m = 0.0;
  std::size_t rows = 0;
  std::size_t cols = 0;

  GridSpec() = default;
  GridSpec(GeoPoint origin, double cell_size_m, std::size_t rows,
           std::size_t cols);

  std::size_t cell_count() const { return rows * cols; }

  bool operator==(const GridSpec& other) const;
};

// Index of one grid cell, row-major: index = row * cols + col.
using CellIndex = std::size_t;

// One bit per grid cell, length rows * cols.
using CellVector = std::vector<std::uint8_t>;

// Degree offsets for a northward/eastward displacement in meters at the
// given point. Throws PolarRegionError when |lat| >= 89 degrees, where
// the cos(lat) term degenerates.
std::pair<double, double> meters_to_deg(double north_m, double east_m,
                                        const GeoPoint& at);

// Inverse of meters_to_deg: northward/eastward meters for a degree
// offset at the given point.
std::pair<double, double> deg_to_meters(double dlat, double dlon,
                                        const GeoPoint& at);

// Cell containing p, or nullopt when p falls outside the grid extent.
// Outside is an ordinary outcome, not a failure: region gating treats
// off-grid points as "nothing to reveal".
std::optional<CellIndex> cell_of(const GeoPoint& p, const GridSpec& g);

// Geographic center of cell i. Throws IndexOutOfRangeError.
GeoPoint cell_center(CellIndex i, const GridSpec& g);

// Great-circle distance in meters (haversine, spherical Earth).
double haversine_m(const GeoPoint& a, const GeoPoint& b);

// Truth vector with exactly bit i set. Throws IndexOutOfRangeError.
CellVector one_hot(CellIndex i, const GridSpec& g);

}  // namespace geopriv

#endif  // GEOPRIV_GEO_HPP_
