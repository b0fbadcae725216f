// Copyright 2026 The evplace Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EVPLACE_GEOMETRY_H_
#define EVPLACE_GEOMETRY_H_

#include <Eigen/Core>
#include <vector>

namespace evplace {

// All planning geometry is planar; coordinates are metres in an arbitrary
// local frame. Lon/lat inputs are projected before they reach this layer.
using Point = Eigen::Vector2d;

// Simple polygon as a closed ring (first vertex not repeated). Holes are not
// supported; multi-part regions are lists of Polygon.
struct Polygon {
  std::vector<Point> ring;
};

struct Region {
  std::vector<Polygon> parts;

  bool empty() const { return parts.empty(); }
  // Even-odd rule; boundary points count as inside.
  bool contains(const Point& p) const;
};

double distance(const Point& a, const Point& b);

// Equirectangular projection of (lon, lat) degrees to metres around a
// reference latitude. Adequate at city scale.
Point project_lonlat(double lon_deg, double lat_deg, double ref_lat_deg);

struct BoundingBox {
  Point min{0.0, 0.0};
  Point max{0.0, 0.0};
  bool valid = false;

  void extend(const Point& p);
};

}  // namespace evplace

#endif  // EVPLACE_GEOMETRY_H_
