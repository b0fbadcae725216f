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

#include <cmath>
#include <cstdint>
#include <numbers>

#include "evplace/geometry.hpp"
#include "evplace/rng.hpp"

namespace evplace {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next_u64());  // full range
  std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % span);
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return lo + static_cast<std::int64_t>(v % span);
}

std::vector<int> Rng::sample_without_replacement(int n, int k) {
  if (k > n || k < 0) {
    throw std::invalid_argument("sample_without_replacement: k out of range");
  }
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  for (int i = 0; i < k; ++i) {
    int j = static_cast<int>(uniform_int(i, n - 1));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

Rng substream(std::uint64_t seed, std::string_view name) {
  return Rng(splitmix64(seed ^ splitmix64(fnv1a(name))));
}

double distance(const Point& a, const Point& b) { return (a - b).norm(); }

bool Region::contains(const Point& p) const {
  bool inside = false;
  for (const Polygon& poly : parts) {
    const auto& r = poly.ring;
    std::size_t n = r.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const Point& a = r[j];
      const Point& b = r[i];
      // Boundary counts as inside.
      Point ab = b - a;
      Point ap = p - a;
      double cross = ab.x() * ap.y() - ab.y() * ap.x();
      double dot = ap.dot(ab);
      if (std::abs(cross) < 1e-12 * (1.0 + ab.norm() * ap.norm()) &&
          dot >= 0.0 && dot <= ab.squaredNorm()) {
        return true;
      }
      if ((a.y() > p.y()) != (b.y() > p.y())) {
        double x_int = a.x() + (p.y() - a.y()) / (b.y() - a.y()) * ab.x();
        if (p.x() < x_int) inside = !inside;
      }
    }
  }
  return inside;
}

Point project_lonlat(double lon_deg, double lat_deg, double ref_lat_deg) {
  constexpr double kEarthRadiusM = 6371000.0;
  const double deg = std::numbers::pi / 180.0;
  double x = kEarthRadiusM * lon_deg * deg * std::cos(ref_lat_deg * deg);
  double y = kEarthRadiusM * lat_deg * deg;
  return Point{x, y};
}

void BoundingBox::extend(const Point& p) {
  if (!valid) {
    min = max = p;
    valid = true;
    return;
  }
  min = min.cwiseMin(p);
  max = max.cwiseMax(p);
}

}  // namespace evplace
