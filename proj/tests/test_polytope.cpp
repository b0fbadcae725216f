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

#include "evplace/polytope.hpp"

#include <algorithm>
#include <set>

#include "doctest.h"
#include "evplace/rng.hpp"

namespace evplace {
namespace {

Eigen::VectorXi vec(std::initializer_list<int> vals) {
  Eigen::VectorXi v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (int x : vals) v[i++] = x;
  return v;
}

PlanIndexMap map_of_dim(int n) {
  // Synthetic column labels; geometry tests do not need real breaks.
  PlanIndexMap map;
  for (int i = 0; i * 2 < n; ++i) {
    map.columns.emplace_back("b" + std::to_string(i), ChargingMode::AC);
    if (static_cast<int>(map.columns.size()) < n) {
      map.columns.emplace_back("b" + std::to_string(i), ChargingMode::DC);
    }
  }
  map.columns.resize(n);
  return map;
}

std::vector<Eigen::VectorXi> all_binaries(int n) {
  std::vector<Eigen::VectorXi> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Eigen::VectorXi v(n);
    for (int j = 0; j < n; ++j) v[j] = (mask >> j) & 1;
    out.push_back(v);
  }
  return out;
}

void check_membership_equivalence(const std::vector<Eigen::VectorXi>& points,
                                  const HRep& hrep) {
  std::set<std::vector<int>> in;
  for (const auto& p : points) {
    in.insert(std::vector<int>(p.data(), p.data() + p.size()));
  }
  for (const auto& q : all_binaries(static_cast<int>(points[0].size()))) {
    bool member = in.count(std::vector<int>(q.data(), q.data() + q.size())) > 0;
    CHECK(hrep.satisfied_by(q) == member);
  }
}

TEST_CASE("characteristic vectors") {
  Driver d;
  d.id = "d0";
  for (int i = 0; i < 2; ++i) {
    Break b;
    b.id = "b" + std::to_string(i + 1);
    b.start_time = i * 1000;
    b.end_time = i * 1000 + 500;
    d.breaks.push_back(b);
  }
  PlanIndexMap map = PlanIndexMap::for_driver(d);
  REQUIRE(map.dimension() == 4);
  CHECK(map.columns[0] == std::pair<std::string, ChargingMode>{"b1", ChargingMode::AC});
  CHECK(map.columns[1] == std::pair<std::string, ChargingMode>{"b1", ChargingMode::DC});

  CHECK(characteristic_vector(ChargingPlan{"d0", {}}, map) == vec({0, 0, 0, 0}));
  CHECK(characteristic_vector(ChargingPlan{"d0", {{"b1", ChargingMode::AC}}},
                              map) == vec({1, 0, 0, 0}));
  CHECK(characteristic_vector(
            ChargingPlan{"d0",
                         {{"b1", ChargingMode::DC}, {"b2", ChargingMode::AC}}},
            map) == vec({0, 1, 1, 0}));
  CHECK_THROWS_AS(characteristic_vector(
                      ChargingPlan{"d0", {{"zz", ChargingMode::AC}}}, map),
                  std::invalid_argument);
}

TEST_CASE("unit square has four facets") {
  auto points = all_binaries(2);
  HRep hrep = facet_description(points, map_of_dim(2));
  CHECK(hrep.rows.size() == 4);
  check_membership_equivalence(points, hrep);
  // All facets are box rows: +-1 coefficient, rhs 0 or -1.
  for (const HRepRow& row : hrep.rows) {
    int nonzero = 0;
    for (Eigen::Index j = 0; j < row.coeffs.size(); ++j) {
      if (!row.coeffs[j].is_zero()) ++nonzero;
    }
    CHECK(nonzero == 1);
  }
}

TEST_CASE("triangle facets") {
  std::vector<Eigen::VectorXi> points{vec({0, 0}), vec({1, 0}), vec({0, 1})};
  HRep hrep = facet_description(points, map_of_dim(2));
  CHECK(hrep.rows.size() == 3);
  check_membership_equivalence(points, hrep);
}

TEST_CASE("cube with one corner removed") {
  std::vector<Eigen::VectorXi> points;
  for (const auto& q : all_binaries(3)) {
    if (q.sum() < 3) points.push_back(q);
  }
  HRep hrep = facet_description(points, map_of_dim(3));
  // Three lower box facets, three upper triangles, one diagonal cut.
  CHECK(hrep.rows.size() == 7);
  check_membership_equivalence(points, hrep);
}

TEST_CASE("single point yields equalities only") {
  std::vector<Eigen::VectorXi> points{vec({1, 0, 1})};
  HRep hrep = facet_description(points, map_of_dim(3));
  check_membership_equivalence(points, hrep);
  // Pairs of opposite rows pin each coordinate.
  CHECK(hrep.rows.size() == 6);
}

TEST_CASE("diagonal segment gets an affine-hull equality") {
  std::vector<Eigen::VectorXi> points{vec({0, 0}), vec({1, 1})};
  HRep hrep = facet_description(points, map_of_dim(2));
  check_membership_equivalence(points, hrep);
}

TEST_CASE("input order does not matter") {
  Rng rng = substream(31, "hull-shuffle");
  auto points = all_binaries(4);
  std::vector<Eigen::VectorXi> subset;
  for (const auto& p : points) {
    if (p.sum() <= 2) subset.push_back(p);
  }
  HRep a = facet_description(subset, map_of_dim(4));
  for (int trial = 0; trial < 5; ++trial) {
    auto shuffled = subset;
    rng.shuffle(shuffled);
    HRep b = facet_description(shuffled, map_of_dim(4));
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      CHECK(a.rows[i].coeffs == b.rows[i].coeffs);
      CHECK(a.rows[i].rhs == b.rows[i].rhs);
    }
  }
}

TEST_CASE("random point sets: binary membership matches exactly") {
  Rng rng = substream(32, "hull-random");
  for (int trial = 0; trial < 25; ++trial) {
    int n = static_cast<int>(rng.uniform_int(2, 5));
    auto universe = all_binaries(n);
    std::vector<Eigen::VectorXi> points;
    for (const auto& p : universe) {
      if (rng.uniform01() < 0.45) points.push_back(p);
    }
    if (points.empty()) points.push_back(universe[0]);
    HRep hrep = facet_description(points, map_of_dim(n));
    check_membership_equivalence(points, hrep);
    for (const auto& p : points) CHECK(hrep.satisfied_by(p));
  }
}

TEST_CASE("higher-dimensional spot checks up to dimension 10") {
  Rng rng = substream(33, "hull-highdim");
  for (int n : {6, 8, 10}) {
    // Sparse point clouds keep the hull small but irregular.
    std::vector<Eigen::VectorXi> points;
    auto universe = all_binaries(n);
    for (const auto& p : universe) {
      if (rng.uniform01() < 12.0 / static_cast<double>(universe.size())) {
        points.push_back(p);
      }
    }
    points.push_back(universe[0]);
    points.push_back(universe.back());
    HRep hrep = facet_description(points, map_of_dim(n));
    check_membership_equivalence(points, hrep);
  }
}

TEST_CASE("dimension cap is enforced") {
  std::vector<Eigen::VectorXi> points{Eigen::VectorXi::Zero(13)};
  CHECK_THROWS_AS(facet_description(points, map_of_dim(13)),
                  DimensionCapExceeded);
  CHECK_NOTHROW(facet_description(points, map_of_dim(13), 13));
}

TEST_CASE("integer coefficients with gcd one") {
  Rng rng = substream(34, "hull-gcd");
  auto universe = all_binaries(4);
  std::vector<Eigen::VectorXi> points;
  for (const auto& p : universe) {
    if (rng.uniform01() < 0.5) points.push_back(p);
  }
  points.push_back(universe[3]);
  HRep hrep = facet_description(points, map_of_dim(4));
  for (const HRepRow& row : hrep.rows) {
    using boost::multiprecision::cpp_int;
    cpp_int g = numerator(row.rhs);
    CHECK(denominator(row.rhs) == 1);
    for (Eigen::Index j = 0; j < row.coeffs.size(); ++j) {
      CHECK(denominator(row.coeffs[j]) == 1);
      g = boost::multiprecision::gcd(g, numerator(row.coeffs[j]));
    }
    CHECK(boost::multiprecision::abs(g) == 1);
  }
}

TEST_CASE("projection replicates coefficients over nearby locations") {
  // Hand-built single-row description: q_{b1,AC} <= 1.
  HRep hrep;
  hrep.index_map = PlanIndexMap{};
  hrep.index_map.columns = {{"b1", ChargingMode::AC},
                            {"b1", ChargingMode::DC},
                            {"b2", ChargingMode::AC},
                            {"b2", ChargingMode::DC}};
  hrep.points = {vec({0, 0, 0, 0}), vec({1, 0, 1, 0})};
  HRepRow row;
  row.coeffs = RationalVector::Zero(4);
  row.coeffs[0] = -1;
  row.rhs = -1;
  hrep.rows.push_back(row);

  std::map<std::string, std::vector<std::string>> nearby{
      {"b1", {"l1", "l2"}}, {"b2", {"l1"}}};
  auto rows = project_to_y(hrep, nearby);
  REQUIRE(rows.size() == 1);
  REQUIRE(rows[0].terms.size() == 2);
  CHECK(rows[0].rhs == -1);
  CHECK(rows[0].terms[0].location == "l1");
  CHECK(rows[0].terms[1].location == "l2");
  for (const auto& t : rows[0].terms) {
    CHECK(t.break_id == "b1");
    CHECK(t.mode == ChargingMode::AC);
    CHECK(t.coeff == -1);
  }

  // Row touching both breaks: q_{b1,AC} + q_{b2,AC} >= 1.
  HRepRow both;
  both.coeffs = RationalVector::Zero(4);
  both.coeffs[0] = 1;
  both.coeffs[2] = 1;
  both.rhs = 1;
  hrep.rows = {both};
  rows = project_to_y(hrep, nearby);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].terms.size() == 3);  // two copies for b1, one for b2
}

TEST_CASE("unreachable mandatory operation is flagged") {
  HRep hrep;
  hrep.index_map.columns = {{"b1", ChargingMode::AC}, {"b1", ChargingMode::DC}};
  // Every plan charges at b1.
  hrep.points = {vec({1, 0}), vec({0, 1})};
  std::map<std::string, std::vector<std::string>> nearby{{"b1", {}}};
  CHECK_THROWS_AS(project_to_y(hrep, nearby), PlanNotExecutable);

  // A plan avoiding b1 exists: projection succeeds and drops dead columns.
  hrep.points.push_back(vec({0, 0}));
  HRepRow row;
  row.coeffs = RationalVector::Zero(2);
  row.coeffs[0] = -1;
  row.rhs = -1;
  hrep.rows = {row};
  auto rows = project_to_y(hrep, nearby);
  CHECK(rows.empty());  // the only row became vacuous
}

}  // namespace
}  // namespace evplace
