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

#ifndef EVPLACE_POLYTOPE_H_
#define EVPLACE_POLYTOPE_H_

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "evplace/plans.hpp"
#include "evplace/types.hpp"

namespace evplace {

using Rational = boost::multiprecision::cpp_rational;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

// Column layout for the operation-incidence space of one driver: chargeable
// breaks in schedule order, AC before DC within a break.
struct PlanIndexMap {
  std::vector<std::pair<std::string, ChargingMode>> columns;

  int dimension() const { return static_cast<int>(columns.size()); }
  // -1 when the pair is not indexed.
  int column(std::string_view break_id, ChargingMode mode) const;

  static PlanIndexMap for_driver(const Driver& driver);
};

inline constexpr int kDefaultDimensionCap = 12;

struct DimensionCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a driver has no plan that avoids every operation with an empty
// location set; such a driver cannot execute any of its plans.
struct PlanNotExecutable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One inequality sum_j coeffs[j] * q_j >= rhs with integer entries, gcd 1.
struct HRepRow {
  RationalVector coeffs;
  Rational rhs;
};

// Exact inequality description of the convex hull of a 0/1 point set.
// Affine-hull equalities appear as paired rows; every other row supports a
// facet relative to the affine hull.
struct HRep {
  PlanIndexMap index_map;
  std::vector<Eigen::VectorXi> points;
  std::vector<HRepRow> rows;

  bool satisfied_by(const Eigen::VectorXi& q) const;
  std::string debug_dump() const;
};

Eigen::VectorXi characteristic_vector(const ChargingPlan& plan,
                                      const PlanIndexMap& index_map);

HRep facet_description(const std::vector<Eigen::VectorXi>& points,
                       PlanIndexMap index_map,
                       int dimension_cap = kDefaultDimensionCap);

// One hull row pushed into station-assignment space: the coefficient of
// column (b, m) is copied onto y_{b,l,m} for every location l near b.
struct ProjectedTerm {
  std::string break_id;
  std::string location;
  ChargingMode mode;
  long long coeff;
};

struct ProjectedRow {
  std::vector<ProjectedTerm> terms;
  long long rhs;  // sum of terms >= rhs
};

std::vector<ProjectedRow> project_to_y(
    const HRep& hrep,
    const std::map<std::string, std::vector<std::string>>& nearby);

}  // namespace evplace

#endif  // EVPLACE_POLYTOPE_H_
