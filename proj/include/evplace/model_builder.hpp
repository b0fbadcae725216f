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

#ifndef EVPLACE_MODEL_BUILDER_H_
#define EVPLACE_MODEL_BUILDER_H_

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "evplace/milp.hpp"
#include "evplace/plans.hpp"
#include "evplace/polytope.hpp"
#include "evplace/types.hpp"

namespace evplace {

// A violated port-capacity row must exceed this before separation returns it.
inline constexpr double kSeparationTol = 1e-6;

enum class ModelVariant {
  // Minimize total station cost subject to satisfying every driver.
  MinCost,
  // Maximize the number of satisfied drivers subject to a cost budget.
  MaxSatisfiedUnderBudget,
};

struct BuildOptions {
  // Adds rows y_{d,b,l,m} <= sum_D x_{l,m,D} that stop the LP relaxation
  // from paying for a fraction of a multi-port station.
  bool use_capacity_cuts = false;
  // Replaces the per-plan selection variables by the facet description of
  // each driver's plan polytope, projected onto the y columns. Drivers with
  // no hull description keep their selection variables. Applies to MinCost
  // only; the budget variant always keeps selection variables because its
  // convexity constant is a variable.
  bool use_plan_cuts = false;
  // Relaxes y to continuous [0,1]; stations and plan selections stay binary.
  bool fractional_y = false;
  // Callers that set this wire separate_generalized_cut into the solver as
  // a lazy row source; build() itself emits nothing for it.
  bool generalized_cut_separation = false;
  ModelVariant variant = ModelVariant::MinCost;
  // Total cost allowed in the budget variant; must be positive there.
  double budget = 0.0;
  // Number of independent driver sets (think: distinct days). Drivers carry
  // their set in Driver::set_index; sets share the station variables but get
  // their own capacity and plan rows. The effective count is the larger of
  // this field and the instance's own set count.
  int driver_sets = 1;
};

// Column lookup for every variable family, keyed the way rows are generated.
// Iteration order of the maps matches model column order within a family.
struct VariableCatalog {
  // (location, mode, ports) -> column of x.
  std::map<std::tuple<std::string, ChargingMode, int>, int> x;
  // (set, driver, break, location, mode) -> column of y; present exactly for
  // the locations within reach of the break.
  std::map<std::tuple<int, std::string, std::string, std::string, ChargingMode>,
           int>
      y;
  // (set, driver, plan index) -> column of z; present for drivers that keep
  // explicit plan selection (plan cuts off, hull missing, or budget variant).
  std::map<std::tuple<int, std::string, int>, int> z;
  // (set, driver) -> column of the satisfaction indicator; budget variant.
  std::map<std::pair<int, std::string>, int> s;

  // -1 when absent.
  int x_column(std::string_view location, ChargingMode mode, int ports) const;
  int y_column(int set, std::string_view driver, std::string_view break_id,
               std::string_view location, ChargingMode mode) const;
};

using HRepByDriver = std::map<std::string, HRep>;

// Times at which one port-capacity row per (location, mode) suffices: the
// sorted distinct start times of breaks within reach of the location, minus
// any start whose active break set repeats the previously kept one. Capacity
// at every other instant is implied because each break still active at time
// t was already active at the latest break start before t. The mode does not
// change the result; it is accepted so call sites read like the rows they
// emit.
std::vector<Seconds> dedup_time_points(const Instance& instance,
                                       std::string_view location,
                                       ChargingMode mode);

// One row y_{d,b,l,m} <= sum_D x_{l,m,D} per y column. Valid because a built
// station admits at most one plan operation per break, and no station means
// no charging at all.
std::vector<Constraint> capacity_cuts(const Instance& instance,
                                      const VariableCatalog& catalog);

// Searches every (set, location, mode, time) site for the most violated row
//   sum_{(d,b) in S} y_{d,b,l,m} <= sum_D min(|S|, D) * x_{l,m,D}
// where S grows greedily over the breaks active at the site in decreasing
// order of their y value. Returns the overall winner when its violation
// exceeds kSeparationTol, otherwise nothing. |S| = 1 reproduces a capacity
// cut; every integer solution satisfies all such rows.
std::optional<Constraint> separate_generalized_cut(
    const Instance& instance, const VariableCatalog& catalog,
    const std::vector<double>& values);

// Assembles the placement program:
//   (a) objective: MinCost minimizes station cost; the budget variant
//       maximizes satisfied drivers with cost held under options.budget;
//   (b) at most one station per location;
//   (c) port capacity per (set, location, mode) at dedup_time_points;
//   (d) plan selection per driver, either explicit (z columns, a convexity
//       row, and rows matching y to the selected plan's operations) or as
//       the projected hull rows when options.use_plan_cuts and a hull for
//       the driver is supplied;
//   (e) capacity cut rows when options.use_capacity_cuts;
//   (f) x, z, s binary; y binary unless options.fractional_y.
// plans must hold a nonempty vector for every driver. hulls may cover any
// subset of drivers; uncovered drivers fall back to explicit selection.
// When catalog is non-null it receives the column lookup for the model.
MilpModel build_placement_model(const Instance& instance,
                                const PlansByDriver& plans,
                                const HRepByDriver& hulls,
                                const BuildOptions& options = {},
                                VariableCatalog* catalog = nullptr);

// Reads the x block of a solution back into station objects, one per x
// column whose assigned value exceeds one half; absent names count as 0.
// model and catalog must come from the same build_placement_model call.
std::vector<Station> stations_from_solution(
    const Instance& instance, const MilpModel& model,
    const VariableCatalog& catalog,
    const std::map<std::string, double>& assignment);

}  // namespace evplace

#endif  // EVPLACE_MODEL_BUILDER_H_
