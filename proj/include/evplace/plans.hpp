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

#ifndef EVPLACE_PLANS_H_
#define EVPLACE_PLANS_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "evplace/types.hpp"

namespace evplace {

// A set of charging operations for one driver: at most one mode per break,
// kept sorted by the driver's break order. Executing an operation occupies a
// port for the whole break.
struct ChargingPlan {
  std::string driver_id;
  std::vector<std::pair<std::string, ChargingMode>> operations;

  int size() const { return static_cast<int>(operations.size()); }
  bool empty() const { return operations.empty(); }
  bool contains(std::string_view break_id, ChargingMode mode) const;
  bool has_break(std::string_view break_id) const;

  bool operator==(const ChargingPlan& other) const = default;
};

// SOC samples at the start of the day and after every trip and break, in
// chronological order. Values may exceed the feasible band; feasibility is
// judged by is_feasible.
struct SocTrajectory {
  std::vector<std::pair<Seconds, double>> samples;

  double final_soc() const { return samples.back().second; }
  double min_soc() const;
};

// Number of charging operations at which a plan is accepted without
// simulation. Plans this large always recover a full working day.
inline constexpr int kPlanAutoFeasibleSize = 4;

SocTrajectory simulate_soc(const Driver& driver, const ChargingPlan& plan);

// As simulate_soc but with the start SOC overridden.
SocTrajectory simulate_soc_from(const Driver& driver, const ChargingPlan& plan,
                                double start_soc);

bool is_feasible(const Driver& driver, const ChargingPlan& plan,
                 int plan_auto_feasible_size = kPlanAutoFeasibleSize);

// Least start SOC (resolved to 1e-6 by bisection) such that DC charging at
// every chargeable break keeps the trajectory at or above the floor.
// Returns +infinity when even a full battery is not enough.
double min_start_soc(const Driver& driver);

// All feasible plans over the driver's chargeable breaks whose one-step
// weakenings (drop an operation, or downgrade DC to AC) are all infeasible.
// Mode assignments are searched exhaustively below the fiat size; fiat-sized
// all-AC plans are emitted only when nothing smaller is feasible. Returned
// in lexicographic (break order, AC before DC) order.
std::vector<ChargingPlan> enumerate_minimal_plans(
    const Driver& driver, int plan_auto_feasible_size = kPlanAutoFeasibleSize);

// Feasible plan lists keyed by driver id, usually one enumerate_minimal_plans
// result per driver of an instance.
using PlansByDriver = std::map<std::string, std::vector<ChargingPlan>>;

}  // namespace evplace

#endif  // EVPLACE_PLANS_H_
