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

#ifndef EVPLACE_SIMULATOR_H_
#define EVPLACE_SIMULATOR_H_

#include <string>
#include <string_view>
#include <vector>

#include "evplace/plans.hpp"
#include "evplace/types.hpp"

namespace evplace {

// Greedy evaluation of a fixed station layout: drivers follow their cheapest
// workable charging plan, claim ports break by break, and fall back to more
// distant stations or to other plans when a port is taken. The process is
// fully deterministic; every tie is broken by identifier order.
struct SimConfig {
  // A station within this distance of a break counts as reachable without a
  // detour worth recording.
  double good_radius_m = 400.0;
  // Largest detour a driver accepts at all. Plans whose operations cannot be
  // served within this radius are unusable.
  double max_radius_m = 5000.0;
  // Days to chain in repeat_simulation; each day starts from the previous
  // day's closing state of charge.
  int repeat_loops = 1;

  void validate() const;
};

enum class SimOutcome {
  // Finished the day without any charging stop farther than good_radius_m.
  GoodNoDetour,
  // Finished the day but at least one stop exceeded good_radius_m.
  Detoured,
  // Ran out of usable plans; the driver's remaining breaks are dropped.
  NotCompatible,
};

std::string_view to_string(SimOutcome outcome);

// One charging stop a driver actually made.
struct ExecutedOperation {
  std::string break_id;
  ChargingMode mode = ChargingMode::AC;
  std::string station;
  double distance_m = 0.0;
};

struct DriverReport {
  std::string driver_id;
  SimOutcome outcome = SimOutcome::GoodNoDetour;
  // True when the driver's plan list has no empty plan, i.e. skipping public
  // charging entirely is not an option. Only these drivers are counted in
  // the SimReport totals.
  bool needs_public = false;
  double start_soc = 1.0;
  // Closing state of charge of the executed operations, floor violations
  // included for drivers that ran out of plans mid-day.
  double end_soc = 1.0;
  std::vector<ExecutedOperation> operations;
};

// One port reservation: the driver holds the port for the whole break.
struct PortUse {
  std::string driver_id;
  std::string break_id;
  Seconds start = 0;
  Seconds end = 0;
};

// Reservation timeline of one station, one vector per port. Intervals are
// half-open and non-overlapping within a port.
struct StationTrace {
  Station station;
  std::vector<std::vector<PortUse>> ports;
};

struct SimReport {
  std::vector<DriverReport> drivers;
  std::vector<StationTrace> stations;
  // Outcome totals over the drivers with needs_public set; they partition
  // that population.
  int num_needing = 0;
  int good_no_detour = 0;
  int detoured = 0;
  int not_compatible = 0;
};

// Plan indices carrying each label; good is a subset of compatible, both
// sorted ascending.
struct PlanLabels {
  std::vector<int> compatible;
  std::vector<int> good;
};

// A plan is compatible when every operation has a station of its mode within
// max_radius_m of the break, and good when within good_radius_m. The empty
// plan is both. Port contention is ignored here; labels are static.
PlanLabels label_plans(const Driver& driver,
                       const std::vector<ChargingPlan>& plans,
                       const std::vector<Station>& stations,
                       const SimConfig& config = {});

// The candidate a driver reaches for first: fewest operations, then earliest
// sorted vector of operation break start times (lexicographic), then lowest
// index. Throws std::invalid_argument when candidates is empty.
int preferred_plan(const Driver& driver, const std::vector<ChargingPlan>& plans,
                   const std::vector<int>& candidates);

// Runs one day. Every driver starts on its preferred good plan (preferred
// compatible plan when no good one exists; no compatible plan at all makes
// the driver NotCompatible outright). Breaks are processed in increasing
// start time, ties by break id. At a break where the current plan charges,
// the driver takes the nearest free port of the required mode, searching
// within good_radius_m while the plan is still labeled good and within
// max_radius_m otherwise; station ties break by token. When no port fits,
// the driver switches to the best other plan that is consistent with the
// stops made so far, preferring plans still labeled good, at worst giving
// up the good label of the current plan, and failing that becomes
// NotCompatible. plans must hold an entry for every driver.
SimReport run_simulation(const std::vector<Driver>& drivers,
                         const PlansByDriver& plans,
                         const std::vector<Station>& stations,
                         const SimConfig& config = {});

// Chains config.repeat_loops days: every driver's next start_soc is the
// closing SOC of its executed day, except NotCompatible drivers restart from
// their original start_soc. Plans and labels are not recomputed. Returns the
// last day's report.
SimReport repeat_simulation(const std::vector<Driver>& drivers,
                            const PlansByDriver& plans,
                            const std::vector<Station>& stations,
                            const SimConfig& config = {});

}  // namespace evplace

#endif  // EVPLACE_SIMULATOR_H_
