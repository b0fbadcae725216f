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

#ifndef EVPLACE_SCENARIO_H_
#define EVPLACE_SCENARIO_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "evplace/geometry.hpp"
#include "evplace/types.hpp"

namespace evplace {

// One recorded movement of a raw agent, before any filtering. Positions are
// planar metres; the battery fraction a trip costs is derived later from the
// distance and the assigned vehicle.
struct RawTrip {
  Point start{0.0, 0.0};
  Point end{0.0, 0.0};
  Seconds start_time = 0;
  Seconds end_time = 0;
  double distance_km = 0.0;
  // Transport tag, e.g. "car"; only car trips enter the pipeline.
  std::string transport;
};

struct RawAgent {
  std::string id;
  std::vector<RawTrip> trips;

  // Trips must be chronologically ordered and well formed.
  void validate() const;
};

struct ScenarioParams {
  // A day schedule counts as a closed tour when consecutive trips, and the
  // last and first trip, connect within this distance.
  double closed_tour_radius_m = 300.0;
  double grid_cell_m = 100.0;
  double nearby_radius_m = 200.0;
  // Share of city residents with a home charger; everyone outside has one.
  double wallbox_rate_city = 0.39;
  double soc_floor = 0.10;
  double min_start_soc_floor = 0.20;
  // The trip data undersamples real traffic by this factor; it enters the
  // sampling arithmetic only through the ground-set size below.
  double ground_set_scale = 4.0;
  // Unscaled driver count behind the electrification arithmetic (the number
  // of car drivers before any filtering). 0 derives it from the pool sizes
  // handed to sample_population.
  std::int64_t ground_set_count = 0;
  // Fraction of the scaled ground set that drives electric.
  double electrification_rate = 0.01;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

// Agents restricted to trips with the given transport tag; agents left with
// no trips are dropped.
std::vector<RawAgent> keep_transport(const std::vector<RawAgent>& agents,
                                     std::string_view transport);

// Keeps agents whose every consecutive trip pair, and the last and first
// trip, have end and start locations within radius_m (closed comparison),
// and turns them into drivers: trip battery costs from the vehicle's
// consumption, breaks between consecutive trips.
std::vector<Driver> filter_closed_tours(
    const std::vector<RawAgent>& agents, double radius_m,
    const VehicleSpec& vehicle = VehicleSpec::default_compact());

// Marks each break chargeable iff its location lies inside the region. An
// empty region leaves every break chargeable.
void mark_chargeable(std::vector<Driver>& drivers, const Region& region);

// Drops drivers that cannot keep their state of charge at or above the
// floor even when starting full and fast-charging at every chargeable break.
std::vector<Driver> exclude_undersupplied(const std::vector<Driver>& drivers);

// Splits drivers into city residents (first trip starts inside the region)
// and the rest, setting in_city accordingly.
std::pair<std::vector<Driver>, std::vector<Driver>> split_by_residence(
    const std::vector<Driver>& drivers, const Region& region);

struct StratumSizes {
  std::int64_t city = 0;
  std::int64_t outside = 0;
};

// Number of drivers to draw from each residence stratum: both real-valued
// targets rate * ground_set * pool share are floored, and the leftover
// against floor(rate * ground_set) goes to the city stratum.
StratumSizes stratum_sizes(std::int64_t ground_set, std::int64_t city_pool,
                           std::int64_t total_pool, double rate);

// Samples the two strata, assigns wallboxes and starting charge, and sets
// each driver's end-of-day target to max(least viable start, floor). Pool
// drivers must already be filtered so that target is attainable. Outside
// drivers all get a wallbox; wallbox owners start full, the rest draw a
// start uniformly between the target and full.
std::vector<Driver> sample_population(const std::vector<Driver>& pool_city,
                                      const std::vector<Driver>& pool_outside,
                                      const ScenarioParams& params);

// Candidate station sites: centers of a square grid over the region's
// bounding box that fall inside the region, with tokens "<row>_<col>"
// counted from the box's lower-left corner. Sorted by token.
std::vector<std::pair<std::string, Point>> generate_grid(const Region& region,
                                                         double cell_m);

// Locations within radius_m of each break (closed ball, planar distance),
// over all breaks of all drivers. Values are sorted location tokens.
std::map<std::string, std::vector<std::string>> nearby_sets(
    const std::vector<Driver>& drivers,
    const std::vector<std::pair<std::string, Point>>& locations,
    double radius_m);

// Ids of chargeable breaks with no location in reach; their drivers cannot
// execute any plan that charges at such a break.
std::vector<std::string> unreachable_breaks(
    const std::vector<Driver>& drivers,
    const std::map<std::string, std::vector<std::string>>& nearby);

struct ReducedLocations {
  std::vector<std::pair<std::string, Point>> locations;
  std::map<std::string, std::vector<std::string>> nearby;
};

// Drops every location whose reachable break set is a subset of another
// location's; locations with equal sets keep only the smallest token. Valid
// when all locations offer the same station options, which holds for grid
// scenarios; the nearby map is rewritten to the survivors.
ReducedLocations eliminate_dominated(
    const std::vector<std::pair<std::string, Point>>& locations,
    const std::map<std::string, std::vector<std::string>>& nearby);

// Pools several sampled days into one driver list: day k's drivers get
// set_index k and an "s<k>_" prefix on driver and break ids so that ids
// stay unique when the same pool driver is drawn on multiple days.
std::vector<Driver> merge_driver_sets(
    const std::vector<std::vector<Driver>>& sets);

struct SynthKnobs {
  int num_drivers = 10;
  // Fraction of drivers (rounded to a count) that cannot finish their day
  // without public charging.
  double needing_fraction = 0.6;
  // Side length of the square planning region.
  double region_m = 1000.0;
  double grid_cell_m = 250.0;
  double nearby_radius_m = 200.0;
  // Port options offered at every location; an AC station with n ports
  // costs n, a DC station 2n.
  std::vector<int> ac_ports = {2, 4};
  std::vector<int> dc_ports = {4};
  int min_trips = 2;
  int max_trips = 4;

  void validate() const;
};

// Deterministic synthetic city: closed random tours inside a square region,
// grid locations reduced by domination, full catalog at every survivor.
// Drivers are constructed so that exactly the requested count need public
// charging and every driver admits a feasible plan.
Instance synth_instance(std::uint64_t seed, const SynthKnobs& knobs = {});

}  // namespace evplace

#endif  // EVPLACE_SCENARIO_H_
