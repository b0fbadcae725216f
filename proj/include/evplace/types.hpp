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

#ifndef EVPLACE_TYPES_H_
#define EVPLACE_TYPES_H_

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "evplace/geometry.hpp"

namespace evplace {

// Time is measured in seconds from the start of the planning day.
using Seconds = std::int64_t;

enum class ChargingMode : int { AC = 0, DC = 1 };

inline constexpr std::array<ChargingMode, 2> kAllModes{ChargingMode::AC,
                                                       ChargingMode::DC};

std::string_view to_string(ChargingMode mode);
ChargingMode mode_from_string(std::string_view name);

// Effective charging power (kW) as a piecewise-linear function of state of
// charge. Breakpoints are (soc, power_kw) with strictly increasing soc,
// covering [0, 1] exactly.
struct ChargingCurve {
  std::vector<std::pair<double, double>> breakpoints;

  void validate() const;
  double power_at(double soc) const;

  static ChargingCurve constant(double power_kw);
};

struct VehicleSpec {
  double battery_kwh = 50.0;
  double consumption_kwh_per_100km = 19.23;
  std::map<ChargingMode, ChargingCurve> curves;

  const ChargingCurve& curve(ChargingMode mode) const;
  void validate() const;

  // Compact-class reference vehicle: 50 kWh battery, 19.23 kWh/100km, AC at
  // a constant 9.35 kW effective, DC at 60 kW up to 50% then tapering
  // linearly to 10 kW at full charge.
  static VehicleSpec default_compact();
};

struct Trip {
  Point start_location{0.0, 0.0};
  Point end_location{0.0, 0.0};
  Seconds start_time = 0;
  Seconds end_time = 0;
  // Fraction of battery consumed (nonnegative).
  double soc_delta = 0.0;
};

struct Break {
  std::string id;
  Point location{0.0, 0.0};
  Seconds start_time = 0;
  Seconds end_time = 0;
  // Breaks outside the planning region cannot host charging operations.
  bool chargeable = true;

  Seconds duration() const { return end_time - start_time; }
};

struct Driver {
  std::string id;
  VehicleSpec vehicle;
  std::vector<Trip> trips;
  std::vector<Break> breaks;
  double start_soc = 1.0;
  double end_soc_target = 0.2;
  double soc_floor = 0.10;
  bool has_wallbox = false;
  bool in_city = false;
  // Tag for instances that pool several day schedules into one model; all
  // drivers with the same set index share station capacity.
  int set_index = 0;

  void validate() const;
  int break_index(std::string_view break_id) const;
};

// One buildable station configuration at a location: a mode with a port
// count and a cost. At most one catalog entry may be built per location.
struct StationType {
  std::string location;
  ChargingMode mode = ChargingMode::AC;
  int ports = 1;
  double cost = 0.0;
};

struct Instance {
  std::string name;
  std::vector<Driver> drivers;
  // Candidate locations, keyed by token; kept sorted by token.
  std::vector<std::pair<std::string, Point>> locations;
  std::vector<StationType> catalog;
  // break id -> sorted tokens of locations within reach of that break.
  std::map<std::string, std::vector<std::string>> nearby;
  // Sorted distinct times at which capacity is checked; defaults to the
  // break start times if left empty.
  std::vector<Seconds> time_points;

  const Point* find_location(std::string_view token) const;
  int num_driver_sets() const;
  std::vector<Seconds> default_time_points() const;
  void validate() const;
};

// A built station: a catalog choice placed at its location.
struct Station {
  std::string location;
  Point position{0.0, 0.0};
  ChargingMode mode = ChargingMode::AC;
  int ports = 1;
  double cost = 0.0;
};

}  // namespace evplace

#endif  // EVPLACE_TYPES_H_
