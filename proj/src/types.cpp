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

#include "evplace/types.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace evplace {

std::string_view to_string(ChargingMode mode) {
  return mode == ChargingMode::AC ? "AC" : "DC";
}

ChargingMode mode_from_string(std::string_view name) {
  if (name == "AC" || name == "ac") return ChargingMode::AC;
  if (name == "DC" || name == "dc") return ChargingMode::DC;
  throw std::invalid_argument("unknown charging mode: " + std::string(name));
}

void ChargingCurve::validate() const {
  if (breakpoints.size() < 2) {
    throw std::invalid_argument("charging curve needs at least 2 breakpoints");
  }
  if (breakpoints.front().first != 0.0 || breakpoints.back().first != 1.0) {
    throw std::invalid_argument("charging curve must cover soc in [0, 1]");
  }
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (breakpoints[i].second < 0.0) {
      throw std::invalid_argument("charging power must be nonnegative");
    }
    if (i > 0 && breakpoints[i].first <= breakpoints[i - 1].first) {
      throw std::invalid_argument("charging curve soc must strictly increase");
    }
  }
}

double ChargingCurve::power_at(double soc) const {
  if (soc <= breakpoints.front().first) return breakpoints.front().second;
  if (soc >= breakpoints.back().first) return breakpoints.back().second;
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (soc <= breakpoints[i].first) {
      auto [s0, p0] = breakpoints[i - 1];
      auto [s1, p1] = breakpoints[i];
      return p0 + (soc - s0) / (s1 - s0) * (p1 - p0);
    }
  }
  return breakpoints.back().second;
}

ChargingCurve ChargingCurve::constant(double power_kw) {
  return ChargingCurve{{{0.0, power_kw}, {1.0, power_kw}}};
}

const ChargingCurve& VehicleSpec::curve(ChargingMode mode) const {
  auto it = curves.find(mode);
  if (it == curves.end()) {
    throw std::invalid_argument("vehicle has no curve for mode " +
                                std::string(to_string(mode)));
  }
  return it->second;
}

void VehicleSpec::validate() const {
  if (battery_kwh <= 0.0) throw std::invalid_argument("battery_kwh <= 0");
  if (consumption_kwh_per_100km <= 0.0) {
    throw std::invalid_argument("consumption_kwh_per_100km <= 0");
  }
  for (const auto& [mode, curve] : curves) curve.validate();
}

VehicleSpec VehicleSpec::default_compact() {
  VehicleSpec v;
  v.battery_kwh = 50.0;
  v.consumption_kwh_per_100km = 19.23;
  // 11 kW nominal AC derated by a 0.85 efficiency factor.
  v.curves[ChargingMode::AC] = ChargingCurve::constant(11.0 * 0.85);
  v.curves[ChargingMode::DC] =
      ChargingCurve{{{0.0, 60.0}, {0.5, 60.0}, {1.0, 10.0}}};
  return v;
}

void Driver::validate() const {
  vehicle.validate();
  if (start_soc < soc_floor - 1e-12 || start_soc > 1.0 + 1e-12) {
    throw std::invalid_argument("driver " + id + ": start_soc out of range");
  }
  if (end_soc_target < 0.0 || end_soc_target > 1.0) {
    throw std::invalid_argument("driver " + id + ": end_soc_target invalid");
  }
  for (std::size_t i = 0; i < trips.size(); ++i) {
    const Trip& t = trips[i];
    if (t.end_time < t.start_time || t.soc_delta < 0.0) {
      throw std::invalid_argument("driver " + id + ": malformed trip");
    }
    if (i > 0 && t.start_time < trips[i - 1].end_time) {
      throw std::invalid_argument("driver " + id + ": overlapping trips");
    }
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    const Break& b = breaks[i];
    if (b.end_time <= b.start_time) {
      throw std::invalid_argument("driver " + id + ": empty break " + b.id);
    }
    if (i > 0 && b.start_time < breaks[i - 1].end_time) {
      throw std::invalid_argument("driver " + id + ": overlapping breaks");
    }
    if (!seen.insert(b.id).second) {
      throw std::invalid_argument("driver " + id + ": duplicate break id");
    }
  }
}

int Driver::break_index(std::string_view break_id) const {
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    if (breaks[i].id == break_id) return static_cast<int>(i);
  }
  return -1;
}

const Point* Instance::find_location(std::string_view token) const {
  auto it = std::lower_bound(
      locations.begin(), locations.end(), token,
      [](const auto& entry, std::string_view t) { return entry.first < t; });
  if (it == locations.end() || it->first != token) return nullptr;
  return &it->second;
}

int Instance::num_driver_sets() const {
  int max_set = -1;
  for (const Driver& d : drivers) max_set = std::max(max_set, d.set_index);
  return max_set + 1;
}

std::vector<Seconds> Instance::default_time_points() const {
  std::set<Seconds> starts;
  for (const Driver& d : drivers) {
    for (const Break& b : d.breaks) starts.insert(b.start_time);
  }
  return {starts.begin(), starts.end()};
}

void Instance::validate() const {
  std::set<std::string> driver_ids;
  for (const Driver& d : drivers) {
    d.validate();
    if (!driver_ids.insert(d.id).second) {
      throw std::invalid_argument("duplicate driver id " + d.id);
    }
    if (d.set_index < 0) {
      throw std::invalid_argument("driver " + d.id + ": negative set index");
    }
  }
  for (std::size_t i = 0; i < locations.size(); ++i) {
    if (i > 0 && locations[i].first <= locations[i - 1].first) {
      throw std::invalid_argument("locations must be sorted by unique token");
    }
  }
  std::set<std::pair<std::string, int>> type_keys;
  for (const StationType& t : catalog) {
    if (t.ports <= 0) throw std::invalid_argument("catalog entry ports <= 0");
    if (t.cost < 0.0) throw std::invalid_argument("catalog entry cost < 0");
    if (find_location(t.location) == nullptr) {
      throw std::invalid_argument("catalog references unknown location " +
                                  t.location);
    }
    if (!type_keys.insert({t.location, static_cast<int>(t.mode) * 1000000 +
                                           t.ports}).second) {
      throw std::invalid_argument("duplicate catalog entry at " + t.location);
    }
  }
  for (const auto& [break_id, tokens] : nearby) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i > 0 && tokens[i] <= tokens[i - 1]) {
        throw std::invalid_argument("nearby tokens must be sorted, break " +
                                    break_id);
      }
      if (find_location(tokens[i]) == nullptr) {
        throw std::invalid_argument("nearby references unknown location " +
                                    tokens[i]);
      }
    }
  }
  if (!time_points.empty()) {
    for (std::size_t i = 1; i < time_points.size(); ++i) {
      if (time_points[i] <= time_points[i - 1]) {
        throw std::invalid_argument("time_points must be sorted and distinct");
      }
    }
    std::set<Seconds> have(time_points.begin(), time_points.end());
    for (const Seconds t : default_time_points()) {
      if (!have.count(t)) {
        throw std::invalid_argument(
            "time_points must include every break start time");
      }
    }
  }
}

}  // namespace evplace
