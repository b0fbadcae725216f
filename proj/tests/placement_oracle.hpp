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

// Exhaustive reference solvers for tiny placement instances. They share no
// code with the integer-programming pipeline: stations are enumerated as
// catalog subsets (at most one entry per location) and plan operations are
// assigned to stations by backtracking with per-set port counters.

#ifndef EVPLACE_TESTS_PLACEMENT_ORACLE_H_
#define EVPLACE_TESTS_PLACEMENT_ORACLE_H_

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "evplace/model_builder.hpp"
#include "evplace/types.hpp"

namespace evplace::testing {

struct OracleStation {
  const StationType* type = nullptr;
  // Occupied intervals (set, start, end); drivers of different sets never
  // compete for ports.
  std::vector<std::tuple<int, Seconds, Seconds>> busy;
};

// Port counts respected if adding the interval keeps the maximum number of
// simultaneously open same-set intervals at or below the port count. It is
// enough to probe interval start times.
inline bool oracle_fits(const OracleStation& station, int set, Seconds start,
                        Seconds end) {
  std::vector<std::pair<Seconds, Seconds>> same = {{start, end}};
  for (const auto& [s, a, b] : station.busy) {
    if (s == set) same.emplace_back(a, b);
  }
  for (const auto& [probe, probe_end] : same) {
    (void)probe_end;
    int open = 0;
    for (const auto& [a, b] : same) {
      if (a <= probe && probe < b) ++open;
    }
    if (open > station.type->ports) return false;
  }
  return true;
}

class OracleAssigner {
 public:
  OracleAssigner(const Instance& instance, const PlansByDriver& plans,
                 std::map<std::string, OracleStation>& stations)
      : instance_(instance), plans_(plans), stations_(stations) {}

  bool satisfiable(const std::vector<const Driver*>& order) {
    return drivers_from(order, 0);
  }

 private:
  bool drivers_from(const std::vector<const Driver*>& order, std::size_t i) {
    if (i == order.size()) return true;
    const Driver& d = *order[i];
    for (const ChargingPlan& plan : plans_.at(d.id)) {
      if (ops_from(order, i, d, plan, 0)) return true;
    }
    return false;
  }

  bool ops_from(const std::vector<const Driver*>& order, std::size_t i,
                const Driver& d, const ChargingPlan& plan, std::size_t j) {
    if (j == plan.operations.size()) return drivers_from(order, i + 1);
    const auto& [break_id, mode] = plan.operations[j];
    int bi = d.break_index(break_id);
    if (bi < 0) return false;
    const Break& brk = d.breaks[bi];
    auto nb = instance_.nearby.find(break_id);
    if (nb == instance_.nearby.end()) return false;
    for (const std::string& location : nb->second) {
      auto st = stations_.find(location);
      if (st == stations_.end() || st->second.type->mode != mode) continue;
      if (!oracle_fits(st->second, d.set_index, brk.start_time,
                       brk.end_time)) {
        continue;
      }
      st->second.busy.emplace_back(d.set_index, brk.start_time, brk.end_time);
      if (ops_from(order, i, d, plan, j + 1)) return true;
      st->second.busy.pop_back();
    }
    return false;
  }

  const Instance& instance_;
  const PlansByDriver& plans_;
  std::map<std::string, OracleStation>& stations_;
};

inline bool oracle_satisfiable(const Instance& instance,
                               const PlansByDriver& plans,
                               const std::vector<const StationType*>& built,
                               const std::vector<const Driver*>& drivers) {
  std::map<std::string, OracleStation> stations;
  for (const StationType* t : built) stations[t->location].type = t;
  OracleAssigner assigner(instance, plans, stations);
  return assigner.satisfiable(drivers);
}

// Catalog entries grouped by location, in location order.
inline std::vector<std::vector<const StationType*>> oracle_location_options(
    const Instance& instance) {
  std::map<std::string, std::vector<const StationType*>> by_location;
  for (const StationType& t : instance.catalog) {
    by_location[t.location].push_back(&t);
  }
  std::vector<std::vector<const StationType*>> options;
  for (auto& [location, entries] : by_location) {
    options.push_back(std::move(entries));
  }
  return options;
}

// Minimum total cost of a catalog subset (at most one entry per location)
// under which every driver executes one of its plans; +infinity when none.
inline double oracle_min_cost(const Instance& instance,
                              const PlansByDriver& plans) {
  const auto options = oracle_location_options(instance);
  std::vector<const Driver*> drivers;
  for (const Driver& d : instance.drivers) drivers.push_back(&d);

  double best = std::numeric_limits<double>::infinity();
  std::vector<const StationType*> built;
  auto recurse = [&](auto&& self, std::size_t li, double cost) -> void {
    if (cost >= best) return;
    if (li == options.size()) {
      if (oracle_satisfiable(instance, plans, built, drivers)) best = cost;
      return;
    }
    self(self, li + 1, cost);
    for (const StationType* t : options[li]) {
      built.push_back(t);
      self(self, li + 1, cost + t->cost);
      built.pop_back();
    }
  };
  recurse(recurse, 0, 0.0);
  return best;
}

// Largest number of drivers jointly satisfiable by a catalog subset whose
// cost stays within the budget.
inline int oracle_max_satisfied(const Instance& instance,
                                const PlansByDriver& plans, double budget) {
  const auto options = oracle_location_options(instance);
  const int n = static_cast<int>(instance.drivers.size());

  int best = 0;
  std::vector<const StationType*> built;
  auto try_subset = [&]() {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      int count = __builtin_popcount(mask);
      if (count <= best) continue;
      std::vector<const Driver*> chosen;
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i)) chosen.push_back(&instance.drivers[i]);
      }
      if (oracle_satisfiable(instance, plans, built, chosen)) best = count;
    }
  };
  auto recurse = [&](auto&& self, std::size_t li, double cost) -> void {
    if (cost > budget + 1e-9 || best == n) return;
    if (li == options.size()) {
      try_subset();
      return;
    }
    self(self, li + 1, cost);
    for (const StationType* t : options[li]) {
      built.push_back(t);
      self(self, li + 1, cost + t->cost);
      built.pop_back();
    }
  };
  recurse(recurse, 0, 0.0);
  return best;
}

}  // namespace evplace::testing

#endif  // EVPLACE_TESTS_PLACEMENT_ORACLE_H_
