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

#include "evplace/simulator.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "evplace/geometry.hpp"

namespace evplace {
namespace {

const Break& break_of(const Driver& driver, const std::string& break_id) {
  int index = driver.break_index(break_id);
  if (index < 0) {
    throw std::invalid_argument("plan for driver " + driver.id +
                                " references unknown break " + break_id);
  }
  return driver.breaks[index];
}

// Distance to the closest station offering the mode; +infinity without one.
double nearest_station_m(const Break& b, ChargingMode mode,
                         const std::vector<Station>& stations) {
  double best = std::numeric_limits<double>::infinity();
  for (const Station& st : stations) {
    if (st.mode != mode) continue;
    best = std::min(best, distance(b.location, st.position));
  }
  return best;
}

struct StationState {
  const Station* station = nullptr;
  std::vector<std::vector<PortUse>> ports;

  // Lowest port index free over [start, end), -1 when all are taken.
  int free_port(Seconds start, Seconds end) const {
    for (std::size_t p = 0; p < ports.size(); ++p) {
      bool busy = false;
      for (const PortUse& use : ports[p]) {
        if (use.start < end && start < use.end) {
          busy = true;
          break;
        }
      }
      if (!busy) return static_cast<int>(p);
    }
    return -1;
  }
};

struct DriverState {
  const Driver* driver = nullptr;
  const std::vector<ChargingPlan>* plans = nullptr;
  // Mutable copy of the labels; step 4 clears good flags one plan at a time.
  std::vector<char> good;
  std::vector<char> compatible;
  std::vector<char> dismissed;
  int preferred = -1;
  bool alive = true;
  bool needs_public = false;
  std::vector<ExecutedOperation> executed;
  std::map<std::string, ChargingMode> executed_by_break;
  // Own breaks whose event already ran; the current break never counts.
  std::set<std::string> passed;

  // A plan can replace the preferred one only when it retells the day so
  // far: every stop made appears in it with the same mode, and it plans no
  // stop at a break that already went by without one.
  bool consistent(const ChargingPlan& plan) const {
    for (const auto& [break_id, mode] : plan.operations) {
      if (passed.count(break_id) == 0) continue;
      auto it = executed_by_break.find(break_id);
      if (it == executed_by_break.end() || it->second != mode) return false;
    }
    for (const auto& [break_id, mode] : executed_by_break) {
      if (!plan.contains(break_id, mode)) return false;
    }
    return true;
  }
};

// Nearest station of the mode within limit_m that still has a free port over
// the break, ties by token then input order. False when none fits.
bool find_port(const Break& b, ChargingMode mode, double limit_m,
               const std::vector<StationState>& stations, int* station_out,
               int* port_out) {
  std::vector<std::tuple<double, std::string, int>> order;
  for (std::size_t i = 0; i < stations.size(); ++i) {
    const Station& st = *stations[i].station;
    if (st.mode != mode) continue;
    double dist = distance(b.location, st.position);
    if (dist > limit_m) continue;
    order.emplace_back(dist, st.location, static_cast<int>(i));
  }
  std::sort(order.begin(), order.end());
  for (const auto& [dist, token, index] : order) {
    int port = stations[index].free_port(b.start_time, b.end_time);
    if (port < 0) continue;
    *station_out = index;
    *port_out = port;
    return true;
  }
  return false;
}

// Best replacement plan by preferred_plan order, or -1. Candidates must be
// undismissed, consistent, different from the current preferred plan, and
// carry the requested label.
int switch_candidate(const DriverState& state, bool require_good) {
  std::vector<int> candidates;
  const auto& list = *state.plans;
  for (int i = 0; i < static_cast<int>(list.size()); ++i) {
    if (i == state.preferred || state.dismissed[i] != 0) continue;
    if (require_good ? state.good[i] == 0 : state.compatible[i] == 0) continue;
    if (!state.consistent(list[i])) continue;
    candidates.push_back(i);
  }
  if (candidates.empty()) return -1;
  return preferred_plan(*state.driver, list, candidates);
}

// One break of one driver: charge per the preferred plan, switching plans or
// widening the search radius when ports are taken, in this order: free port
// near a still-good plan; another good plan; the same plan with the good
// label given up and the wide radius; another compatible plan; give up.
void process_break(DriverState& state, const Break& b, const SimConfig& config,
                   std::vector<StationState>& stations) {
  while (true) {
    const ChargingPlan& plan = (*state.plans)[state.preferred];
    const std::pair<std::string, ChargingMode>* op = nullptr;
    for (const auto& candidate : plan.operations) {
      if (candidate.first == b.id) {
        op = &candidate;
        break;
      }
    }
    if (op == nullptr) return;

    bool good_phase = state.good[state.preferred] != 0;
    double limit = good_phase ? config.good_radius_m : config.max_radius_m;
    int station_index = -1;
    int port_index = -1;
    bool found =
        find_port(b, op->second, limit, stations, &station_index, &port_index);
    if (!found && good_phase) {
      int next = switch_candidate(state, /*require_good=*/true);
      if (next >= 0) {
        state.dismissed[state.preferred] = 1;
        state.preferred = next;
        continue;
      }
      state.good[state.preferred] = 0;
      found = find_port(b, op->second, config.max_radius_m, stations,
                        &station_index, &port_index);
    }
    if (found) {
      StationState& host = stations[station_index];
      host.ports[port_index].push_back(
          {state.driver->id, b.id, b.start_time, b.end_time});
      ExecutedOperation done;
      done.break_id = b.id;
      done.mode = op->second;
      done.station = host.station->location;
      done.distance_m = distance(b.location, host.station->position);
      state.executed.push_back(std::move(done));
      state.executed_by_break.emplace(b.id, op->second);
      return;
    }
    int next = switch_candidate(state, /*require_good=*/false);
    if (next >= 0) {
      state.dismissed[state.preferred] = 1;
      state.preferred = next;
      continue;
    }
    state.alive = false;
    return;
  }
}

}  // namespace

void SimConfig::validate() const {
  if (!(good_radius_m > 0.0) || !(good_radius_m <= max_radius_m)) {
    throw std::invalid_argument("radii must satisfy 0 < good <= max");
  }
  if (repeat_loops < 1) {
    throw std::invalid_argument("repeat_loops must be at least 1");
  }
}

std::string_view to_string(SimOutcome outcome) {
  switch (outcome) {
    case SimOutcome::GoodNoDetour:
      return "good_no_detour";
    case SimOutcome::Detoured:
      return "detoured";
    case SimOutcome::NotCompatible:
      return "not_compatible";
  }
  return "unknown";
}

PlanLabels label_plans(const Driver& driver,
                       const std::vector<ChargingPlan>& plans,
                       const std::vector<Station>& stations,
                       const SimConfig& config) {
  config.validate();
  PlanLabels labels;
  for (int i = 0; i < static_cast<int>(plans.size()); ++i) {
    bool compatible = true;
    bool good = true;
    for (const auto& [break_id, mode] : plans[i].operations) {
      double dist = nearest_station_m(break_of(driver, break_id), mode,
                                      stations);
      compatible = compatible && dist <= config.max_radius_m;
      good = good && dist <= config.good_radius_m;
    }
    if (compatible) labels.compatible.push_back(i);
    if (good) labels.good.push_back(i);
  }
  return labels;
}

int preferred_plan(const Driver& driver, const std::vector<ChargingPlan>& plans,
                   const std::vector<int>& candidates) {
  if (candidates.empty()) {
    throw std::invalid_argument("preferred_plan needs at least one candidate");
  }
  int best = -1;
  std::vector<Seconds> best_starts;
  for (int index : candidates) {
    if (index < 0 || index >= static_cast<int>(plans.size())) {
      throw std::invalid_argument("candidate index out of range");
    }
    std::vector<Seconds> starts;
    starts.reserve(plans[index].operations.size());
    for (const auto& [break_id, mode] : plans[index].operations) {
      starts.push_back(break_of(driver, break_id).start_time);
    }
    std::sort(starts.begin(), starts.end());
    bool better = false;
    if (best < 0) {
      better = true;
    } else if (starts.size() != best_starts.size()) {
      better = starts.size() < best_starts.size();
    } else if (starts != best_starts) {
      better = starts < best_starts;
    } else {
      better = index < best;
    }
    if (better) {
      best = index;
      best_starts = std::move(starts);
    }
  }
  return best;
}

SimReport run_simulation(const std::vector<Driver>& drivers,
                         const PlansByDriver& plans,
                         const std::vector<Station>& stations,
                         const SimConfig& config) {
  config.validate();

  std::vector<StationState> station_states;
  station_states.reserve(stations.size());
  for (const Station& st : stations) {
    if (st.ports < 1) {
      throw std::invalid_argument("station " + st.location +
                                  " must have at least one port");
    }
    StationState state;
    state.station = &st;
    state.ports.resize(st.ports);
    station_states.push_back(std::move(state));
  }

  std::vector<DriverState> driver_states(drivers.size());
  for (std::size_t i = 0; i < drivers.size(); ++i) {
    const Driver& d = drivers[i];
    auto it = plans.find(d.id);
    if (it == plans.end()) {
      throw std::invalid_argument("no plans for driver " + d.id);
    }
    DriverState& state = driver_states[i];
    state.driver = &d;
    state.plans = &it->second;
    const auto& list = it->second;
    state.good.assign(list.size(), 0);
    state.compatible.assign(list.size(), 0);
    state.dismissed.assign(list.size(), 0);
    PlanLabels labels = label_plans(d, list, stations, config);
    for (int index : labels.good) state.good[index] = 1;
    for (int index : labels.compatible) state.compatible[index] = 1;
    state.needs_public = std::none_of(
        list.begin(), list.end(),
        [](const ChargingPlan& plan) { return plan.empty(); });
    const std::vector<int>& pool =
        labels.good.empty() ? labels.compatible : labels.good;
    if (pool.empty()) {
      state.alive = false;
    } else {
      state.preferred = preferred_plan(d, list, pool);
    }
  }

  // (start time, break id, driver id, driver index, break index): the id
  // fields only break ties deterministically.
  std::vector<std::tuple<Seconds, std::string, std::string, int, int>> events;
  for (std::size_t i = 0; i < drivers.size(); ++i) {
    for (std::size_t k = 0; k < drivers[i].breaks.size(); ++k) {
      const Break& b = drivers[i].breaks[k];
      events.emplace_back(b.start_time, b.id, drivers[i].id,
                          static_cast<int>(i), static_cast<int>(k));
    }
  }
  std::sort(events.begin(), events.end());

  for (const auto& [start, break_id, driver_id, di, bi] : events) {
    DriverState& state = driver_states[di];
    if (!state.alive) continue;
    const Break& b = drivers[di].breaks[bi];
    process_break(state, b, config, station_states);
    state.passed.insert(b.id);
  }

  SimReport report;
  report.drivers.reserve(drivers.size());
  for (std::size_t i = 0; i < drivers.size(); ++i) {
    const Driver& d = drivers[i];
    const DriverState& state = driver_states[i];
    DriverReport entry;
    entry.driver_id = d.id;
    entry.needs_public = state.needs_public;
    entry.start_soc = d.start_soc;
    entry.operations = state.executed;

    ChargingPlan done;
    done.driver_id = d.id;
    for (const ExecutedOperation& op : state.executed) {
      done.operations.emplace_back(op.break_id, op.mode);
    }
    std::sort(done.operations.begin(), done.operations.end(),
              [&d](const auto& a, const auto& b) {
                return d.break_index(a.first) < d.break_index(b.first);
              });
    entry.end_soc = simulate_soc(d, done).final_soc();

    if (!state.alive) {
      entry.outcome = SimOutcome::NotCompatible;
    } else {
      bool all_near = std::all_of(
          state.executed.begin(), state.executed.end(),
          [&config](const ExecutedOperation& op) {
            return op.distance_m <= config.good_radius_m;
          });
      entry.outcome = (state.good[state.preferred] != 0 && all_near)
                          ? SimOutcome::GoodNoDetour
                          : SimOutcome::Detoured;
    }
    if (entry.needs_public) {
      ++report.num_needing;
      switch (entry.outcome) {
        case SimOutcome::GoodNoDetour:
          ++report.good_no_detour;
          break;
        case SimOutcome::Detoured:
          ++report.detoured;
          break;
        case SimOutcome::NotCompatible:
          ++report.not_compatible;
          break;
      }
    }
    report.drivers.push_back(std::move(entry));
  }

  report.stations.reserve(station_states.size());
  for (const StationState& state : station_states) {
    report.stations.push_back({*state.station, state.ports});
  }
  return report;
}

SimReport repeat_simulation(const std::vector<Driver>& drivers,
                            const PlansByDriver& plans,
                            const std::vector<Station>& stations,
                            const SimConfig& config) {
  config.validate();
  std::vector<Driver> work(drivers.begin(), drivers.end());
  SimReport report;
  for (int loop = 0; loop < config.repeat_loops; ++loop) {
    report = run_simulation(work, plans, stations, config);
    if (loop + 1 == config.repeat_loops) break;
    for (std::size_t i = 0; i < work.size(); ++i) {
      const DriverReport& entry = report.drivers[i];
      work[i].start_soc = entry.outcome == SimOutcome::NotCompatible
                              ? drivers[i].start_soc
                              : entry.end_soc;
    }
  }
  return report;
}

}  // namespace evplace
