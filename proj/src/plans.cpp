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

#include "evplace/plans.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

#include "evplace/charging.hpp"

namespace evplace {

namespace {

constexpr double kFloorTol = 1e-9;

// Plan over break indices, sorted, at most one mode per break. AC orders
// before DC so that lexicographic comparison matches the documented output
// order.
using PlanKey = std::vector<std::pair<int, int>>;

PlanKey key_of(const Driver& driver, const ChargingPlan& plan) {
  PlanKey key;
  key.reserve(plan.operations.size());
  for (const auto& [break_id, mode] : plan.operations) {
    int idx = driver.break_index(break_id);
    if (idx < 0) {
      throw std::invalid_argument("plan references unknown break " + break_id +
                                  " of driver " + driver.id);
    }
    key.emplace_back(idx, static_cast<int>(mode));
  }
  std::sort(key.begin(), key.end());
  for (std::size_t i = 1; i < key.size(); ++i) {
    if (key[i].first == key[i - 1].first) {
      throw std::invalid_argument("plan has two operations at one break of " +
                                  driver.id);
    }
  }
  return key;
}

ChargingPlan plan_of(const Driver& driver, const PlanKey& key) {
  ChargingPlan plan;
  plan.driver_id = driver.id;
  for (const auto& [idx, mode] : key) {
    plan.operations.emplace_back(driver.breaks[idx].id,
                                 static_cast<ChargingMode>(mode));
  }
  return plan;
}

SocTrajectory simulate_key(const Driver& driver, const PlanKey& key,
                           double start_soc) {
  // Merge trips and breaks chronologically. Intervals do not overlap, so
  // ordering by start time is enough.
  struct Event {
    Seconds start;
    Seconds end;
    bool is_trip;
    int index;
  };
  std::vector<Event> events;
  events.reserve(driver.trips.size() + driver.breaks.size());
  for (std::size_t i = 0; i < driver.trips.size(); ++i) {
    events.push_back({driver.trips[i].start_time, driver.trips[i].end_time,
                      true, static_cast<int>(i)});
  }
  for (std::size_t i = 0; i < driver.breaks.size(); ++i) {
    events.push_back({driver.breaks[i].start_time, driver.breaks[i].end_time,
                      false, static_cast<int>(i)});
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const Event& a, const Event& b) {
                     return std::tie(a.start, a.end) < std::tie(b.start, b.end);
                   });

  std::map<int, ChargingMode> op_at;
  for (const auto& [idx, mode] : key) {
    op_at[idx] = static_cast<ChargingMode>(mode);
  }

  SocTrajectory traj;
  double soc = start_soc;
  Seconds t0 = events.empty() ? 0 : events.front().start;
  traj.samples.emplace_back(t0, soc);
  auto push = [&traj](Seconds t, double s) {
    if (!traj.samples.empty() && traj.samples.back().first == t) {
      traj.samples.back().second = s;
    } else {
      traj.samples.emplace_back(t, s);
    }
  };
  for (const Event& ev : events) {
    if (ev.is_trip) {
      soc -= driver.trips[ev.index].soc_delta;
    } else if (auto it = op_at.find(ev.index); it != op_at.end()) {
      const Break& b = driver.breaks[ev.index];
      soc = soc_after_charge(driver.vehicle.curve(it->second),
                             driver.vehicle.battery_kwh, soc,
                             static_cast<double>(b.duration()));
    }
    push(ev.end, soc);
  }
  return traj;
}

bool key_feasible_by_simulation(const Driver& driver, const PlanKey& key) {
  SocTrajectory traj = simulate_key(driver, key, driver.start_soc);
  return traj.min_soc() >= driver.soc_floor - kFloorTol &&
         traj.final_soc() >= driver.end_soc_target - kFloorTol;
}

}  // namespace

bool ChargingPlan::contains(std::string_view break_id,
                            ChargingMode mode) const {
  for (const auto& [b, m] : operations) {
    if (b == break_id && m == mode) return true;
  }
  return false;
}

bool ChargingPlan::has_break(std::string_view break_id) const {
  for (const auto& [b, m] : operations) {
    if (b == break_id) return true;
  }
  return false;
}

double SocTrajectory::min_soc() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& [t, s] : samples) m = std::min(m, s);
  return m;
}

SocTrajectory simulate_soc(const Driver& driver, const ChargingPlan& plan) {
  return simulate_key(driver, key_of(driver, plan), driver.start_soc);
}

SocTrajectory simulate_soc_from(const Driver& driver, const ChargingPlan& plan,
                                double start_soc) {
  return simulate_key(driver, key_of(driver, plan), start_soc);
}

bool is_feasible(const Driver& driver, const ChargingPlan& plan,
                 int plan_auto_feasible_size) {
  PlanKey key = key_of(driver, plan);
  if (static_cast<int>(key.size()) >= plan_auto_feasible_size) return true;
  return key_feasible_by_simulation(driver, key);
}

double min_start_soc(const Driver& driver) {
  PlanKey all_dc;
  for (std::size_t i = 0; i < driver.breaks.size(); ++i) {
    if (driver.breaks[i].chargeable) {
      all_dc.emplace_back(static_cast<int>(i),
                          static_cast<int>(ChargingMode::DC));
    }
  }
  auto stays_above_floor = [&](double s) {
    return simulate_key(driver, all_dc, s).min_soc() >=
           driver.soc_floor - kFloorTol;
  };
  if (!stays_above_floor(1.0)) {
    return std::numeric_limits<double>::infinity();
  }
  double lo = driver.soc_floor;
  if (stays_above_floor(lo)) return lo;
  double hi = 1.0;
  while (hi - lo > 1e-6) {
    double mid = 0.5 * (lo + hi);
    (stays_above_floor(mid) ? hi : lo) = mid;
  }
  return hi;
}

std::vector<ChargingPlan> enumerate_minimal_plans(
    const Driver& driver, int plan_auto_feasible_size) {
  std::vector<int> chargeable;
  for (std::size_t i = 0; i < driver.breaks.size(); ++i) {
    if (driver.breaks[i].chargeable) chargeable.push_back(static_cast<int>(i));
  }
  const int n = static_cast<int>(chargeable.size());
  const int k = plan_auto_feasible_size;

  // Simulate every mode assignment on subsets below the fiat size.
  std::map<PlanKey, bool> feasible;
  int max_size = std::min(k - 1, n);
  std::vector<int> subset;
  auto enumerate_modes = [&](const std::vector<int>& breaks) {
    int sz = static_cast<int>(breaks.size());
    for (int mask = 0; mask < (1 << sz); ++mask) {
      PlanKey key;
      for (int j = 0; j < sz; ++j) {
        key.emplace_back(breaks[j], (mask >> j) & 1);
      }
      feasible[key] = key_feasible_by_simulation(driver, key);
    }
  };
  auto rec_subsets = [&](auto&& self, int start, int remaining) -> void {
    if (remaining == 0) {
      enumerate_modes(subset);
      return;
    }
    for (int i = start; i <= n - remaining; ++i) {
      subset.push_back(chargeable[i]);
      self(self, i + 1, remaining - 1);
      subset.pop_back();
    }
  };
  for (int sz = 0; sz <= max_size; ++sz) {
    rec_subsets(rec_subsets, 0, sz);
  }

  std::vector<PlanKey> minimal;
  bool any_feasible =
      std::any_of(feasible.begin(), feasible.end(),
                  [](const auto& kv) { return kv.second; });
  if (any_feasible) {
    for (const auto& [key, feas] : feasible) {
      if (!feas) continue;
      bool weakening_feasible = false;
      for (std::size_t i = 0; i < key.size() && !weakening_feasible; ++i) {
        PlanKey dropped = key;
        dropped.erase(dropped.begin() + static_cast<std::ptrdiff_t>(i));
        if (feasible.at(dropped)) weakening_feasible = true;
        if (key[i].second == static_cast<int>(ChargingMode::DC)) {
          PlanKey downgraded = key;
          downgraded[i].second = static_cast<int>(ChargingMode::AC);
          if (feasible.at(downgraded)) weakening_feasible = true;
        }
      }
      if (!weakening_feasible) minimal.push_back(key);
    }
  } else if (n >= k) {
    // Nothing small enough works; plans of the fiat size are feasible by
    // definition and all-AC assignments are the minimal ones among them.
    auto rec_fiat = [&](auto&& self, int start, PlanKey& acc) -> void {
      if (static_cast<int>(acc.size()) == k) {
        minimal.push_back(acc);
        return;
      }
      int need = k - static_cast<int>(acc.size());
      for (int i = start; i <= n - need; ++i) {
        acc.emplace_back(chargeable[i], static_cast<int>(ChargingMode::AC));
        self(self, i + 1, acc);
        acc.pop_back();
      }
    };
    PlanKey acc;
    rec_fiat(rec_fiat, 0, acc);
  }

  std::sort(minimal.begin(), minimal.end());
  std::vector<ChargingPlan> out;
  out.reserve(minimal.size());
  for (const PlanKey& key : minimal) out.push_back(plan_of(driver, key));
  return out;
}

}  // namespace evplace
