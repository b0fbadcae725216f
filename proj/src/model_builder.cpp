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

#include "evplace/model_builder.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace evplace {

namespace {

std::string x_name(const std::string& location, ChargingMode mode, int ports) {
  return "x_L" + location + "_M" + std::string(to_string(mode)) + "_D" +
         std::to_string(ports);
}

std::string y_name(int set, const std::string& driver,
                   const std::string& break_id, const std::string& location,
                   ChargingMode mode) {
  return "y_S" + std::to_string(set) + "_D" + driver + "_B" + break_id + "_L" +
         location + "_M" + std::string(to_string(mode));
}

std::string z_name(int set, const std::string& driver, int plan) {
  return "z_S" + std::to_string(set) + "_D" + driver + "_P" +
         std::to_string(plan);
}

std::string s_name(int set, const std::string& driver) {
  return "s_S" + std::to_string(set) + "_D" + driver;
}

// A chargeable break within reach of some location, with its owner.
struct NearBreak {
  const Driver* driver;
  const Break* brk;
};

// t lies in a break's interval [start, end): a port frees up the instant its
// break ends, so back-to-back breaks never stack.
bool active_at(const Break& b, Seconds t) {
  return b.start_time <= t && t < b.end_time;
}

const std::vector<std::string>* locations_near(const Instance& instance,
                                               const std::string& break_id) {
  auto it = instance.nearby.find(break_id);
  if (it == instance.nearby.end() || it->second.empty()) return nullptr;
  return &it->second;
}

// Start times of the given breaks, minus starts whose active break set
// repeats the previously kept one. A fresh break starts at every candidate,
// so the drop step only fires on degenerate data; it is kept because the
// rows it would emit are exact duplicates.
std::vector<Seconds> dedup_times(const std::vector<NearBreak>& near) {
  std::set<Seconds> starts;
  for (const NearBreak& nb : near) starts.insert(nb.brk->start_time);
  std::vector<Seconds> kept;
  std::vector<std::size_t> prev_active;
  for (Seconds t : starts) {
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < near.size(); ++i) {
      if (active_at(*near[i].brk, t)) active.push_back(i);
    }
    if (kept.empty() || active != prev_active) {
      kept.push_back(t);
      prev_active = std::move(active);
    }
  }
  return kept;
}

// Chargeable breaks of drivers in the given set (all sets when set < 0)
// whose reach includes the location, in driver then break order.
std::vector<NearBreak> breaks_near(const Instance& instance,
                                   const std::string& location, int set) {
  std::vector<NearBreak> out;
  for (const Driver& d : instance.drivers) {
    if (set >= 0 && d.set_index != set) continue;
    for (const Break& b : d.breaks) {
      if (!b.chargeable) continue;
      const std::vector<std::string>* locs = locations_near(instance, b.id);
      if (locs != nullptr &&
          std::binary_search(locs->begin(), locs->end(), location)) {
        out.push_back({&d, &b});
      }
    }
  }
  return out;
}

}  // namespace

int VariableCatalog::x_column(std::string_view location, ChargingMode mode,
                              int ports) const {
  auto it = x.find({std::string(location), mode, ports});
  return it == x.end() ? -1 : it->second;
}

int VariableCatalog::y_column(int set, std::string_view driver,
                              std::string_view break_id,
                              std::string_view location,
                              ChargingMode mode) const {
  auto it = y.find({set, std::string(driver), std::string(break_id),
                    std::string(location), mode});
  return it == y.end() ? -1 : it->second;
}

std::vector<Seconds> dedup_time_points(const Instance& instance,
                                       std::string_view location,
                                       ChargingMode /*mode*/) {
  return dedup_times(breaks_near(instance, std::string(location), -1));
}

std::vector<Constraint> capacity_cuts(const Instance& instance,
                                      const VariableCatalog& catalog) {
  // All x columns of a (location, mode), ports ascending.
  std::map<std::pair<std::string, ChargingMode>, std::vector<int>> x_cols;
  for (const StationType& t : instance.catalog) {
    int col = catalog.x_column(t.location, t.mode, t.ports);
    if (col >= 0) x_cols[{t.location, t.mode}].push_back(col);
  }
  for (auto& [key, cols] : x_cols) std::sort(cols.begin(), cols.end());

  std::vector<Constraint> rows;
  for (const auto& [key, ycol] : catalog.y) {
    const auto& [set, driver, break_id, location, mode] = key;
    Constraint row;
    row.name = "cc_S" + std::to_string(set) + "_D" + driver + "_B" + break_id +
               "_L" + location + "_M" + std::string(to_string(mode));
    row.terms.emplace_back(ycol, 1.0);
    auto it = x_cols.find({location, mode});
    if (it != x_cols.end()) {
      for (int col : it->second) row.terms.emplace_back(col, -1.0);
    }
    row.sense = Sense::LE;
    row.rhs = 0.0;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::optional<Constraint> separate_generalized_cut(
    const Instance& instance, const VariableCatalog& catalog,
    const std::vector<double>& values) {
  // x columns with their port counts per (location, mode).
  std::map<std::pair<std::string, ChargingMode>, std::vector<std::pair<int, int>>>
      x_cols;
  for (const auto& [key, col] : catalog.x) {
    const auto& [location, mode, ports] = key;
    x_cols[{location, mode}].emplace_back(col, ports);
  }

  // Candidate (d, b) pairs per separation site (set, location, mode), in
  // driver then break then location order so ties sort deterministically.
  struct Candidate {
    const Break* brk;
    int ycol;
  };
  std::map<std::tuple<int, std::string, ChargingMode>, std::vector<Candidate>>
      sites;
  for (const Driver& d : instance.drivers) {
    for (const Break& b : d.breaks) {
      if (!b.chargeable) continue;
      const std::vector<std::string>* locs = locations_near(instance, b.id);
      if (locs == nullptr) continue;
      for (const std::string& location : *locs) {
        for (ChargingMode mode : kAllModes) {
          int ycol = catalog.y_column(d.set_index, d.id, b.id, location, mode);
          if (ycol >= 0) {
            sites[{d.set_index, location, mode}].push_back({&b, ycol});
          }
        }
      }
    }
  }

  double best_violation = kSeparationTol;
  std::optional<Constraint> best;
  for (const auto& [site, cands] : sites) {
    const auto& [set, location, mode] = site;
    auto xit = x_cols.find({location, mode});
    std::set<Seconds> starts;
    for (const Candidate& c : cands) starts.insert(c.brk->start_time);
    for (Seconds t : starts) {
      std::vector<const Candidate*> active;
      for (const Candidate& c : cands) {
        if (active_at(*c.brk, t)) active.push_back(&c);
      }
      std::stable_sort(active.begin(), active.end(),
                       [&](const Candidate* a, const Candidate* b) {
                         return values[a->ycol] > values[b->ycol];
                       });
      double lhs = 0.0;
      for (std::size_t k = 1; k <= active.size(); ++k) {
        lhs += values[active[k - 1]->ycol];
        double rhs = 0.0;
        if (xit != x_cols.end()) {
          for (const auto& [col, ports] : xit->second) {
            rhs += std::min<double>(static_cast<double>(k), ports) * values[col];
          }
        }
        double violation = lhs - rhs;
        if (violation > best_violation) {
          best_violation = violation;
          Constraint row;
          row.name = "gc_S" + std::to_string(set) + "_L" + location + "_M" +
                     std::string(to_string(mode)) + "_T" + std::to_string(t) +
                     "_N" + std::to_string(k);
          for (std::size_t i = 0; i < k; ++i) {
            row.terms.emplace_back(active[i]->ycol, 1.0);
          }
          if (xit != x_cols.end()) {
            for (const auto& [col, ports] : xit->second) {
              row.terms.emplace_back(
                  col, -std::min<double>(static_cast<double>(k), ports));
            }
          }
          row.sense = Sense::LE;
          row.rhs = 0.0;
          best = std::move(row);
        }
      }
    }
  }
  return best;
}

MilpModel build_placement_model(const Instance& instance,
                                const PlansByDriver& plans,
                                const HRepByDriver& hulls,
                                const BuildOptions& options,
                                VariableCatalog* catalog) {
  instance.validate();
  const bool budget_variant =
      options.variant == ModelVariant::MaxSatisfiedUnderBudget;
  if (budget_variant && !(options.budget > 0.0)) {
    throw std::invalid_argument("budget variant requires a positive budget");
  }
  if (options.driver_sets < 1) {
    throw std::invalid_argument("driver_sets must be at least 1");
  }
  for (const Driver& d : instance.drivers) {
    auto it = plans.find(d.id);
    if (it == plans.end() || it->second.empty()) {
      throw std::invalid_argument("driver " + d.id +
                                  ": no feasible charging plans");
    }
  }

  const int num_sets =
      std::max(options.driver_sets, instance.num_driver_sets());
  MilpModel model;
  model.maximize = budget_variant;
  VariableCatalog cat;

  // Station variables in (location, mode, ports) order; the budget variant
  // moves cost from the objective into a budget row.
  std::map<std::tuple<std::string, ChargingMode, int>, double> station_cost;
  for (const StationType& t : instance.catalog) {
    station_cost[{t.location, t.mode, t.ports}] = t.cost;
  }
  for (const auto& [key, cost] : station_cost) {
    const auto& [location, mode, ports] = key;
    Variable v;
    v.name = x_name(location, mode, ports);
    v.upper = 1.0;
    v.is_integer = true;
    v.objective = budget_variant ? 0.0 : cost;
    cat.x[key] = model.add_variable(std::move(v));
  }

  // Whether a driver keeps explicit plan-selection variables.
  auto keeps_selection = [&](const Driver& d) {
    return budget_variant || !options.use_plan_cuts ||
           hulls.find(d.id) == hulls.end();
  };

  for (int set = 0; set < num_sets; ++set) {
    for (const Driver& d : instance.drivers) {
      if (d.set_index != set) continue;
      for (const Break& b : d.breaks) {
        if (!b.chargeable) continue;
        const std::vector<std::string>* locs = locations_near(instance, b.id);
        if (locs == nullptr) continue;
        for (const std::string& location : *locs) {
          for (ChargingMode mode : kAllModes) {
            Variable v;
            v.name = y_name(set, d.id, b.id, location, mode);
            v.upper = 1.0;
            v.is_integer = !options.fractional_y;
            cat.y[{set, d.id, b.id, location, mode}] =
                model.add_variable(std::move(v));
          }
        }
      }
      if (keeps_selection(d)) {
        const auto& fd = plans.at(d.id);
        for (int p = 0; p < static_cast<int>(fd.size()); ++p) {
          Variable v;
          v.name = z_name(set, d.id, p);
          v.upper = 1.0;
          v.is_integer = true;
          cat.z[{set, d.id, p}] = model.add_variable(std::move(v));
        }
      }
      if (budget_variant) {
        Variable v;
        v.name = s_name(set, d.id);
        v.upper = 1.0;
        v.is_integer = true;
        v.objective = 1.0;
        cat.s[{set, d.id}] = model.add_variable(std::move(v));
      }
    }
  }

  // (b) At most one station per location.
  {
    std::string current;
    Constraint row;
    auto flush = [&]() {
      if (!row.terms.empty()) model.add_constraint(std::move(row));
      row = Constraint{};
    };
    for (const auto& [key, col] : cat.x) {
      const std::string& location = std::get<0>(key);
      if (location != current) {
        flush();
        current = location;
        row.name = "one_L" + location;
        row.sense = Sense::LE;
        row.rhs = 1.0;
      }
      row.terms.emplace_back(col, 1.0);
    }
    flush();
  }

  if (budget_variant) {
    Constraint row;
    row.name = "budget";
    for (const auto& [key, col] : cat.x) {
      double cost = station_cost.at(key);
      if (cost != 0.0) row.terms.emplace_back(col, cost);
    }
    row.sense = Sense::LE;
    row.rhs = options.budget;
    model.add_constraint(std::move(row));
  }

  // (c) Port capacity per (set, location, mode) at deduplicated break
  // starts. Locations nobody can reach get no rows; a (location, mode) the
  // catalog cannot build gets an empty right-hand side, pinning its y to 0.
  std::map<std::pair<std::string, ChargingMode>,
           std::vector<std::pair<int, int>>>
      x_by_site;
  for (const auto& [key, col] : cat.x) {
    x_by_site[{std::get<0>(key), std::get<1>(key)}].emplace_back(
        col, std::get<2>(key));
  }
  for (int set = 0; set < num_sets; ++set) {
    std::set<std::string> set_locations;
    for (const Driver& d : instance.drivers) {
      if (d.set_index != set) continue;
      for (const Break& b : d.breaks) {
        if (!b.chargeable) continue;
        const std::vector<std::string>* locs = locations_near(instance, b.id);
        if (locs == nullptr) continue;
        set_locations.insert(locs->begin(), locs->end());
      }
    }
    for (const std::string& location : set_locations) {
      const std::vector<NearBreak> near = breaks_near(instance, location, set);
      const std::vector<Seconds> times = dedup_times(near);
      for (ChargingMode mode : kAllModes) {
        for (Seconds t : times) {
          Constraint row;
          row.name = "cap_S" + std::to_string(set) + "_L" + location + "_M" +
                     std::string(to_string(mode)) + "_T" + std::to_string(t);
          for (const NearBreak& nb : near) {
            if (!active_at(*nb.brk, t)) continue;
            row.terms.emplace_back(
                cat.y.at({set, nb.driver->id, nb.brk->id, location, mode}),
                1.0);
          }
          auto xit = x_by_site.find({location, mode});
          if (xit != x_by_site.end()) {
            for (const auto& [col, ports] : xit->second) {
              row.terms.emplace_back(col, -static_cast<double>(ports));
            }
          }
          row.sense = Sense::LE;
          row.rhs = 0.0;
          model.add_constraint(std::move(row));
        }
      }
    }
  }

  // (d) Plan selection per (set, driver).
  for (int set = 0; set < num_sets; ++set) {
    for (const Driver& d : instance.drivers) {
      if (d.set_index != set) continue;
      const auto& fd = plans.at(d.id);
      if (keeps_selection(d)) {
        Constraint convexity;
        convexity.name = "sel_S" + std::to_string(set) + "_D" + d.id;
        for (int p = 0; p < static_cast<int>(fd.size()); ++p) {
          convexity.terms.emplace_back(cat.z.at({set, d.id, p}), 1.0);
        }
        convexity.sense = Sense::EQ;
        if (budget_variant) {
          convexity.terms.emplace_back(cat.s.at({set, d.id}), -1.0);
          convexity.rhs = 0.0;
        } else {
          convexity.rhs = 1.0;
        }
        model.add_constraint(std::move(convexity));

        // The y columns of a (break, mode) sum to 1 exactly when a selected
        // plan charges there, and to 0 otherwise.
        for (const Break& b : d.breaks) {
          if (!b.chargeable) continue;
          for (ChargingMode mode : kAllModes) {
            Constraint link;
            link.name = "lnk_S" + std::to_string(set) + "_D" + d.id + "_B" +
                        b.id + "_M" + std::string(to_string(mode));
            const std::vector<std::string>* locs =
                locations_near(instance, b.id);
            if (locs != nullptr) {
              for (const std::string& location : *locs) {
                link.terms.emplace_back(
                    cat.y.at({set, d.id, b.id, location, mode}), 1.0);
              }
            }
            for (int p = 0; p < static_cast<int>(fd.size()); ++p) {
              if (fd[p].contains(b.id, mode)) {
                link.terms.emplace_back(cat.z.at({set, d.id, p}), -1.0);
              }
            }
            if (link.terms.empty()) continue;
            link.sense = Sense::EQ;
            link.rhs = 0.0;
            model.add_constraint(std::move(link));
          }
        }
      } else {
        const HRep& hull = hulls.at(d.id);
        const std::vector<ProjectedRow> rows =
            project_to_y(hull, instance.nearby);
        for (std::size_t i = 0; i < rows.size(); ++i) {
          Constraint row;
          row.name = "pc_S" + std::to_string(set) + "_D" + d.id + "_R" +
                     std::to_string(i);
          for (const ProjectedTerm& term : rows[i].terms) {
            row.terms.emplace_back(
                cat.y.at({set, d.id, term.break_id, term.location, term.mode}),
                static_cast<double>(term.coeff));
          }
          row.sense = Sense::GE;
          row.rhs = static_cast<double>(rows[i].rhs);
          model.add_constraint(std::move(row));
        }
      }
    }
  }

  // (e) Capacity cut rows.
  if (options.use_capacity_cuts) {
    for (Constraint& row : capacity_cuts(instance, cat)) {
      model.add_constraint(std::move(row));
    }
  }

  model.validate();
  if (catalog != nullptr) *catalog = std::move(cat);
  return model;
}

std::vector<Station> stations_from_solution(
    const Instance& instance, const MilpModel& model,
    const VariableCatalog& catalog,
    const std::map<std::string, double>& assignment) {
  std::vector<Station> stations;
  for (const auto& [key, column] : catalog.x) {
    if (column < 0 || column >= static_cast<int>(model.variables.size())) {
      throw std::invalid_argument("catalog column " + std::to_string(column) +
                                  " is not in the model");
    }
    auto it = assignment.find(model.variables[column].name);
    if (it == assignment.end() || it->second <= 0.5) continue;
    const auto& [token, mode, ports] = key;
    const Point* position = instance.find_location(token);
    if (position == nullptr) {
      throw std::invalid_argument("catalog names unknown location " + token);
    }
    Station st;
    st.location = token;
    st.position = *position;
    st.mode = mode;
    st.ports = ports;
    for (const StationType& type : instance.catalog) {
      if (type.location == token && type.mode == mode && type.ports == ports) {
        st.cost = type.cost;
        break;
      }
    }
    stations.push_back(std::move(st));
  }
  return stations;
}

}  // namespace evplace
