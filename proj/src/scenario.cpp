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

#include "evplace/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "evplace/charging.hpp"
#include "evplace/plans.hpp"
#include "evplace/rng.hpp"

namespace evplace {

void RawAgent::validate() const {
  for (std::size_t i = 0; i < trips.size(); ++i) {
    const RawTrip& t = trips[i];
    if (t.end_time < t.start_time || t.distance_km < 0.0) {
      throw std::invalid_argument("agent " + id + ": malformed trip");
    }
    if (i > 0 && t.start_time < trips[i - 1].end_time) {
      throw std::invalid_argument("agent " + id + ": trips out of order");
    }
  }
}

void ScenarioParams::validate() const {
  if (!(closed_tour_radius_m > 0.0) || !(grid_cell_m > 0.0) ||
      !(nearby_radius_m > 0.0)) {
    throw std::invalid_argument("scenario radii must be positive");
  }
  if (!(wallbox_rate_city >= 0.0 && wallbox_rate_city <= 1.0) ||
      !(electrification_rate >= 0.0 && electrification_rate <= 1.0)) {
    throw std::invalid_argument("scenario rates must lie in [0, 1]");
  }
  if (!(soc_floor >= 0.0 && soc_floor <= 1.0) ||
      !(min_start_soc_floor >= 0.0 && min_start_soc_floor <= 1.0)) {
    throw std::invalid_argument("scenario charge levels must lie in [0, 1]");
  }
  if (!(ground_set_scale > 0.0) || ground_set_count < 0) {
    throw std::invalid_argument("scenario ground set malformed");
  }
}

std::vector<RawAgent> keep_transport(const std::vector<RawAgent>& agents,
                                     std::string_view transport) {
  std::vector<RawAgent> out;
  for (const RawAgent& agent : agents) {
    RawAgent kept;
    kept.id = agent.id;
    for (const RawTrip& t : agent.trips) {
      if (t.transport == transport) kept.trips.push_back(t);
    }
    if (!kept.trips.empty()) out.push_back(std::move(kept));
  }
  return out;
}

namespace {

bool tour_is_closed(const RawAgent& agent, double radius_m) {
  for (std::size_t i = 0; i + 1 < agent.trips.size(); ++i) {
    if (distance(agent.trips[i].end, agent.trips[i + 1].start) > radius_m) {
      return false;
    }
  }
  return distance(agent.trips.back().end, agent.trips.front().start) <=
         radius_m;
}

}  // namespace

std::vector<Driver> filter_closed_tours(const std::vector<RawAgent>& agents,
                                        double radius_m,
                                        const VehicleSpec& vehicle) {
  if (!(radius_m >= 0.0)) {
    throw std::invalid_argument("closed tour radius must be nonnegative");
  }
  vehicle.validate();
  std::vector<Driver> out;
  for (const RawAgent& agent : agents) {
    agent.validate();
    if (agent.trips.empty() || !tour_is_closed(agent, radius_m)) continue;
    Driver d;
    d.id = agent.id;
    d.vehicle = vehicle;
    for (const RawTrip& rt : agent.trips) {
      Trip t;
      t.start_location = rt.start;
      t.end_location = rt.end;
      t.start_time = rt.start_time;
      t.end_time = rt.end_time;
      t.soc_delta = trip_soc_delta(rt.distance_km, vehicle);
      d.trips.push_back(t);
    }
    d.breaks = breaks_from_trips(d.trips, d.id);
    out.push_back(std::move(d));
  }
  return out;
}

void mark_chargeable(std::vector<Driver>& drivers, const Region& region) {
  if (region.empty()) return;
  for (Driver& d : drivers) {
    for (Break& b : d.breaks) b.chargeable = region.contains(b.location);
  }
}

std::vector<Driver> exclude_undersupplied(const std::vector<Driver>& drivers) {
  std::vector<Driver> out;
  for (const Driver& d : drivers) {
    if (std::isfinite(min_start_soc(d))) out.push_back(d);
  }
  return out;
}

std::pair<std::vector<Driver>, std::vector<Driver>> split_by_residence(
    const std::vector<Driver>& drivers, const Region& region) {
  std::pair<std::vector<Driver>, std::vector<Driver>> out;
  for (const Driver& d : drivers) {
    if (d.trips.empty()) {
      throw std::invalid_argument("driver " + d.id + " has no trips");
    }
    Driver copy = d;
    copy.in_city = region.contains(d.trips.front().start_location);
    (copy.in_city ? out.first : out.second).push_back(std::move(copy));
  }
  return out;
}

StratumSizes stratum_sizes(std::int64_t ground_set, std::int64_t city_pool,
                           std::int64_t total_pool, double rate) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw std::invalid_argument("electrification rate outside [0, 1]");
  }
  if (ground_set < 0 || city_pool < 0 || total_pool < city_pool) {
    throw std::invalid_argument("malformed pool sizes");
  }
  const double scaled = rate * static_cast<double>(ground_set);
  const auto total = static_cast<std::int64_t>(std::floor(scaled));
  if (total == 0) return {};
  if (total_pool == 0) {
    throw std::invalid_argument("sampling from empty pools");
  }
  const double share =
      static_cast<double>(city_pool) / static_cast<double>(total_pool);
  StratumSizes sizes;
  sizes.city = static_cast<std::int64_t>(std::floor(scaled * share));
  sizes.outside = static_cast<std::int64_t>(std::floor(scaled * (1.0 - share)));
  // Two floors lose at most one unit against floor(scaled); it goes to the
  // city stratum.
  sizes.city += std::max<std::int64_t>(total - sizes.city - sizes.outside, 0);
  return sizes;
}

namespace {

// Recomputes the fields that depend on the sampled day: the end-of-day
// target and the starting charge.
void finalize_sampled_driver(Driver& d, Rng& rng,
                             const ScenarioParams& params) {
  d.soc_floor = params.soc_floor;
  const double mu = min_start_soc(d);
  if (!std::isfinite(mu)) {
    throw std::invalid_argument("pool driver " + d.id +
                                " cannot hold the charge floor");
  }
  const double target = std::max(mu, params.min_start_soc_floor);
  d.end_soc_target = target;
  d.start_soc = d.has_wallbox ? 1.0 : rng.uniform(target, 1.0);
}

std::vector<int> sorted_sample(Rng& rng, std::size_t pool, std::int64_t k) {
  std::vector<int> idx = rng.sample_without_replacement(
      static_cast<int>(pool), static_cast<int>(k));
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

std::vector<Driver> sample_population(const std::vector<Driver>& pool_city,
                                      const std::vector<Driver>& pool_outside,
                                      const ScenarioParams& params) {
  params.validate();
  const std::int64_t count =
      params.ground_set_count > 0
          ? params.ground_set_count
          : static_cast<std::int64_t>(pool_city.size() + pool_outside.size());
  const auto ground_set =
      static_cast<std::int64_t>(std::llround(params.ground_set_scale * count));
  const StratumSizes take = stratum_sizes(
      ground_set, static_cast<std::int64_t>(pool_city.size()),
      static_cast<std::int64_t>(pool_city.size() + pool_outside.size()),
      params.electrification_rate);
  if (take.city > static_cast<std::int64_t>(pool_city.size()) ||
      take.outside > static_cast<std::int64_t>(pool_outside.size())) {
    throw std::invalid_argument(
        "electrification rate exceeds the candidate pools");
  }
  Rng rng = substream(params.rng_seed, "population-sample");
  const std::vector<int> city_idx =
      sorted_sample(rng, pool_city.size(), take.city);
  const std::vector<int> outside_idx =
      sorted_sample(rng, pool_outside.size(), take.outside);
  std::vector<Driver> out;
  out.reserve(static_cast<std::size_t>(take.city + take.outside));
  for (const int i : city_idx) {
    Driver d = pool_city[static_cast<std::size_t>(i)];
    d.in_city = true;
    d.has_wallbox = rng.uniform01() < params.wallbox_rate_city;
    finalize_sampled_driver(d, rng, params);
    out.push_back(std::move(d));
  }
  for (const int i : outside_idx) {
    Driver d = pool_outside[static_cast<std::size_t>(i)];
    d.in_city = false;
    d.has_wallbox = true;
    finalize_sampled_driver(d, rng, params);
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<std::pair<std::string, Point>> generate_grid(const Region& region,
                                                         double cell_m) {
  if (region.empty() || !(cell_m > 0.0)) {
    throw std::invalid_argument("grid needs a region and a positive cell");
  }
  BoundingBox bb;
  for (const Polygon& part : region.parts) {
    for (const Point& p : part.ring) bb.extend(p);
  }
  if (!bb.valid || !(bb.max.x() > bb.min.x()) || !(bb.max.y() > bb.min.y())) {
    throw std::invalid_argument("degenerate region");
  }
  std::vector<std::pair<std::string, Point>> out;
  for (int row = 0;; ++row) {
    const double cy = bb.min.y() + (row + 0.5) * cell_m;
    if (cy > bb.max.y()) break;
    for (int col = 0;; ++col) {
      const double cx = bb.min.x() + (col + 0.5) * cell_m;
      if (cx > bb.max.x()) break;
      const Point center{cx, cy};
      if (region.contains(center)) {
        out.emplace_back(std::to_string(row) + "_" + std::to_string(col),
                         center);
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::map<std::string, std::vector<std::string>> nearby_sets(
    const std::vector<Driver>& drivers,
    const std::vector<std::pair<std::string, Point>>& locations,
    double radius_m) {
  if (!(radius_m >= 0.0)) {
    throw std::invalid_argument("nearby radius must be nonnegative");
  }
  std::map<std::string, std::vector<std::string>> out;
  for (const Driver& d : drivers) {
    for (const Break& b : d.breaks) {
      std::vector<std::string> tokens;
      for (const auto& [token, p] : locations) {
        if (distance(b.location, p) <= radius_m) tokens.push_back(token);
      }
      std::sort(tokens.begin(), tokens.end());
      out[b.id] = std::move(tokens);
    }
  }
  return out;
}

std::vector<std::string> unreachable_breaks(
    const std::vector<Driver>& drivers,
    const std::map<std::string, std::vector<std::string>>& nearby) {
  std::vector<std::string> out;
  for (const Driver& d : drivers) {
    for (const Break& b : d.breaks) {
      if (!b.chargeable) continue;
      auto it = nearby.find(b.id);
      if (it == nearby.end() || it->second.empty()) out.push_back(b.id);
    }
  }
  return out;
}

ReducedLocations eliminate_dominated(
    const std::vector<std::pair<std::string, Point>>& locations,
    const std::map<std::string, std::vector<std::string>>& nearby) {
  const std::size_t n = locations.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[locations[i].first] = i;

  // cover[i]: sorted break ids reachable from location i. Map order makes
  // the push_backs already sorted; dedupe defensively.
  std::vector<std::vector<std::string>> cover(n);
  for (const auto& [break_id, tokens] : nearby) {
    for (const std::string& token : tokens) {
      auto it = index.find(token);
      if (it != index.end()) cover[it->second].push_back(break_id);
    }
  }
  std::map<std::string, std::vector<std::size_t>> by_break;
  bool any_nonempty = false;
  std::size_t first_empty = n;
  for (std::size_t i = 0; i < n; ++i) {
    cover[i].erase(std::unique(cover[i].begin(), cover[i].end()),
                   cover[i].end());
    if (cover[i].empty()) {
      if (first_empty == n) first_empty = i;
      continue;
    }
    any_nonempty = true;
    for (const std::string& b : cover[i]) by_break[b].push_back(i);
  }

  std::vector<bool> keep(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    if (cover[i].empty()) {
      // Useless locations all collapse onto the smallest empty token, and
      // vanish entirely once any location covers something.
      keep[i] = !any_nonempty && i == first_empty;
      continue;
    }
    // A dominator covers every break of i, in particular the first one.
    for (const std::size_t j : by_break.at(cover[i].front())) {
      if (j == i || cover[j].size() < cover[i].size()) continue;
      if (!std::includes(cover[j].begin(), cover[j].end(), cover[i].begin(),
                         cover[i].end())) {
        continue;
      }
      if (cover[j].size() > cover[i].size() ||
          locations[j].first < locations[i].first) {
        keep[i] = false;
        break;
      }
    }
  }

  ReducedLocations out;
  std::set<std::string> surviving;
  for (std::size_t i = 0; i < n; ++i) {
    if (!keep[i]) continue;
    out.locations.push_back(locations[i]);
    surviving.insert(locations[i].first);
  }
  for (const auto& [break_id, tokens] : nearby) {
    std::vector<std::string> filtered;
    for (const std::string& token : tokens) {
      if (surviving.count(token)) filtered.push_back(token);
    }
    out.nearby[break_id] = std::move(filtered);
  }
  return out;
}

std::vector<Driver> merge_driver_sets(
    const std::vector<std::vector<Driver>>& sets) {
  std::vector<Driver> out;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    const std::string prefix = "s" + std::to_string(k) + "_";
    for (const Driver& d : sets[k]) {
      Driver copy = d;
      copy.id = prefix + d.id;
      copy.set_index = static_cast<int>(k);
      for (Break& b : copy.breaks) b.id = prefix + b.id;
      out.push_back(std::move(copy));
    }
  }
  return out;
}

void SynthKnobs::validate() const {
  if (num_drivers < 0) throw std::invalid_argument("negative driver count");
  if (!(needing_fraction >= 0.0 && needing_fraction <= 1.0)) {
    throw std::invalid_argument("needing fraction outside [0, 1]");
  }
  if (!(region_m > 0.0) || !(grid_cell_m > 0.0) || !(nearby_radius_m > 0.0)) {
    throw std::invalid_argument("region, cell and radius must be positive");
  }
  if (ac_ports.empty() && dc_ports.empty()) {
    throw std::invalid_argument("catalog needs at least one port option");
  }
  for (const int p : ac_ports) {
    if (p <= 0) throw std::invalid_argument("nonpositive AC port count");
  }
  for (const int p : dc_ports) {
    if (p <= 0) throw std::invalid_argument("nonpositive DC port count");
  }
  if (min_trips < 2 || max_trips < min_trips) {
    throw std::invalid_argument("trip counts need 2 <= min <= max");
  }
}

namespace {

// One candidate day schedule: a closed tour of k random points with one
// break between consecutive trips.
Driver synth_tour(Rng& rng, int index, bool needy, const SynthKnobs& knobs,
                  const VehicleSpec& vehicle) {
  const auto k =
      static_cast<int>(rng.uniform_int(knobs.min_trips, knobs.max_trips));
  std::vector<Point> points;
  for (int j = 0; j < k; ++j) {
    points.emplace_back(rng.uniform(0.0, knobs.region_m),
                        rng.uniform(0.0, knobs.region_m));
  }
  Driver d;
  d.id = "d" + std::to_string(index);
  d.vehicle = vehicle;
  d.soc_floor = 0.10;
  Seconds t = 6 * 3600 + rng.uniform_int(0, 3600);
  for (int j = 0; j < k; ++j) {
    Trip trip;
    trip.start_location = points[static_cast<std::size_t>(j)];
    trip.end_location = points[static_cast<std::size_t>((j + 1) % k)];
    trip.start_time = t;
    trip.end_time = t + rng.uniform_int(1200, 2400);
    trip.soc_delta = needy ? rng.uniform(0.10, 0.22)
                           : rng.uniform(0.02, 0.45 / k);
    t = trip.end_time + rng.uniform_int(3000, 6600);
    d.trips.push_back(trip);
  }
  d.breaks = breaks_from_trips(d.trips, d.id);
  return d;
}

Driver synth_driver(Rng& rng, int index, bool needy, const SynthKnobs& knobs,
                    const VehicleSpec& vehicle) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Driver d = synth_tour(rng, index, needy, knobs, vehicle);
    const double mu = min_start_soc(d);
    if (!std::isfinite(mu)) continue;
    const double target = std::max(mu, 0.20);
    d.end_soc_target = target;
    const ChargingPlan no_charging{d.id, {}};
    if (needy) {
      d.has_wallbox = false;
      // Slightly above the viable start, but the day's consumption still
      // ends below the target without public charging.
      d.start_soc = std::min(1.0, target + 0.05);
      if (is_feasible(d, no_charging)) continue;
      if (enumerate_minimal_plans(d).empty()) continue;
    } else {
      d.has_wallbox = true;
      d.start_soc = 1.0;
      if (!is_feasible(d, no_charging)) continue;
    }
    return d;
  }
  throw std::runtime_error("synthetic driver construction failed for d" +
                           std::to_string(index));
}

}  // namespace

Instance synth_instance(std::uint64_t seed, const SynthKnobs& knobs) {
  knobs.validate();
  Rng rng = substream(seed, "synth-instance");
  const VehicleSpec vehicle = VehicleSpec::default_compact();
  const double side = knobs.region_m;
  Region square;
  square.parts.push_back(Polygon{{Point{0.0, 0.0}, Point{side, 0.0},
                                  Point{side, side}, Point{0.0, side}}});
  const auto needy_count = static_cast<int>(
      std::llround(knobs.needing_fraction * knobs.num_drivers));

  Instance inst;
  inst.name = "synth-" + std::to_string(seed);
  for (int i = 0; i < knobs.num_drivers; ++i) {
    inst.drivers.push_back(
        synth_driver(rng, i, i < needy_count, knobs, vehicle));
  }
  const auto grid = generate_grid(square, knobs.grid_cell_m);
  ReducedLocations reduced = eliminate_dominated(
      grid, nearby_sets(inst.drivers, grid, knobs.nearby_radius_m));
  inst.locations = std::move(reduced.locations);
  inst.nearby = std::move(reduced.nearby);
  for (const auto& [token, p] : inst.locations) {
    for (const int ports : knobs.ac_ports) {
      inst.catalog.push_back(
          {token, ChargingMode::AC, ports, static_cast<double>(ports)});
    }
    for (const int ports : knobs.dc_ports) {
      inst.catalog.push_back(
          {token, ChargingMode::DC, ports, 2.0 * ports});
    }
  }
  inst.validate();
  return inst;
}

}  // namespace evplace
