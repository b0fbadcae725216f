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

#ifndef EVPLACE_IO_H_
#define EVPLACE_IO_H_

#include <string>
#include <vector>

#include "evplace/geometry.hpp"
#include "evplace/milp.hpp"
#include "evplace/scenario.hpp"
#include "evplace/simulator.hpp"
#include "evplace/types.hpp"

namespace evplace {

// All readers are strict: unknown object keys, missing required keys, and
// type mismatches raise std::invalid_argument naming the offending spot.
// All writers are deterministic: object keys sort lexicographically and
// numbers print in shortest round-trip form, so equal inputs give equal
// bytes.

// Instance files. Coordinates are planar metres in a local frame; times are
// seconds from the start of the planning day; "time_points" may be omitted
// and defaults to the break start times.
std::string instance_to_json(const Instance& instance);
Instance instance_from_json(const std::string& text);

// Station layouts as a GeoJSON FeatureCollection of Point features with
// properties location, mode, ports, and cost (cost optional on read).
std::string stations_to_geojson(const std::vector<Station>& stations);
std::vector<Station> stations_from_geojson(const std::string& text);

// Planning region from GeoJSON: a FeatureCollection, Feature, or bare
// geometry holding Polygon/MultiPolygon coordinates. Every ring becomes one
// even-odd part, so holes subtract. A closing point equal to the first is
// dropped.
Region region_from_geojson(const std::string& text);

// Day schedules from CSV with header
//   agent_id,start_x,start_y,end_x,end_y,start_time,end_time,distance_km,transport
// Rows group into agents by id in order of first appearance and must be
// chronological per agent. Errors carry 1-based line numbers. No quoting.
std::vector<RawAgent> agents_from_csv(const std::string& text);

// Simulation reports. The JSON holds per-driver rows and the totals; the
// CSV is the one-line summary with the detoured and not-compatible rates
// over drivers needing public charging; the occupancy CSV lists every port
// reservation.
std::string report_to_json(const SimReport& report);
std::string report_summary_csv(const SimReport& report);
std::string occupancy_csv(const SimReport& report);

// Solver outcome without timing fields, so reruns are byte-identical.
// Assignment keeps entries with magnitude above 1e-9.
std::string solution_to_json(const Solution& solution);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace evplace

#endif  // EVPLACE_IO_H_
