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

#ifndef EVPLACE_MPS_H_
#define EVPLACE_MPS_H_

#include <map>
#include <string>

#include "evplace/milp.hpp"

namespace evplace {

// Short-name (<= 8 characters) to original-name maps, one namespace for rows
// and one for columns. The objective row is always COST.
struct MpsNameMaps {
  std::map<std::string, std::string> rows;
  std::map<std::string, std::string> columns;
  bool maximize = false;
};

// Fixed-format MPS text: NAME/ROWS/COLUMNS/RHS/RANGES/BOUNDS/ENDATA with
// integer markers around integer columns and explicit bounds for every
// variable. A maximization objective is written negated, so the file is
// always a minimization; the name maps record the original sense.
// Byte-identical for identical models.
std::string mps_text(const MilpModel& model, MpsNameMaps* maps = nullptr);

// Writes mps_text to path and the name maps to "<path>.names.json".
MpsNameMaps export_mps(const MilpModel& model, const std::string& path);

// Serialized sidecar, deterministic key order.
std::string name_map_json(const MpsNameMaps& maps);
MpsNameMaps parse_name_map_json(const std::string& text);

}  // namespace evplace

#endif  // EVPLACE_MPS_H_
