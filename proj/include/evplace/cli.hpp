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

#ifndef EVPLACE_CLI_H_
#define EVPLACE_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "evplace/model_builder.hpp"
#include "evplace/scenario.hpp"
#include "evplace/simulator.hpp"

namespace evplace {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitInputError = 3;
inline constexpr int kExitSolverFailure = 4;

// Number of drivers behind rate-driven population sizes when no explicit
// ground set is configured: a rate of r stands for round(r * 1000) drivers.
inline constexpr double kSyntheticGroundSet = 1000.0;

// Every run-time knob of every command, each with its default. A run is a
// pure function of (input files, this struct): the single seed feeds named
// substreams, so reruns reproduce outputs byte for byte (wall-clock columns
// excepted). Loadable from a flat JSON object holding any subset of the
// fields by their names below; unknown keys are rejected.
struct RunConfig {
  std::uint64_t seed = 0;

  // Population scale: fraction of a ground set that drives electric.
  double rate = 0.01;

  // Trip ingestion.
  std::string transport = "car";
  double closed_tour_radius_m = 300.0;
  double grid_cell_m = 100.0;
  double nearby_radius_m = 200.0;
  double wallbox_rate_city = 0.39;
  double soc_floor = 0.10;
  double min_start_soc_floor = 0.20;
  double ground_set_scale = 4.0;
  std::int64_t ground_set_count = 0;

  // Synthetic instances. drivers == 0 derives the count from rate.
  int drivers = 0;
  double needing_fraction = 0.6;
  double region_m = 1000.0;
  double synth_cell_m = 250.0;
  std::vector<int> ac_ports = {2, 4, 6, 8};
  std::vector<int> dc_ports = {4, 6, 8};
  int min_trips = 2;
  int max_trips = 4;

  // Model shape. variant is "min_cost" or "max_satisfied"; cuts lists any
  // of "capacity", "plan", "fractional", "generalized".
  std::string variant = "min_cost";
  double budget = 0.0;
  int driver_sets = 1;
  std::vector<std::string> cuts;

  // Solver backend: "builtin", or "external:<template>" where the template
  // is a shell command with {mps} and {sol} placeholders.
  std::string solver = "builtin";
  double gap_target = 0.01;
  double time_limit_s = 0.0;
  long node_limit = 0;

  // Simulation.
  double good_radius_m = 400.0;
  double max_radius_m = 5000.0;
  int loops = 1;
  std::vector<double> sweep;

  int synthetic_drivers() const;
  ScenarioParams scenario_params() const;
  SynthKnobs synth_knobs() const;
  // Throws std::invalid_argument for unknown cut names, an unknown variant,
  // or a budget the variant cannot use.
  BuildOptions build_options() const;
  SimConfig sim_config() const;
  void validate() const;
};

// Applies the keys of a flat JSON object over base and returns the result.
// Unknown keys, type mismatches, and malformed JSON raise
// std::invalid_argument naming the offending key.
RunConfig config_from_json(const std::string& text,
                           const RunConfig& base = {});

// Serializes every field under the same names config_from_json accepts.
std::string config_to_json(const RunConfig& config);

// Commands. Each returns an exit code, prints human-readable progress to
// out, complaints to err, and writes its artifacts into out_dir (created
// when missing). They are library functions: main() only parses flags.

// Writes a deterministic synthetic instance to <out_dir>/instance.json.
int cmd_synth(const RunConfig& config, const std::string& out_dir,
              std::ostream& out, std::ostream& err);

// Turns a trip table and a region polygon into <out_dir>/instance.json:
// keep the configured transport, keep closed tours, mark breaks inside the
// region chargeable, drop drivers that cannot finish the day even with
// unlimited charging, lay a grid over the region, attach nearby sets, and
// drop dominated locations. Prints the funnel counts.
int cmd_ingest(const std::string& trips_path, const std::string& region_path,
               const RunConfig& config, const std::string& out_dir,
               std::ostream& out, std::ostream& err);

// Builds the placement program for <instance_path> per config, solves it
// with the configured backend, and writes <out_dir>/solution.json plus
// <out_dir>/stations.geojson. Infeasibility names the first driver whose
// demand already cannot be met alone, when one exists.
int cmd_solve(const std::string& instance_path, const RunConfig& config,
              const std::string& out_dir, std::ostream& out,
              std::ostream& err);

// Simulates the instance's drivers against a station layout and writes
// <out_dir>/report.json, report.csv, and occupancy.csv. With config.sweep
// nonempty, instead samples one population per rate from the instance's
// drivers (treated as a pool) and writes per-rate outcome proportions to
// <out_dir>/sweep.csv.
int cmd_simulate(const std::string& instance_path,
                 const std::string& stations_path, const RunConfig& config,
                 const std::string& out_dir, std::ostream& out,
                 std::ostream& err);

// Solves the instance under all 8 subsets of {capacity cuts, plan cuts,
// fractional y} and writes <out_dir>/bench.csv with the root relaxation
// value, root gap, and time to the configured gap target per subset. The
// time column is the one documented exception to byte-identical reruns.
int cmd_bench(const std::string& instance_path, const RunConfig& config,
              const std::string& out_dir, std::ostream& out,
              std::ostream& err);

}  // namespace evplace

#endif  // EVPLACE_CLI_H_
