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

#include "evplace/external_solver.hpp"

#include <json.hpp>

#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "evplace/mps.hpp"

namespace evplace {
namespace {

namespace fs = std::filesystem;

std::string substitute(const std::string& tpl, const std::string& key,
                       const std::string& value, bool* found) {
  std::string out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t hit = tpl.find(key, pos);
    if (hit == std::string::npos) {
      out += tpl.substr(pos);
      return out;
    }
    *found = true;
    out += tpl.substr(pos, hit - pos);
    out += value;
    pos = hit + key.size();
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ExternalSolverError("missing solution file " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct ParsedSolution {
  std::map<std::string, double> values;  // original variable names
  std::string status;                    // lower case, may be empty
  double objective = std::numeric_limits<double>::quiet_NaN();
  double dual_bound = std::numeric_limits<double>::quiet_NaN();
};

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Accepts both the MPS short name and the original name.
std::string unmap(const MpsNameMaps& maps, const MilpModel& model,
                  const std::string& name) {
  const auto it = maps.columns.find(name);
  if (it != maps.columns.end()) return it->second;
  if (model.column(name) >= 0) return name;
  throw ExternalSolverError("unknown variable in solution file: " + name);
}

ParsedSolution parse_json(const nlohmann::json& j, const MpsNameMaps& maps,
                          const MilpModel& model) {
  ParsedSolution out;
  if (j.contains("status") || j.contains("variables")) {
    if (j.contains("status")) out.status = lower(j.at("status").get<std::string>());
    if (j.contains("objective") && j.at("objective").is_number()) {
      out.objective = j.at("objective").get<double>();
    }
    if (j.contains("dual_bound") && j.at("dual_bound").is_number()) {
      out.dual_bound = j.at("dual_bound").get<double>();
    }
    if (j.contains("variables")) {
      for (const auto& [k, v] : j.at("variables").items()) {
        if (!v.is_number()) throw ExternalSolverError("non-numeric value for " + k);
        out.values[unmap(maps, model, k)] = v.get<double>();
      }
    }
    return out;
  }
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number()) throw ExternalSolverError("non-numeric value for " + k);
    out.values[unmap(maps, model, k)] = v.get<double>();
  }
  return out;
}

ParsedSolution parse_plain(const std::string& text, const MpsNameMaps& maps,
                           const MilpModel& model) {
  ParsedSolution out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string name;
    if (!(ls >> name)) continue;
    if (name[0] == '#' || name[0] == '=') continue;
    double value = 0.0;
    if (!(ls >> value)) {
      throw ExternalSolverError("unparseable solution line: " + line);
    }
    std::string extra;
    if (ls >> extra) {
      throw ExternalSolverError("unparseable solution line: " + line);
    }
    out.values[unmap(maps, model, name)] = value;
  }
  return out;
}

}  // namespace

Solution solve_external(const MilpModel& model,
                        const std::string& command_template,
                        const std::string& work_dir) {
  model.validate();
  const auto t0 = std::chrono::steady_clock::now();

  static std::atomic<unsigned> counter{0};
  fs::path dir;
  bool cleanup = false;
  if (!work_dir.empty()) {
    dir = work_dir;
    fs::create_directories(dir);
  } else {
    dir = fs::temp_directory_path() /
          ("evplace-" + std::to_string(::getpid()) + "-" +
           std::to_string(counter.fetch_add(1)));
    fs::create_directories(dir);
    cleanup = true;
  }
  const fs::path mps_path = dir / "model.mps";
  const fs::path sol_path = dir / "model.sol";

  const MpsNameMaps maps = export_mps(model, mps_path.string());

  bool has_mps = false, has_sol = false;
  std::string cmd = substitute(command_template, "{mps}", mps_path.string(), &has_mps);
  cmd = substitute(cmd, "{sol}", sol_path.string(), &has_sol);
  if (!has_mps || !has_sol) {
    throw ExternalSolverError("command template needs {mps} and {sol}: " +
                              command_template);
  }

  const int rc = std::system(cmd.c_str());
  if (rc != 0) {
    throw ExternalSolverError("external solver exited with status " +
                              std::to_string(rc) + ": " + cmd);
  }

  const std::string text = read_file(sol_path);
  ParsedSolution parsed;
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ExternalSolverError(std::string("bad JSON solution: ") + e.what());
    }
    parsed = parse_json(j, maps, model);
  } else {
    parsed = parse_plain(text, maps, model);
  }
  if (cleanup) {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }

  Solution sol;
  sol.runtime_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (parsed.status == "infeasible") {
    sol.status = SolveStatus::Infeasible;
    return sol;
  }
  if (parsed.status == "unbounded") {
    sol.status = SolveStatus::Unbounded;
    return sol;
  }
  if (!parsed.status.empty() && parsed.status != "optimal" &&
      parsed.status != "feasible") {
    throw ExternalSolverError("unknown solver status: " + parsed.status);
  }

  const VerifyResult check = verify_solution(model, parsed.values);
  if (!check.feasible) {
    throw ExternalSolverError(
        "external solution failed verification, max violation " +
        std::to_string(check.max_violation));
  }
  sol.assignment = parsed.values;
  // The reported objective may be in the negated written sense; trust only
  // the recomputation.
  sol.objective = check.objective;
  // Plain listings without a status are final solutions by convention.
  const bool optimal = parsed.status.empty() || parsed.status == "optimal";
  if (std::isfinite(parsed.dual_bound)) {
    sol.dual_bound = model.maximize ? -parsed.dual_bound : parsed.dual_bound;
    sol.gap = relative_gap(sol.objective, sol.dual_bound, model.maximize);
    // A stale reported bound must not contradict the verified point.
    if (model.maximize ? sol.dual_bound < sol.objective
                       : sol.dual_bound > sol.objective) {
      sol.dual_bound = sol.objective;
      sol.gap = 0.0;
    }
  } else if (optimal) {
    sol.dual_bound = sol.objective;
    sol.gap = 0.0;
  } else {
    sol.gap = kInf;
  }
  sol.status = optimal ? SolveStatus::Optimal : SolveStatus::Feasible;
  return sol;
}

}  // namespace evplace
