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

#include "evplace/mps.hpp"

#include <json.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace evplace {
namespace {

std::string base36(std::size_t v) {
  static const char* digits = "0123456789abcdefghijklmnopqrstuvwxyz";
  std::string out;
  do {
    out.insert(out.begin(), digits[v % 36]);
    v /= 36;
  } while (v > 0);
  return out;
}

std::string sanitize(const std::string& name) {
  std::string out;
  for (const char c : name) {
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '~'
                      ? c
                      : '_');
  }
  return out.empty() ? std::string("_") : out;
}

// Shortens names to <= 8 characters, keeping already-short unique names and
// resolving the rest as prefix + '~' + base36 counter, in input order so the
// result is deterministic.
class NameShortener {
 public:
  explicit NameShortener(std::unordered_set<std::string> reserved)
      : used_(std::move(reserved)) {}

  std::string shorten(const std::string& original) {
    const std::string clean = sanitize(original);
    if (clean.size() <= 8 && used_.insert(clean).second) return clean;
    while (true) {
      const std::string tail = "~" + base36(counter_++);
      const std::string head = clean.substr(0, 8 - tail.size());
      const std::string candidate = head + tail;
      if (used_.insert(candidate).second) return candidate;
    }
  }

 private:
  std::unordered_set<std::string> used_;
  std::size_t counter_ = 0;
};

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Fixed MPS data line: field 1 at column 2, field 2 at 5, field 3 at 15,
// field 4 at 25, all 1-based. Long values spill right, which whitespace
// tolerant readers accept.
void pad_to(std::string& line, std::size_t column) {
  if (line.size() + 1 < column) line.resize(column - 1, ' ');
  else if (!line.empty()) line.push_back(' ');
}

std::string data_line(const std::string& f1, const std::string& f2,
                      const std::string& f3 = "", const std::string& f4 = "") {
  std::string line;
  pad_to(line, 2);
  line += f1;
  pad_to(line, 5);
  line += f2;
  if (!f3.empty()) {
    pad_to(line, 15);
    line += f3;
  }
  if (!f4.empty()) {
    pad_to(line, 25);
    line += f4;
  }
  return line + "\n";
}

}  // namespace

std::string mps_text(const MilpModel& model, MpsNameMaps* maps) {
  model.validate();
  const double flip = model.maximize ? -1.0 : 1.0;

  NameShortener row_names({"COST"});
  NameShortener col_names({});
  std::vector<std::string> row_short, col_short;
  MpsNameMaps local;
  local.maximize = model.maximize;
  for (const Constraint& c : model.constraints) {
    row_short.push_back(row_names.shorten(c.name));
    local.rows[row_short.back()] = c.name;
  }
  for (const Variable& v : model.variables) {
    col_short.push_back(col_names.shorten(v.name));
    local.columns[col_short.back()] = v.name;
  }

  std::string out;
  out += "NAME          EVPLACE\n";
  out += "ROWS\n";
  out += data_line("N", "COST");
  for (std::size_t i = 0; i < model.constraints.size(); ++i) {
    const char* s = model.constraints[i].sense == Sense::LE   ? "L"
                    : model.constraints[i].sense == Sense::GE ? "G"
                                                              : "E";
    out += data_line(s, row_short[i]);
  }

  // Row entries per column, in row order, objective first.
  std::vector<std::vector<std::pair<int, double>>> by_col(model.variables.size());
  for (std::size_t r = 0; r < model.constraints.size(); ++r) {
    for (const auto& [col, coef] : model.constraints[r].terms) {
      if (coef != 0.0) by_col[col].emplace_back(static_cast<int>(r), coef);
    }
  }

  out += "COLUMNS\n";
  bool in_integer = false;
  int marker = 0;
  for (std::size_t j = 0; j < model.variables.size(); ++j) {
    const Variable& v = model.variables[j];
    if (v.is_integer != in_integer) {
      out += data_line("", "MK" + std::to_string(marker++), "'MARKER'",
                       v.is_integer ? "'INTORG'" : "'INTEND'");
      in_integer = v.is_integer;
    }
    if (v.objective != 0.0) {
      out += data_line("", col_short[j], "COST", number(flip * v.objective));
    }
    for (const auto& [r, coef] : by_col[j]) {
      out += data_line("", col_short[j], row_short[r], number(coef));
    }
  }
  if (in_integer) {
    out += data_line("", "MK" + std::to_string(marker++), "'MARKER'", "'INTEND'");
  }

  out += "RHS\n";
  for (std::size_t r = 0; r < model.constraints.size(); ++r) {
    if (model.constraints[r].rhs != 0.0) {
      out += data_line("", "RHS", row_short[r], number(model.constraints[r].rhs));
    }
  }
  out += "RANGES\n";
  out += "BOUNDS\n";
  for (std::size_t j = 0; j < model.variables.size(); ++j) {
    const Variable& v = model.variables[j];
    const bool lo = std::isfinite(v.lower);
    const bool up = std::isfinite(v.upper);
    // Every variable gets explicit bounds so no reader falls back to its own
    // integer-default conventions.
    if (lo && up && v.lower == v.upper) {
      out += data_line("FX", "BND", col_short[j], number(v.lower));
      continue;
    }
    if (lo) out += data_line("LO", "BND", col_short[j], number(v.lower));
    else out += data_line("MI", "BND", col_short[j]);
    if (up) out += data_line("UP", "BND", col_short[j], number(v.upper));
    else out += data_line("PL", "BND", col_short[j]);
  }
  out += "ENDATA\n";

  if (maps != nullptr) *maps = std::move(local);
  return out;
}

std::string name_map_json(const MpsNameMaps& maps) {
  nlohmann::json j;
  j["objective_sense"] = maps.maximize ? "maximize" : "minimize";
  j["rows"] = maps.rows;
  j["columns"] = maps.columns;
  return j.dump(2) + "\n";
}

MpsNameMaps parse_name_map_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  MpsNameMaps maps;
  maps.maximize = j.at("objective_sense").get<std::string>() == "maximize";
  for (const auto& [k, v] : j.at("rows").items()) maps.rows[k] = v.get<std::string>();
  for (const auto& [k, v] : j.at("columns").items()) {
    maps.columns[k] = v.get<std::string>();
  }
  return maps;
}

MpsNameMaps export_mps(const MilpModel& model, const std::string& path) {
  MpsNameMaps maps;
  const std::string text = mps_text(model, &maps);
  {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
  }
  {
    const std::string side = path + ".names.json";
    std::ofstream f(side, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + side);
    f << name_map_json(maps);
  }
  return maps;
}

}  // namespace evplace
