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

#include "evplace/milp.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace evplace {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal:
      return "Optimal";
    case SolveStatus::Feasible:
      return "Feasible";
    case SolveStatus::Infeasible:
      return "Infeasible";
    case SolveStatus::BudgetExceeded:
      return "BudgetExceeded";
    case SolveStatus::Unbounded:
      return "Unbounded";
  }
  return "Unknown";
}

int MilpModel::add_variable(Variable v) {
  if (v.name.empty()) throw std::invalid_argument("variable without a name");
  if (v.lower > v.upper) {
    throw std::invalid_argument("variable " + v.name + ": lower > upper");
  }
  auto [it, inserted] = index_.emplace(v.name, static_cast<int>(variables.size()));
  if (!inserted) throw std::invalid_argument("duplicate variable " + v.name);
  variables.push_back(std::move(v));
  return it->second;
}

void MilpModel::add_constraint(Constraint c) {
  if (c.name.empty()) throw std::invalid_argument("constraint without a name");
  std::set<int> seen;
  for (const auto& [col, coeff] : c.terms) {
    if (col < 0 || col >= static_cast<int>(variables.size())) {
      throw std::invalid_argument("constraint " + c.name +
                                  " references unknown column");
    }
    if (!seen.insert(col).second) {
      throw std::invalid_argument("constraint " + c.name +
                                  " repeats a column");
    }
    (void)coeff;
  }
  constraints.push_back(std::move(c));
}

int MilpModel::column(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

int MilpModel::num_integer_variables() const {
  int n = 0;
  for (const Variable& v : variables) n += v.is_integer ? 1 : 0;
  return n;
}

double MilpModel::objective_value(const std::vector<double>& x) const {
  double obj = 0.0;
  for (std::size_t j = 0; j < variables.size(); ++j) {
    obj += variables[j].objective * x[j];
  }
  return obj;
}

void MilpModel::validate() const {
  std::set<std::string> names;
  for (const Variable& v : variables) {
    if (!names.insert(v.name).second) {
      throw std::invalid_argument("duplicate variable " + v.name);
    }
    if (v.lower > v.upper) {
      throw std::invalid_argument("variable " + v.name + ": lower > upper");
    }
  }
  for (const Constraint& c : constraints) {
    if (!names.insert(c.name).second) {
      throw std::invalid_argument("duplicate row name " + c.name);
    }
    if (!std::isfinite(c.rhs)) {
      throw std::invalid_argument("row " + c.name + ": rhs not finite");
    }
    std::set<int> seen;
    for (const auto& [col, coeff] : c.terms) {
      if (col < 0 || col >= static_cast<int>(variables.size())) {
        throw std::invalid_argument("row " + c.name + ": bad column");
      }
      if (!seen.insert(col).second) {
        throw std::invalid_argument("row " + c.name + ": repeated column");
      }
      if (!std::isfinite(coeff)) {
        throw std::invalid_argument("row " + c.name + ": coefficient not finite");
      }
    }
  }
}

VerifyResult verify_solution(const MilpModel& model,
                             const std::map<std::string, double>& assignment) {
  std::vector<double> x(model.variables.size(), 0.0);
  for (std::size_t j = 0; j < model.variables.size(); ++j) {
    auto it = assignment.find(model.variables[j].name);
    if (it != assignment.end()) x[j] = it->second;
  }
  VerifyResult res;
  double viol = 0.0;
  for (std::size_t j = 0; j < model.variables.size(); ++j) {
    const Variable& v = model.variables[j];
    if (std::isfinite(v.lower)) viol = std::max(viol, v.lower - x[j]);
    if (std::isfinite(v.upper)) viol = std::max(viol, x[j] - v.upper);
    if (v.is_integer) {
      viol = std::max(viol, std::abs(x[j] - std::round(x[j])));
    }
  }
  for (const Constraint& c : model.constraints) {
    double lhs = 0.0;
    for (const auto& [col, coeff] : c.terms) lhs += coeff * x[col];
    switch (c.sense) {
      case Sense::LE:
        viol = std::max(viol, lhs - c.rhs);
        break;
      case Sense::GE:
        viol = std::max(viol, c.rhs - lhs);
        break;
      case Sense::EQ:
        viol = std::max(viol, std::abs(lhs - c.rhs));
        break;
    }
  }
  res.max_violation = viol;
  res.feasible = viol <= kVerifyTol;
  res.objective = model.objective_value(x);
  return res;
}

double relative_gap(double primal, double dual, bool maximize) {
  if (!std::isfinite(primal) || !std::isfinite(dual)) return kInf;
  double num = maximize ? dual - primal : primal - dual;
  double den = maximize ? primal : dual;
  if (std::abs(num) <= 1e-12) return 0.0;
  if (std::abs(den) <= 1e-12) return kInf;
  return num / std::abs(den);
}

}  // namespace evplace
