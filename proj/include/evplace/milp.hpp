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

#ifndef EVPLACE_MILP_H_
#define EVPLACE_MILP_H_

#include <limits>
#include <map>
#include <string>
#include <vector>

namespace evplace {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Verification tolerance for constraints, bounds, and integrality.
inline constexpr double kVerifyTol = 1e-6;
// A variable value this close to an integer counts as integral.
inline constexpr double kIntegralityTol = 1e-6;

enum class Sense { LE, EQ, GE };

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  bool is_integer = false;
  double objective = 0.0;
};

struct Constraint {
  std::string name;
  // (column, coefficient), columns unique per constraint.
  std::vector<std::pair<int, double>> terms;
  Sense sense = Sense::LE;
  double rhs = 0.0;
};

struct MilpModel {
  std::vector<Variable> variables;
  std::vector<Constraint> constraints;
  bool maximize = false;

  int add_variable(Variable v);
  void add_constraint(Constraint c);
  // Column of a variable name; -1 when absent.
  int column(const std::string& name) const;
  int num_integer_variables() const;
  double objective_value(const std::vector<double>& x) const;
  void validate() const;

 private:
  std::map<std::string, int, std::less<>> index_;
};

enum class SolveStatus {
  Optimal,
  Feasible,
  Infeasible,
  BudgetExceeded,
  Unbounded,
};

std::string_view to_string(SolveStatus status);

struct Solution {
  SolveStatus status = SolveStatus::Infeasible;
  std::map<std::string, double> assignment;
  double objective = std::numeric_limits<double>::quiet_NaN();
  double dual_bound = std::numeric_limits<double>::quiet_NaN();
  double gap = std::numeric_limits<double>::quiet_NaN();
  long nodes = 0;
  long lp_iterations = 0;
  double runtime_s = 0.0;
};

struct VerifyResult {
  bool feasible = false;
  double objective = 0.0;
  double max_violation = 0.0;
};

// Independent feasibility check: every constraint, bound, and (for integer
// variables) integrality to 1e-6 absolute; objective recomputed from the
// assignment. Missing variables count as 0.
VerifyResult verify_solution(const MilpModel& model,
                             const std::map<std::string, double>& assignment);

// (P - D)/D for minimization and the mirror for maximization; 0 when the
// bounds coincide, +inf when the denominator vanishes or a bound is not
// finite.
double relative_gap(double primal, double dual, bool maximize);

}  // namespace evplace

#endif  // EVPLACE_MILP_H_
