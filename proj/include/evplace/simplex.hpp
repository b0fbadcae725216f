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

#ifndef EVPLACE_SIMPLEX_H_
#define EVPLACE_SIMPLEX_H_

#include <Eigen/Sparse>
#include <memory>
#include <vector>

#include "evplace/milp.hpp"

namespace evplace {

struct LpOptions {
  double feas_tol = 1e-9;
  double opt_tol = 1e-9;
  // 0 picks a size-dependent budget.
  long max_iterations = 0;
  int refactor_interval = 100;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpSolution {
  LpStatus status = LpStatus::IterationLimit;
  // Objective in the model's own sense.
  double objective = 0.0;
  // Structural variable values (basic solution: a vertex of the feasible
  // region whenever the LP is nondegenerate in bounds).
  std::vector<double> x;
  long iterations = 0;
};

// Revised primal simplex over bounded variables with slack columns, a
// composite (infeasibility-cost) phase 1, product-form updates on top of a
// sparse LU basis factorization, Dantzig pricing with Bland fallback.
// The basis survives between solves, so bound changes warm start.
class SimplexSolver {
 public:
  explicit SimplexSolver(const MilpModel& model, LpOptions options = {});
  ~SimplexSolver();

  SimplexSolver(const SimplexSolver&) = delete;
  SimplexSolver& operator=(const SimplexSolver&) = delete;

  // Overrides the bounds of a structural column until reset.
  void set_variable_bounds(int column, double lower, double upper);
  void reset_variable_bounds();
  // Appends a row (terms reference structural columns). The warm basis is
  // kept; the new slack starts basic.
  void add_constraint(const Constraint& row);

  LpSolution solve();

  int num_rows() const;
  long total_iterations() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace evplace

#endif  // EVPLACE_SIMPLEX_H_
