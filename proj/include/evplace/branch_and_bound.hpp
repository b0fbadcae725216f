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

#ifndef EVPLACE_BRANCH_AND_BOUND_H_
#define EVPLACE_BRANCH_AND_BOUND_H_

#include <functional>
#include <string>
#include <vector>

#include "evplace/milp.hpp"
#include "evplace/simplex.hpp"

namespace evplace {

// Called with the fractional relaxation point (by model column); returns
// violated rows to append globally, or empty when separation is done.
using SeparatorFn =
    std::function<std::vector<Constraint>(const std::vector<double>&)>;

struct BnbParams {
  double gap_target = 0.01;
  double time_limit_s = 0.0;  // 0 disables
  long node_limit = 0;        // 0 disables
  double integrality_tol = kIntegralityTol;
  int max_separation_rounds = 20;
  SeparatorFn separator;  // optional, applied at every node relaxation
  LpOptions lp;
  std::function<void(const std::string&)> log;  // optional progress sink
};

// Relaxation value of the model with integrality dropped, in model sense.
LpSolution solve_lp(const MilpModel& model, const LpOptions& options = {});

// Best-first branch and bound over the bounded simplex, diving first to an
// incumbent. Returns Optimal when the relative gap reaches gap_target,
// Feasible when a limit stops the search with an incumbent, Infeasible or
// Unbounded otherwise. Solution.gap and dual_bound are always honest.
Solution solve_bnb(const MilpModel& model, const BnbParams& params = {});

// (OPT - D) / D where D is the relaxation value at the root after cuts and
// OPT the integer optimum; +inf when D <= 0 < OPT, 0 when both are zero.
double root_lp_gap(double integer_opt, double root_relaxation);

// Solves the relaxation of model once and applies the formula above.
double root_lp_gap(const MilpModel& model, double integer_opt,
                   const LpOptions& options = {});

}  // namespace evplace

#endif  // EVPLACE_BRANCH_AND_BOUND_H_
