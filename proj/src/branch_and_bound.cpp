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

#include "evplace/branch_and_bound.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <utility>

namespace evplace {
namespace {

struct BoundFix {
  int col;
  double lo, hi;
};

struct Node {
  double bound;  // internal-sense lower bound, valid even before its LP runs
  std::vector<BoundFix> fixes;
  bool processed = false;
};

SolveStatus from_lp(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return SolveStatus::Optimal;
    case LpStatus::Infeasible: return SolveStatus::Infeasible;
    case LpStatus::Unbounded: return SolveStatus::Unbounded;
    case LpStatus::IterationLimit: return SolveStatus::Feasible;
  }
  return SolveStatus::Feasible;
}

}  // namespace

LpSolution solve_lp(const MilpModel& model, const LpOptions& options) {
  SimplexSolver solver(model, options);
  return solver.solve();
}

double root_lp_gap(double integer_opt, double root_relaxation) {
  if (std::abs(integer_opt) <= 1e-12 && std::abs(root_relaxation) <= 1e-12) {
    return 0.0;
  }
  if (root_relaxation <= 0.0) return integer_opt > 0.0 ? kInf : 0.0;
  return (integer_opt - root_relaxation) / root_relaxation;
}

double root_lp_gap(const MilpModel& model, double integer_opt,
                   const LpOptions& options) {
  const LpSolution lp = solve_lp(model, options);
  if (lp.status != LpStatus::Optimal) return kInf;
  return root_lp_gap(integer_opt, lp.objective);
}

Solution solve_bnb(const MilpModel& model, const BnbParams& params) {
  model.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };
  const double sense = model.maximize ? -1.0 : 1.0;

  Solution sol;
  SimplexSolver solver(model, params.lp);

  std::vector<int> int_cols;
  for (int j = 0; j < static_cast<int>(model.variables.size()); ++j) {
    if (model.variables[j].is_integer) int_cols.push_back(j);
  }

  if (int_cols.empty()) {
    const LpSolution lp = solver.solve();
    sol.lp_iterations = lp.iterations;
    sol.status = from_lp(lp.status);
    if (lp.status == LpStatus::Optimal) {
      sol.objective = lp.objective;
      sol.dual_bound = lp.objective;
      sol.gap = 0.0;
      for (int j = 0; j < static_cast<int>(model.variables.size()); ++j) {
        sol.assignment[model.variables[j].name] = lp.x[j];
      }
    }
    sol.runtime_s = elapsed();
    return sol;
  }

  std::vector<Node> nodes;
  nodes.push_back(Node{-kInf, {}, false});
  // Min-heap on (bound, id): worst bound first, ties by creation order.
  std::priority_queue<std::pair<double, long>,
                      std::vector<std::pair<double, long>>,
                      std::greater<std::pair<double, long>>>
      open;
  open.emplace(-kInf, 0);
  std::vector<long> dive{0};

  bool have_incumbent = false;
  double best_int = kInf;  // internal sense
  std::vector<double> best_x;

  const auto prune_limit = [&] {
    if (!have_incumbent) return kInf;
    return best_int - 1e-9 * std::max(1.0, std::abs(best_int));
  };
  const auto current_dual = [&]() -> double {
    while (!open.empty()) {
      const auto [b, id] = open.top();
      if (nodes[id].processed || b >= prune_limit()) {
        open.pop();
        continue;
      }
      return b;
    }
    return have_incumbent ? best_int : kInf;
  };

  long node_count = 0;
  bool hit_limit = false;
  bool unbounded = false;

  while (true) {
    if (have_incumbent) {
      const double d_int = current_dual();
      const double g = relative_gap(sense * best_int, sense * d_int, model.maximize);
      if (g <= params.gap_target) break;
    }
    if (open.empty() && dive.empty()) break;
    if (params.node_limit > 0 && node_count >= params.node_limit) {
      hit_limit = true;
      break;
    }
    if (params.time_limit_s > 0.0 && elapsed() > params.time_limit_s) {
      hit_limit = true;
      break;
    }

    long id = -1;
    while (!dive.empty()) {
      const long c = dive.back();
      dive.pop_back();
      if (!nodes[c].processed && nodes[c].bound < prune_limit()) {
        id = c;
        break;
      }
    }
    while (id < 0 && !open.empty()) {
      const auto [b, c] = open.top();
      open.pop();
      if (!nodes[c].processed && b < prune_limit()) id = c;
    }
    if (id < 0) continue;

    nodes[id].processed = true;
    solver.reset_variable_bounds();
    for (const BoundFix& f : nodes[id].fixes) {
      solver.set_variable_bounds(f.col, f.lo, f.hi);
    }

    LpSolution lp;
    int rounds = 0;
    while (true) {
      lp = solver.solve();
      sol.lp_iterations += lp.iterations;
      if (lp.status != LpStatus::Optimal) break;
      if (!params.separator || rounds >= params.max_separation_rounds) break;
      const std::vector<Constraint> cuts = params.separator(lp.x);
      if (cuts.empty()) break;
      // Cuts are valid for every integer point, so they join the global row
      // set and tighten all later nodes as well.
      for (const Constraint& c : cuts) solver.add_constraint(c);
      ++rounds;
    }
    ++node_count;
    if (params.log && node_count % 500 == 0) {
      const double d_now = sense * current_dual();
      const double p_now = have_incumbent
                               ? sense * best_int
                               : std::numeric_limits<double>::quiet_NaN();
      params.log("node " + std::to_string(node_count) + " primal " +
                 std::to_string(p_now) + " dual " + std::to_string(d_now) +
                 " gap " +
                 std::to_string(relative_gap(p_now, d_now, model.maximize)));
    }

    if (lp.status == LpStatus::Infeasible) continue;
    if (lp.status == LpStatus::Unbounded) {
      unbounded = true;
      break;
    }
    if (lp.status == LpStatus::IterationLimit) {
      hit_limit = true;
      break;
    }

    const double val = sense * lp.objective;
    nodes[id].bound = std::max(nodes[id].bound, val);
    if (val >= prune_limit()) continue;

    int branch_col = -1;
    double branch_val = 0.0;
    double best_dist = kInf;
    for (const int col : int_cols) {
      const double v = lp.x[col];
      if (std::abs(v - std::round(v)) <= params.integrality_tol) continue;
      const double frac = v - std::floor(v);
      const double dist = std::abs(frac - 0.5);
      if (dist < best_dist - 1e-15) {
        best_dist = dist;
        branch_col = col;
        branch_val = v;
      }
    }

    if (branch_col < 0) {
      std::vector<double> xx = lp.x;
      for (const int col : int_cols) xx[col] = std::round(xx[col]);
      const double vi = sense * model.objective_value(xx);
      if (vi < best_int - 1e-12) {
        best_int = vi;
        best_x = std::move(xx);
        have_incumbent = true;
        dive.clear();
        if (params.log) {
          params.log("incumbent " + std::to_string(sense * best_int) + " node " +
                     std::to_string(node_count));
        }
      }
      continue;
    }

    double lo = model.variables[branch_col].lower;
    double hi = model.variables[branch_col].upper;
    for (const BoundFix& f : nodes[id].fixes) {
      if (f.col == branch_col) {
        lo = f.lo;
        hi = f.hi;
      }
    }
    const double fl = std::floor(branch_val);
    Node down{val, nodes[id].fixes, false};
    down.fixes.push_back(BoundFix{branch_col, lo, fl});
    Node up{val, nodes[id].fixes, false};
    up.fixes.push_back(BoundFix{branch_col, fl + 1.0, hi});

    const long id_down = static_cast<long>(nodes.size());
    nodes.push_back(std::move(down));
    open.emplace(val, id_down);
    const long id_up = static_cast<long>(nodes.size());
    nodes.push_back(std::move(up));
    open.emplace(val, id_up);
    if (!have_incumbent) {
      // Depth-first until the first incumbent; prefer the rounded side.
      const bool up_first = branch_val - fl >= 0.5;
      dive.push_back(up_first ? id_down : id_up);
      dive.push_back(up_first ? id_up : id_down);
    }
  }

  sol.nodes = node_count;
  sol.runtime_s = elapsed();
  if (unbounded) {
    sol.status = SolveStatus::Unbounded;
    return sol;
  }

  const double d_int = current_dual();
  if (have_incumbent) {
    sol.objective = sense * best_int;
    sol.dual_bound = sense * std::min(d_int, best_int);
    sol.gap = relative_gap(sol.objective, sol.dual_bound, model.maximize);
    sol.status = sol.gap <= params.gap_target ? SolveStatus::Optimal
                                              : SolveStatus::Feasible;
    for (int j = 0; j < static_cast<int>(model.variables.size()); ++j) {
      sol.assignment[model.variables[j].name] = best_x[j];
    }
  } else if (hit_limit) {
    sol.status = SolveStatus::Feasible;  // stopped early, nothing proved
    sol.gap = kInf;
  } else {
    sol.status = SolveStatus::Infeasible;
  }
  return sol;
}

}  // namespace evplace
