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

#include "evplace/simplex.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace evplace {
namespace {

constexpr double kPivotTol = 1e-9;
constexpr int kBlandTrigger = 1000;

enum class VarState { Basic, AtLower, AtUpper, Free };

struct Eta {
  int r = -1;
  Eigen::VectorXd w;
};

}  // namespace

struct SimplexSolver::Impl {
  const MilpModel* model = nullptr;
  LpOptions options;

  int n = 0;  // structural columns
  std::vector<Constraint> rows;

  // Column-major matrix over [structural | slacks], rebuilt when rows change.
  Eigen::SparseMatrix<double> a;
  bool matrix_valid = false;

  std::vector<double> cost;  // internal min sense, slacks at zero
  std::vector<double> lb, ub, base_lb, base_ub;
  std::vector<double> rhs;

  std::vector<int> basic;          // row -> column
  std::vector<int> pos_in_basis;   // column -> row or -1
  std::vector<VarState> state;
  std::vector<double> x;
  bool basis_valid = false;

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  bool lu_valid = false;
  std::vector<Eta> etas;

  long iterations_total = 0;

  int m() const { return static_cast<int>(rows.size()); }
  int cols() const { return n + m(); }

  void append_row(const Constraint& row);
  void rebuild_matrix();
  void slack_basis();
  void clamp_nonbasics();
  bool factorize();
  void recompute_basics();
  Eigen::VectorXd ftran(Eigen::VectorXd v);
  Eigen::VectorXd btran(Eigen::VectorXd v);
  double violation(int col) const;  // bounds only
  LpSolution run();
};

SimplexSolver::SimplexSolver(const MilpModel& model, LpOptions options)
    : impl_(std::make_unique<Impl>()) {
  model.validate();
  impl_->model = &model;
  impl_->options = options;
  impl_->n = static_cast<int>(model.variables.size());
  const double flip = model.maximize ? -1.0 : 1.0;
  for (const Variable& v : model.variables) {
    impl_->cost.push_back(flip * v.objective);
    impl_->base_lb.push_back(v.lower);
    impl_->base_ub.push_back(v.upper);
  }
  impl_->lb = impl_->base_lb;
  impl_->ub = impl_->base_ub;
  for (const Constraint& row : model.constraints) impl_->append_row(row);
}

SimplexSolver::~SimplexSolver() = default;

void SimplexSolver::Impl::append_row(const Constraint& row) {
  for (const auto& [col, coef] : row.terms) {
    if (col < 0 || col >= n) throw std::invalid_argument("row column out of range");
    (void)coef;
  }
  rows.push_back(row);
  rhs.push_back(row.rhs);
  // Slack bounds encode the row sense: a'x + s = rhs.
  switch (row.sense) {
    case Sense::LE:
      lb.push_back(0.0);
      ub.push_back(kInf);
      break;
    case Sense::GE:
      lb.push_back(-kInf);
      ub.push_back(0.0);
      break;
    case Sense::EQ:
      lb.push_back(0.0);
      ub.push_back(0.0);
      break;
  }
  cost.push_back(0.0);
  matrix_valid = false;
  if (basis_valid) {
    // The bordered basis [B 0; * 1] stays nonsingular with the new slack
    // basic, so a warm basis survives row additions.
    const int slack = cols() - 1;
    basic.push_back(slack);
    pos_in_basis.push_back(m() - 1);
    state.push_back(VarState::Basic);
    x.push_back(0.0);
    lu_valid = false;
  }
}

void SimplexSolver::Impl::rebuild_matrix() {
  std::vector<Eigen::Triplet<double>> trips;
  for (int i = 0; i < m(); ++i) {
    for (const auto& [col, coef] : rows[i].terms) {
      if (coef != 0.0) trips.emplace_back(i, col, coef);
    }
    trips.emplace_back(i, n + i, 1.0);
  }
  a.resize(m(), cols());
  a.setFromTriplets(trips.begin(), trips.end());
  a.makeCompressed();
  matrix_valid = true;
}

void SimplexSolver::Impl::slack_basis() {
  basic.assign(m(), 0);
  pos_in_basis.assign(cols(), -1);
  state.assign(cols(), VarState::AtLower);
  x.assign(cols(), 0.0);
  for (int j = 0; j < n; ++j) {
    if (std::isfinite(lb[j])) {
      state[j] = VarState::AtLower;
    } else if (std::isfinite(ub[j])) {
      state[j] = VarState::AtUpper;
    } else {
      state[j] = VarState::Free;
    }
  }
  for (int i = 0; i < m(); ++i) {
    const int slack = n + i;
    basic[i] = slack;
    pos_in_basis[slack] = i;
    state[slack] = VarState::Basic;
  }
  basis_valid = true;
  lu_valid = false;
}

void SimplexSolver::Impl::clamp_nonbasics() {
  for (int j = 0; j < cols(); ++j) {
    if (state[j] == VarState::Basic) continue;
    if (state[j] == VarState::AtLower && !std::isfinite(lb[j])) {
      state[j] = std::isfinite(ub[j]) ? VarState::AtUpper : VarState::Free;
    } else if (state[j] == VarState::AtUpper && !std::isfinite(ub[j])) {
      state[j] = std::isfinite(lb[j]) ? VarState::AtLower : VarState::Free;
    } else if (state[j] == VarState::Free && std::isfinite(lb[j])) {
      state[j] = VarState::AtLower;
    } else if (state[j] == VarState::Free && std::isfinite(ub[j])) {
      state[j] = VarState::AtUpper;
    }
    switch (state[j]) {
      case VarState::AtLower: x[j] = lb[j]; break;
      case VarState::AtUpper: x[j] = ub[j]; break;
      case VarState::Free: x[j] = 0.0; break;
      case VarState::Basic: break;
    }
  }
}

bool SimplexSolver::Impl::factorize() {
  std::vector<Eigen::Triplet<double>> trips;
  for (int i = 0; i < m(); ++i) {
    const int col = basic[i];
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, col); it; ++it) {
      trips.emplace_back(it.row(), i, it.value());
    }
  }
  Eigen::SparseMatrix<double> b(m(), m());
  b.setFromTriplets(trips.begin(), trips.end());
  b.makeCompressed();
  lu.compute(b);
  etas.clear();
  lu_valid = lu.info() == Eigen::Success;
  return lu_valid;
}

void SimplexSolver::Impl::recompute_basics() {
  Eigen::VectorXd r = Eigen::Map<const Eigen::VectorXd>(rhs.data(), m());
  for (int j = 0; j < cols(); ++j) {
    if (state[j] == VarState::Basic || x[j] == 0.0) continue;
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, j); it; ++it) {
      r[it.row()] -= it.value() * x[j];
    }
  }
  const Eigen::VectorXd xb = ftran(std::move(r));
  for (int i = 0; i < m(); ++i) x[basic[i]] = xb[i];
}

Eigen::VectorXd SimplexSolver::Impl::ftran(Eigen::VectorXd v) {
  Eigen::VectorXd y = lu.solve(v);
  for (const Eta& e : etas) {
    const double t = y[e.r] / e.w[e.r];
    if (t != 0.0) {
      y -= t * e.w;
      y[e.r] = t;
    } else {
      y[e.r] = 0.0;
    }
  }
  return y;
}

Eigen::VectorXd SimplexSolver::Impl::btran(Eigen::VectorXd v) {
  for (auto it = etas.rbegin(); it != etas.rend(); ++it) {
    double dot = 0.0;
    for (int i = 0; i < it->w.size(); ++i) {
      if (i != it->r) dot += it->w[i] * v[i];
    }
    v[it->r] = (v[it->r] - dot) / it->w[it->r];
  }
  return lu.transpose().solve(v);
}

double SimplexSolver::Impl::violation(int col) const {
  if (x[col] < lb[col]) return lb[col] - x[col];
  if (x[col] > ub[col]) return x[col] - ub[col];
  return 0.0;
}

LpSolution SimplexSolver::Impl::run() {
  LpSolution out;
  const double sense = model->maximize ? -1.0 : 1.0;
  const double feas = options.feas_tol;

  if (m() == 0) {
    // Pure bound minimization.
    out.x.assign(n, 0.0);
    for (int j = 0; j < n; ++j) {
      if (cost[j] > 0.0) {
        if (!std::isfinite(lb[j])) {
          out.status = LpStatus::Unbounded;
          return out;
        }
        out.x[j] = lb[j];
      } else if (cost[j] < 0.0) {
        if (!std::isfinite(ub[j])) {
          out.status = LpStatus::Unbounded;
          return out;
        }
        out.x[j] = ub[j];
      } else {
        out.x[j] = std::isfinite(lb[j]) ? lb[j]
                   : std::isfinite(ub[j]) ? ub[j]
                                          : 0.0;
      }
      if (lb[j] > ub[j] + feas) {
        out.status = LpStatus::Infeasible;
        return out;
      }
    }
    double obj = 0.0;
    for (int j = 0; j < n; ++j) obj += cost[j] * out.x[j];
    out.status = LpStatus::Optimal;
    out.objective = sense * obj;
    return out;
  }

  for (int j = 0; j < cols(); ++j) {
    if (lb[j] > ub[j] + feas) {
      out.status = LpStatus::Infeasible;
      return out;
    }
  }

  if (!matrix_valid) rebuild_matrix();
  if (!basis_valid) slack_basis();
  clamp_nonbasics();
  if (!factorize()) {
    slack_basis();
    clamp_nonbasics();
    if (!factorize()) throw std::runtime_error("basis factorization failed");
  }
  recompute_basics();

  const long max_iter = options.max_iterations > 0
                            ? options.max_iterations
                            : std::max<long>(20000, 200L * (m() + n));
  long degenerate_run = 0;
  Eigen::VectorXd cb(m());

  for (long iter = 0; iter < max_iter; ++iter) {
    ++out.iterations;
    ++iterations_total;

    // Composite phase 1: minimize total bound violation of the basics.
    bool phase1 = false;
    for (int i = 0; i < m(); ++i) {
      if (violation(basic[i]) > feas) {
        phase1 = true;
        break;
      }
    }

    for (int i = 0; i < m(); ++i) {
      const int col = basic[i];
      if (phase1) {
        cb[i] = x[col] > ub[col] + feas ? 1.0 : x[col] < lb[col] - feas ? -1.0 : 0.0;
      } else {
        cb[i] = cost[col];
      }
    }
    const Eigen::VectorXd pi = btran(cb);

    // Pricing: most negative reduced direction, Bland after long degeneracy.
    const bool bland = degenerate_run > kBlandTrigger;
    int enter = -1;
    double enter_dir = 0.0;
    double best = options.opt_tol;
    for (int j = 0; j < cols(); ++j) {
      if (state[j] == VarState::Basic) continue;
      if (ub[j] - lb[j] <= 0.0) continue;  // fixed
      double dj = phase1 ? 0.0 : cost[j];
      for (Eigen::SparseMatrix<double>::InnerIterator it(a, j); it; ++it) {
        dj -= pi[it.row()] * it.value();
      }
      double improve = 0.0;
      double dir = 0.0;
      if (state[j] != VarState::AtUpper && dj < -options.opt_tol) {
        improve = -dj;
        dir = 1.0;
      } else if (state[j] != VarState::AtLower && dj > options.opt_tol) {
        improve = dj;
        dir = -1.0;
      } else {
        continue;
      }
      if (bland) {
        enter = j;
        enter_dir = dir;
        break;
      }
      if (improve > best) {
        best = improve;
        enter = j;
        enter_dir = dir;
      }
    }

    if (enter < 0) {
      if (phase1) {
        out.status = LpStatus::Infeasible;
        return out;
      }
      double obj = 0.0;
      for (int j = 0; j < n; ++j) obj += cost[j] * x[j];
      out.status = LpStatus::Optimal;
      out.objective = sense * obj;
      out.x.assign(n, 0.0);
      for (int j = 0; j < n; ++j) out.x[j] = x[j];
      return out;
    }

    Eigen::VectorXd aj = Eigen::VectorXd::Zero(m());
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, enter); it; ++it) {
      aj[it.row()] = it.value();
    }
    const Eigen::VectorXd w = ftran(std::move(aj));

    // Ratio test. Basic k moves at rate -dir*w_i; the first status change
    // blocks: a feasible basic reaching a bound, or an infeasible basic
    // reaching the bound it violates (phase 1 stops there so costs refresh).
    double t_max = kInf;
    int leave = -1;           // position in basis
    double leave_to = 0.0;    // bound the leaving variable lands on
    bool leave_upper = false;
    const double span = ub[enter] - lb[enter];
    if (std::isfinite(span)) t_max = span;

    double best_pivot = 0.0;
    for (int i = 0; i < m(); ++i) {
      const double wi = w[i];
      if (std::abs(wi) <= kPivotTol) continue;
      const int col = basic[i];
      const double rate = -enter_dir * wi;
      double target = 0.0;
      bool to_upper = false;
      if (x[col] > ub[col] + feas) {
        if (rate >= 0.0) continue;
        target = ub[col];
        to_upper = true;
      } else if (x[col] < lb[col] - feas) {
        if (rate <= 0.0) continue;
        target = lb[col];
      } else if (rate > 0.0) {
        if (!std::isfinite(ub[col])) continue;
        target = ub[col];
        to_upper = true;
      } else {
        if (!std::isfinite(lb[col])) continue;
        target = lb[col];
      }
      double t = (target - x[col]) / rate;
      if (t < 0.0) t = 0.0;
      const bool better =
          t < t_max - 1e-12 ||
          (t <= t_max + 1e-12 && leave >= 0 &&
           (bland ? basic[i] < basic[leave] : std::abs(wi) > best_pivot)) ||
          (t <= t_max + 1e-12 && leave < 0 && t <= t_max);
      if (better) {
        t_max = std::min(t, t_max);
        leave = i;
        leave_to = target;
        leave_upper = to_upper;
        best_pivot = std::abs(wi);
      }
    }

    if (!std::isfinite(t_max)) {
      out.status = LpStatus::Unbounded;
      return out;
    }

    degenerate_run = t_max <= 1e-12 ? degenerate_run + 1 : 0;

    // Move.
    x[enter] += enter_dir * t_max;
    for (int i = 0; i < m(); ++i) {
      if (w[i] != 0.0) x[basic[i]] -= enter_dir * t_max * w[i];
    }

    if (leave < 0) {
      // Bound flip: the entering variable traverses its whole span.
      state[enter] =
          state[enter] == VarState::AtLower ? VarState::AtUpper : VarState::AtLower;
      x[enter] = state[enter] == VarState::AtLower ? lb[enter] : ub[enter];
      continue;
    }

    const int out_col = basic[leave];
    x[out_col] = leave_to;  // snap to the bound exactly
    state[out_col] = leave_upper ? VarState::AtUpper : VarState::AtLower;
    pos_in_basis[out_col] = -1;
    basic[leave] = enter;
    pos_in_basis[enter] = leave;
    state[enter] = VarState::Basic;

    if (static_cast<int>(etas.size()) >= options.refactor_interval) {
      if (!factorize()) {
        slack_basis();
        clamp_nonbasics();
        if (!factorize()) throw std::runtime_error("basis factorization failed");
      }
      recompute_basics();
    } else {
      if (std::abs(w[leave]) <= kPivotTol) {
        if (!factorize()) throw std::runtime_error("basis factorization failed");
        recompute_basics();
      } else {
        etas.push_back(Eta{leave, w});
      }
    }
  }

  out.status = LpStatus::IterationLimit;
  double obj = 0.0;
  for (int j = 0; j < n; ++j) obj += cost[j] * x[j];
  out.objective = sense * obj;
  out.x.assign(n, 0.0);
  for (int j = 0; j < n; ++j) out.x[j] = x[j];
  return out;
}

void SimplexSolver::set_variable_bounds(int column, double lower, double upper) {
  if (column < 0 || column >= impl_->n) {
    throw std::invalid_argument("variable column out of range");
  }
  impl_->lb[column] = lower;
  impl_->ub[column] = upper;
}

void SimplexSolver::reset_variable_bounds() {
  for (int j = 0; j < impl_->n; ++j) {
    impl_->lb[j] = impl_->base_lb[j];
    impl_->ub[j] = impl_->base_ub[j];
  }
}

void SimplexSolver::add_constraint(const Constraint& row) { impl_->append_row(row); }

LpSolution SimplexSolver::solve() { return impl_->run(); }

int SimplexSolver::num_rows() const { return impl_->m(); }

long SimplexSolver::total_iterations() const { return impl_->iterations_total; }

}  // namespace evplace
