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

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "evplace/branch_and_bound.hpp"
#include "evplace/external_solver.hpp"
#include "evplace/milp.hpp"
#include "evplace/mps.hpp"
#include "evplace/rng.hpp"

using namespace evplace;

namespace {

const std::string kSourceDir = EVPLACE_SOURCE_DIR;

int ivar(MilpModel& m, const std::string& name, double lo, double hi, double obj) {
  return m.add_variable(Variable{name, lo, hi, true, obj});
}

int cvar(MilpModel& m, const std::string& name, double lo, double hi, double obj) {
  return m.add_variable(Variable{name, lo, hi, false, obj});
}

void row(MilpModel& m, std::vector<std::pair<int, double>> terms, Sense s,
         double rhs, const std::string& name = "") {
  Constraint c;
  c.name = name.empty() ? "r" + std::to_string(m.constraints.size()) : name;
  c.terms = std::move(terms);
  c.sense = s;
  c.rhs = rhs;
  m.add_constraint(std::move(c));
}

long knapsack_dp(const std::vector<long>& w, const std::vector<long>& v, long cap) {
  std::vector<long> best(cap + 1, 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (long c = cap; c >= w[i]; --c) {
      best[c] = std::max(best[c], best[c - w[i]] + v[i]);
    }
  }
  return best[cap];
}

bool have_scipy() {
  static const int rc =
      std::system("python3 -c 'import scipy.optimize' >/dev/null 2>&1");
  return rc == 0;
}

std::string solver_template() {
  return "python3 " + kSourceDir + "/tools/mps_solve.py {mps} {sol} >/dev/null";
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(static_cast<bool>(f));
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("model bookkeeping and validation") {
  MilpModel m;
  const int x = ivar(m, "x", 0, 1, 2.0);
  const int y = cvar(m, "y", 0, kInf, 1.0);
  CHECK(m.column("x") == x);
  CHECK(m.column("y") == y);
  CHECK(m.column("z") == -1);
  CHECK(m.num_integer_variables() == 1);
  CHECK(m.objective_value({1.0, 3.0}) == doctest::Approx(5.0));
  row(m, {{x, 1.0}, {y, 1.0}}, Sense::LE, 2.0);
  m.validate();

  CHECK_THROWS(m.add_variable(Variable{"x", 0, 1, false, 0.0}));
  Constraint bad;
  bad.name = "bad";
  bad.terms = {{17, 1.0}};
  CHECK_THROWS(m.add_constraint(bad));
}

TEST_CASE("verification flags bound constraint and integrality breaks") {
  MilpModel m;
  const int x = ivar(m, "x", 0, 5, 1.0);
  row(m, {{x, 1.0}}, Sense::GE, 1.0);

  const VerifyResult zero = verify_solution(m, {});
  CHECK_FALSE(zero.feasible);
  CHECK(zero.max_violation == doctest::Approx(1.0));
  CHECK(zero.objective == doctest::Approx(0.0));

  const VerifyResult ok = verify_solution(m, {{"x", 2.0}});
  CHECK(ok.feasible);
  CHECK(ok.objective == doctest::Approx(2.0));

  CHECK_FALSE(verify_solution(m, {{"x", 2.5}}).feasible);   // integrality
  CHECK_FALSE(verify_solution(m, {{"x", 6.0}}).feasible);   // bound
  CHECK(verify_solution(m, {{"x", 2.0 + 5e-7}}).feasible);  // inside 1e-6
}

TEST_CASE("relative gap arithmetic") {
  CHECK(relative_gap(10.0, 10.0, false) == doctest::Approx(0.0));
  CHECK(relative_gap(11.0, 10.0, false) == doctest::Approx(0.1));
  CHECK(relative_gap(10.0, 11.0, true) == doctest::Approx(0.1));
  CHECK(relative_gap(1.0, 0.0, false) == kInf);
  CHECK(std::isinf(relative_gap(1.0, -kInf, false)));
}

TEST_CASE("branch and bound: pure LP falls through to simplex") {
  MilpModel m;
  m.maximize = true;
  const int x = cvar(m, "x", 0, 3, 3.0);
  const int y = cvar(m, "y", 0, kInf, 2.0);
  row(m, {{x, 1.0}, {y, 1.0}}, Sense::LE, 4.0);
  const Solution s = solve_bnb(m);
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(s.objective == doctest::Approx(11.0));
  CHECK(s.gap == doctest::Approx(0.0));
  CHECK(s.assignment.at("x") == doctest::Approx(3.0));
}

TEST_CASE("branch and bound matches knapsack dynamic programming") {
  BnbParams exact;
  exact.gap_target = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng = substream(seed, "knapsack");
    const int n = static_cast<int>(rng.uniform_int(3, 12));
    std::vector<long> w(n), v(n);
    long total = 0;
    for (int i = 0; i < n; ++i) {
      w[i] = rng.uniform_int(1, 15);
      v[i] = rng.uniform_int(0, 20);
      total += w[i];
    }
    const long cap = rng.uniform_int(1, std::max<long>(1, total - 1));
    MilpModel m;
    m.maximize = true;
    std::vector<std::pair<int, double>> terms;
    for (int i = 0; i < n; ++i) {
      const int col =
          ivar(m, "x" + std::to_string(i), 0, 1, static_cast<double>(v[i]));
      terms.emplace_back(col, static_cast<double>(w[i]));
    }
    row(m, std::move(terms), Sense::LE, static_cast<double>(cap));

    const Solution s = solve_bnb(m, exact);
    CAPTURE(seed);
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(s.objective == doctest::Approx(static_cast<double>(knapsack_dp(w, v, cap)))
                             .epsilon(1e-9));
    // Weak duality in the reported solution (maximize: bound from above).
    CHECK(s.dual_bound >= s.objective - 1e-9);
    const VerifyResult check = verify_solution(m, s.assignment);
    CHECK(check.feasible);
    CHECK(check.objective == doctest::Approx(s.objective));
  }
}

TEST_CASE("mixed integer models match integer-grid enumeration") {
  BnbParams exact;
  exact.gap_target = 0.0;
  for (std::uint64_t seed = 200; seed < 260; ++seed) {
    Rng rng = substream(seed, "mixed");
    MilpModel m;
    m.maximize = rng.uniform_int(0, 1) == 1;
    const int ni = static_cast<int>(rng.uniform_int(1, 3));
    const int nc = static_cast<int>(rng.uniform_int(1, 2));
    std::vector<int> icols, ihi;
    for (int i = 0; i < ni; ++i) {
      const int hi = static_cast<int>(rng.uniform_int(1, 3));
      icols.push_back(ivar(m, "i" + std::to_string(i), 0, hi,
                           static_cast<double>(rng.uniform_int(-6, 6))));
      ihi.push_back(hi);
    }
    for (int i = 0; i < nc; ++i) {
      cvar(m, "c" + std::to_string(i), 0, static_cast<double>(rng.uniform_int(1, 5)),
           static_cast<double>(rng.uniform_int(-6, 6)));
    }
    const int nv = static_cast<int>(m.variables.size());
    const int nr = static_cast<int>(rng.uniform_int(1, 3));
    for (int r = 0; r < nr; ++r) {
      std::vector<std::pair<int, double>> terms;
      double anchor = 0.0;
      for (int j = 0; j < nv; ++j) {
        if (rng.uniform01() < 0.7) {
          const double coef = static_cast<double>(rng.uniform_int(-4, 4));
          if (coef != 0.0) {
            terms.emplace_back(j, coef);
            anchor += coef * 0.5 *
                      (m.variables[j].lower + std::min(m.variables[j].upper, 5.0));
          }
        }
      }
      if (terms.empty()) terms.emplace_back(0, 1.0);
      row(m, std::move(terms), rng.uniform_int(0, 1) == 0 ? Sense::LE : Sense::GE,
          anchor);
    }

    // Oracle: enumerate every integer assignment, fix, solve the continuous
    // rest with the (independently tested) LP path.
    double best = kInf;
    const double flip = m.maximize ? -1.0 : 1.0;
    std::vector<int> grid(ni, 0);
    while (true) {
      MilpModel fixed = m;
      for (int i = 0; i < ni; ++i) {
        fixed.variables[icols[i]].lower = grid[i];
        fixed.variables[icols[i]].upper = grid[i];
        fixed.variables[icols[i]].is_integer = false;
      }
      const LpSolution lp = solve_lp(fixed);
      if (lp.status == LpStatus::Optimal) {
        best = std::min(best, flip * lp.objective);
      }
      int k = 0;
      while (k < ni && ++grid[k] > ihi[k]) grid[k++] = 0;
      if (k == ni) break;
    }

    const Solution s = solve_bnb(m, exact);
    CAPTURE(seed);
    if (best == kInf) {
      CHECK(s.status == SolveStatus::Infeasible);
    } else {
      REQUIRE(s.status == SolveStatus::Optimal);
      CHECK(s.objective == doctest::Approx(flip * best).epsilon(1e-7));
    }
  }
}

TEST_CASE("infeasible integer model is reported") {
  MilpModel m;
  const int x = ivar(m, "x", 0, 1, 1.0);
  row(m, {{x, 2.0}}, Sense::GE, 3.0);  // needs x = 1.5
  CHECK(solve_bnb(m).status == SolveStatus::Infeasible);
}

TEST_CASE("branch and bound is deterministic") {
  MilpModel m;
  m.maximize = true;
  Rng rng = substream(9, "det");
  std::vector<std::pair<int, double>> terms;
  for (int i = 0; i < 10; ++i) {
    const int col = ivar(m, "x" + std::to_string(i), 0, 1,
                         static_cast<double>(rng.uniform_int(1, 20)));
    terms.emplace_back(col, static_cast<double>(rng.uniform_int(1, 10)));
  }
  row(m, std::move(terms), Sense::LE, 17.0);
  BnbParams exact;
  exact.gap_target = 0.0;
  const Solution a = solve_bnb(m, exact);
  const Solution b = solve_bnb(m, exact);
  CHECK(a.status == b.status);
  CHECK(a.objective == b.objective);
  CHECK(a.nodes == b.nodes);
  CHECK(a.lp_iterations == b.lp_iterations);
  CHECK(a.assignment == b.assignment);
}

TEST_CASE("node limit stops with an honest gap") {
  MilpModel m;
  m.maximize = true;
  Rng rng = substream(21, "limit");
  std::vector<std::pair<int, double>> terms;
  for (int i = 0; i < 26; ++i) {
    const int col = ivar(m, "x" + std::to_string(i), 0, 1,
                         static_cast<double>(rng.uniform_int(8, 40)));
    terms.emplace_back(col, static_cast<double>(rng.uniform_int(3, 17)));
  }
  row(m, std::move(terms), Sense::LE, 61.0);
  BnbParams limited;
  limited.gap_target = 0.0;
  limited.node_limit = 4;
  const Solution s = solve_bnb(m, limited);
  if (s.status == SolveStatus::Feasible) {
    CHECK(s.gap > 0.0);
    if (!s.assignment.empty()) {
      CHECK(s.dual_bound >= s.objective - 1e-9);
    }
  } else {
    CHECK(s.status == SolveStatus::Optimal);  // solved within 4 nodes
  }
  CHECK(s.nodes <= 4);

  // With room to dive, the limit case carries an incumbent and real bounds.
  limited.node_limit = 60;
  const Solution deeper = solve_bnb(m, limited);
  if (deeper.status == SolveStatus::Feasible) {
    REQUIRE_FALSE(deeper.assignment.empty());
    CHECK(deeper.gap > 0.0);
    CHECK(deeper.dual_bound >= deeper.objective - 1e-9);
    CHECK(verify_solution(m, deeper.assignment).feasible);
  }
}

TEST_CASE("separator rows tighten the relaxation globally") {
  // x + y <= 1.5 with binaries: the relaxation is fractional until the cut
  // x + y <= 1 arrives via the separator.
  MilpModel m;
  m.maximize = true;
  const int x = ivar(m, "x", 0, 1, 1.0);
  const int y = ivar(m, "y", 0, 1, 1.0);
  row(m, {{x, 1.0}, {y, 1.0}}, Sense::LE, 1.5);

  int calls = 0;
  BnbParams params;
  params.gap_target = 0.0;
  params.separator = [&](const std::vector<double>& point) {
    std::vector<Constraint> cuts;
    if (point[0] + point[1] > 1.0 + 1e-6) {
      Constraint c;
      c.name = "cut" + std::to_string(calls++);
      c.terms = {{0, 1.0}, {1, 1.0}};
      c.sense = Sense::LE;
      c.rhs = 1.0;
      cuts.push_back(c);
    }
    return cuts;
  };
  const Solution s = solve_bnb(m, params);
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(s.objective == doctest::Approx(1.0));
  CHECK(calls >= 1);
  CHECK(s.nodes == 1);  // cut makes the root integral
}

TEST_CASE("root gap formula and sentinel") {
  CHECK(root_lp_gap(0.0, 0.0) == doctest::Approx(0.0));
  CHECK(root_lp_gap(4.0, 4.0) == doctest::Approx(0.0));
  CHECK(root_lp_gap(2.0, 1.5) == doctest::Approx(1.0 / 3.0));
  CHECK(std::isinf(root_lp_gap(1.0, 0.0)));
  CHECK(std::isinf(root_lp_gap(1.0, -2.0)));

  // min x1 + x2 subject to x1 + x2 >= 1.5 over integers in [0, 2].
  MilpModel m;
  const int x = ivar(m, "x", 0, 2, 1.0);
  const int y = ivar(m, "y", 0, 2, 1.0);
  row(m, {{x, 1.0}, {y, 1.0}}, Sense::GE, 1.5);
  BnbParams exact;
  exact.gap_target = 0.0;
  const Solution s = solve_bnb(m, exact);
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(s.objective == doctest::Approx(2.0));
  CHECK(root_lp_gap(m, s.objective) == doctest::Approx((2.0 - 1.5) / 1.5));

  // Integral relaxation: gap 0.
  MilpModel integral;
  const int z = ivar(integral, "z", 0, 3, 1.0);
  row(integral, {{z, 1.0}}, Sense::GE, 2.0);
  CHECK(root_lp_gap(integral, 2.0) == doctest::Approx(0.0));
}

TEST_CASE("mps text is deterministic and respects the fixed layout") {
  MilpModel m;
  m.maximize = true;
  const int a = ivar(m, "pick_one_really_long_name", 0, 1, 5.0);
  const int b = ivar(m, "pick_two_really_long_name", 0, 4, 3.0);
  const int c = cvar(m, "flow", -2.5, 7.5, -1.25);
  const int d = cvar(m, "free_range_variable", -kInf, kInf, 0.0);
  const int e = cvar(m, "pinned", 2.0, 2.0, 1.0);
  row(m, {{a, 1.0}, {b, 2.0}}, Sense::LE, 6.0, "capacity_of_everything");
  row(m, {{b, 1.0}, {c, -1.0}}, Sense::GE, -3.5, "COST");
  row(m, {{c, 1.0}, {d, 1.0}, {e, 1.0}}, Sense::EQ, 4.0, "balance");

  MpsNameMaps maps;
  const std::string text = mps_text(m, &maps);
  CHECK(text == mps_text(m));
  CHECK(maps.maximize);

  // Section order and marker pairing.
  const auto pos = [&](const std::string& token) { return text.find(token); };
  CHECK(pos("NAME") < pos("ROWS"));
  CHECK(pos("ROWS") < pos("COLUMNS"));
  CHECK(pos("COLUMNS") < pos("RHS"));
  CHECK(pos("RHS") < pos("RANGES"));
  CHECK(pos("RANGES") < pos("BOUNDS"));
  CHECK(pos("BOUNDS") < pos("ENDATA"));
  CHECK(pos("'INTORG'") < pos("'INTEND'"));
  CHECK(text.find(" N  COST\n") != std::string::npos);

  // Every short name is unique, at most 8 characters, and maps back.
  std::set<std::string> shorts;
  for (const auto& [mps_name, original] : maps.columns) {
    CHECK(mps_name.size() <= 8);
    CHECK(shorts.insert(mps_name).second);
    CHECK(m.column(original) >= 0);
  }
  CHECK(maps.columns.size() == m.variables.size());
  // The model row named COST was renamed away from the objective row.
  CHECK(maps.rows.size() == m.constraints.size());
  int cost_rows = 0;
  for (const auto& [mps_name, original] : maps.rows) {
    CHECK(mps_name.size() <= 8);
    if (original == "COST") {
      CHECK(mps_name != "COST");
      ++cost_rows;
    }
  }
  CHECK(cost_rows == 1);

  // Sidecar serialization round-trips.
  const MpsNameMaps parsed = parse_name_map_json(name_map_json(maps));
  CHECK(parsed.maximize == maps.maximize);
  CHECK(parsed.rows == maps.rows);
  CHECK(parsed.columns == maps.columns);
}

TEST_CASE("mps golden bytes stay frozen") {
  MilpModel m;
  const int x = ivar(m, "x_L3_M0_D2", 0, 1, 2.0);
  const int y = ivar(m, "y_S0_D1_B0_L3_M0", 0, 1, 0.0);
  const int z = cvar(m, "z_S0_D1_P0", 0, kInf, 0.5);
  row(m, {{x, 1.0}, {y, -1.0}}, Sense::GE, 0.0, "cap_L3_M0_t0");
  row(m, {{y, 1.0}, {z, 1.0}}, Sense::EQ, 1.0, "plan_S0_D1");
  const std::string text = mps_text(m);

  const std::string path = kSourceDir + "/tests/data/model_small.mps";
  if (std::getenv("EVPLACE_REGEN_GOLDEN") != nullptr) {
    std::ofstream f(path, std::ios::binary);
    f << text;
  }
  CHECK(text == read_file(path));
}

TEST_CASE("empty model still has all sections") {
  const MilpModel m;
  const std::string text = mps_text(m);
  for (const char* section :
       {"NAME", "ROWS", "COLUMNS", "RHS", "RANGES", "BOUNDS", "ENDATA"}) {
    CHECK(text.find(section) != std::string::npos);
  }
}

TEST_CASE("external adapter round-trips plain and json formats") {
  MilpModel m;
  const int x = ivar(m, "x", 0, 1, 1.0);
  row(m, {{x, 1.0}}, Sense::GE, 1.0);

  SUBCASE("plain name value lines") {
    const Solution s =
        solve_external(m, "echo 'x 1' > {sol} # {mps}");
    CHECK(s.status == SolveStatus::Optimal);
    CHECK(s.objective == doctest::Approx(1.0));
    CHECK(s.assignment.at("x") == doctest::Approx(1.0));
  }
  SUBCASE("flat json object") {
    const Solution s =
        solve_external(m, "echo '{\"x\": 1}' > {sol} # {mps}");
    CHECK(s.status == SolveStatus::Optimal);
    CHECK(s.objective == doctest::Approx(1.0));
  }
  SUBCASE("wrapped json with bounds") {
    const Solution s = solve_external(
        m,
        "echo '{\"status\": \"optimal\", \"objective\": 1, \"dual_bound\": 1, "
        "\"variables\": {\"x\": 1}}' > {sol} # {mps}");
    CHECK(s.status == SolveStatus::Optimal);
    CHECK(s.gap == doctest::Approx(0.0));
  }
  SUBCASE("comments and blank lines are skipped") {
    const Solution s = solve_external(
        m, "printf '# header\\n=obj= 1\\n\\nx 1\\n' > {sol} # {mps}");
    CHECK(s.status == SolveStatus::Optimal);
  }
  SUBCASE("infeasible claim is passed through") {
    const Solution s = solve_external(
        m, "echo '{\"status\": \"infeasible\", \"variables\": {}}' > {sol} # {mps}");
    CHECK(s.status == SolveStatus::Infeasible);
  }
  SUBCASE("claimed point failing verification is rejected") {
    CHECK_THROWS_AS(solve_external(m, "echo 'x 0' > {sol} # {mps}"),
                    ExternalSolverError);
  }
  SUBCASE("corrupted file is a parse error") {
    CHECK_THROWS_AS(solve_external(m, "echo 'x one two' > {sol} # {mps}"),
                    ExternalSolverError);
    CHECK_THROWS_AS(solve_external(m, "echo '{\"x\": ' > {sol} # {mps}"),
                    ExternalSolverError);
  }
  SUBCASE("missing placeholders are rejected") {
    CHECK_THROWS_AS(solve_external(m, "true"), ExternalSolverError);
    CHECK_THROWS_AS(solve_external(m, "true {mps}"), ExternalSolverError);
  }
  SUBCASE("nonzero exit code surfaces") {
    CHECK_THROWS_AS(solve_external(m, "true {mps} {sol} && false"),
                    ExternalSolverError);
  }
  SUBCASE("unknown variable names are rejected") {
    CHECK_THROWS_AS(solve_external(m, "echo 'bogus 1' > {sol} # {mps}"),
                    ExternalSolverError);
  }
}

TEST_CASE("scipy backend agrees with the built-in search") {
  if (!have_scipy()) {
    MESSAGE("python3/scipy unavailable; skipping external solver cross-check");
    return;
  }

  SUBCASE("single binary round trip") {
    MilpModel m;
    const int x = ivar(m, "x", 0, 1, 1.0);
    row(m, {{x, 1.0}}, Sense::GE, 1.0);
    const Solution s = solve_external(m, solver_template());
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(s.objective == doctest::Approx(1.0));
  }

  SUBCASE("random knapsacks agree with built-in branch and bound") {
    BnbParams exact;
    exact.gap_target = 0.0;
    for (std::uint64_t seed = 50; seed < 56; ++seed) {
      Rng rng = substream(seed, "xknap");
      const int n = static_cast<int>(rng.uniform_int(4, 10));
      MilpModel m;
      m.maximize = true;
      std::vector<std::pair<int, double>> terms;
      long total = 0;
      for (int i = 0; i < n; ++i) {
        const long wi = rng.uniform_int(1, 12);
        total += wi;
        const int col = ivar(m, "x" + std::to_string(i), 0, 1,
                             static_cast<double>(rng.uniform_int(1, 30)));
        terms.emplace_back(col, static_cast<double>(wi));
      }
      row(m, std::move(terms), Sense::LE, static_cast<double>(total / 2));
      const Solution ext = solve_external(m, solver_template());
      const Solution own = solve_bnb(m, exact);
      CAPTURE(seed);
      REQUIRE(ext.status == SolveStatus::Optimal);
      REQUIRE(own.status == SolveStatus::Optimal);
      CHECK(ext.objective == doctest::Approx(own.objective).epsilon(1e-6));
    }
  }

  SUBCASE("negated objective sense survives the round trip") {
    MilpModel m;
    m.maximize = true;
    const int x = ivar(m, "x", 0, 3, 2.0);
    row(m, {{x, 1.0}}, Sense::LE, 2.0);
    const Solution s = solve_external(m, solver_template());
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(s.objective == doctest::Approx(4.0));
    CHECK(s.dual_bound >= s.objective - 1e-9);
  }

  SUBCASE("over-constrained model reports infeasible") {
    MilpModel m;
    const int x = ivar(m, "x", 0, 1, 1.0);
    row(m, {{x, 1.0}}, Sense::GE, 1.0);
    row(m, {{x, 1.0}}, Sense::LE, 0.0);
    CHECK(solve_external(m, solver_template()).status == SolveStatus::Infeasible);
  }

  SUBCASE("mixed integer model with continuous tail") {
    MilpModel m;
    const int x = ivar(m, "x", 0, 4, 3.0);
    const int y = cvar(m, "y", 0, 10, 1.0);
    row(m, {{x, 1.0}, {y, 1.0}}, Sense::GE, 5.5);
    BnbParams exact;
    exact.gap_target = 0.0;
    const Solution own = solve_bnb(m, exact);
    const Solution ext = solve_external(m, solver_template());
    REQUIRE(own.status == SolveStatus::Optimal);
    REQUIRE(ext.status == SolveStatus::Optimal);
    CHECK(ext.objective == doctest::Approx(own.objective).epsilon(1e-6));
  }
}
