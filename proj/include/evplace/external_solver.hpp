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

#ifndef EVPLACE_EXTERNAL_SOLVER_H_
#define EVPLACE_EXTERNAL_SOLVER_H_

#include <stdexcept>
#include <string>

#include "evplace/milp.hpp"

namespace evplace {

// Process failure, unparseable output, or a returned point that fails
// verification against the model.
class ExternalSolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exports the model as MPS, runs the shell command obtained by substituting
// {mps} and {sol} in command_template, and parses the solution file. Two
// formats are accepted:
//   - JSON: either {"status": ..., "objective": ..., "dual_bound": ...,
//     "variables": {name: value}} or a flat {name: value} object;
//   - plain text: one "name value" pair per line, '#' or '=' lines skipped.
// Names may be the MPS short names or the original model names. The
// objective is always recomputed from the assignment; a claimed-feasible
// point that fails verification raises instead of being accepted.
// work_dir keeps the exported and parsed files when nonempty, otherwise a
// temporary directory is used and removed.
Solution solve_external(const MilpModel& model,
                        const std::string& command_template,
                        const std::string& work_dir = "");

}  // namespace evplace

#endif  // EVPLACE_EXTERNAL_SOLVER_H_
