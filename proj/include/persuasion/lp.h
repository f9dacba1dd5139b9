// Copyright 2026 The Authors.
//
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

#ifndef PERSUASION_LP_H_
#define PERSUASION_LP_H_

#include <vector>

#include "absl/status/statusor.h"

namespace persuasion {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct LinearConstraint {
  std::vector<double> coefficients;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

// maximize objective·x subject to the constraints and x >= lower_bounds.
// An empty lower_bounds vector means every variable is nonnegative.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<LinearConstraint> constraints;
  std::vector<double> lower_bounds;

  int num_variables() const { return static_cast<int>(objective.size()); }
  int num_constraints() const { return static_cast<int>(constraints.size()); }

  void AddConstraint(std::vector<double> coefficients, Relation relation,
                     double rhs) {
    constraints.push_back({std::move(coefficients), relation, rhs});
  }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  // Filled only when status == kOptimal.
  std::vector<double> values;
  double objective = 0.0;
};

// Feasibility tolerance used to validate optimal solutions by substitution.
inline constexpr double kLpFeasibilityTolerance = 1e-8;

// Dense two-phase primal simplex with Bland's rule. The returned optimum is
// always a basic solution. An error status means malformed input
// (InvalidArgument) or numerical breakdown (Internal); infeasibility and
// unboundedness are reported through LpSolution::status.
absl::StatusOr<LpSolution> SolveLp(const LinearProgram& lp);

// Like SolveLp, but additionally guarantees (and checks) that an optimal
// solution has at most num_constraints() variables away from their lower
// bound.
absl::StatusOr<LpSolution> BasicOptimalSolution(const LinearProgram& lp);

}  // namespace persuasion

#endif  // PERSUASION_LP_H_
