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

#include "persuasion/closure_exact.h"

#include <cstddef>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "persuasion/lp.h"

namespace persuasion {

std::string_view MethodTag(const ClosureResult& result) {
  switch (result.method) {
    case ClosureMethod::kExact:
      return "exact";
    case ClosureMethod::kAnonymous:
      return "anonymous";
    case ClosureMethod::kSubmodularApprox:
      return result.empirical ? "submodular-approx-empirical"
                              : "submodular-approx";
  }
  return "unknown";
}

absl::StatusOr<SubsetDistribution> SolveRestrictedClosure(
    const SetFunction& v, const PersuasionProfile& profile,
    const std::vector<AgentSet>& support) {
  const int n = v.num_agents();
  if (profile.size() != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "profile has ", profile.size(), " entries for ", n, " agents"));
  }
  if (support.empty()) {
    return absl::InvalidArgumentError("support must be nonempty");
  }
  const int columns = static_cast<int>(support.size());
  LinearProgram lp;
  lp.objective.resize(columns);
  std::vector<std::vector<double>> marginal_rows(
      n, std::vector<double>(columns, 0.0));
  for (int c = 0; c < columns; ++c) {
    if (!IsCanonicalSet(support[c], n)) {
      return absl::InvalidArgumentError(
          absl::StrCat("support set ", c, " is not a canonical agent set"));
    }
    lp.objective[c] = v.Value(support[c]);
    for (int i : support[c]) marginal_rows[i][c] = 1.0;
  }
  for (int i = 0; i < n; ++i) {
    lp.AddConstraint(std::move(marginal_rows[i]), Relation::kLessEqual,
                     profile[i]);
  }
  lp.AddConstraint(std::vector<double>(columns, 1.0), Relation::kEqual, 1.0);

  absl::StatusOr<LpSolution> solution = BasicOptimalSolution(lp);
  if (!solution.ok()) return solution.status();
  if (solution->status == LpStatus::kInfeasible) {
    return absl::FailedPreconditionError(
        "no distribution on the given support meets the marginal bounds");
  }
  if (solution->status == LpStatus::kUnbounded) {
    return absl::InternalError("closure LP reported unbounded");
  }
  std::vector<WeightedSet> masses;
  for (int c = 0; c < columns; ++c) {
    if (solution->values[c] > 0.0) {
      masses.push_back({support[c], solution->values[c]});
    }
  }
  return SubsetDistribution::FromSolverMasses(n, std::move(masses));
}

absl::StatusOr<ClosureResult> ConcaveClosureExact(
    const SetFunction& v, const PersuasionProfile& profile, int agent_cap) {
  const int n = v.num_agents();
  if (n > agent_cap) {
    return absl::FailedPreconditionError(absl::StrCat(
        "exact closure enumerates 2^n subsets and is capped at n = ", agent_cap,
        " (got n = ", n, "); use the submodular approximation instead"));
  }
  std::vector<AgentSet> all;
  all.reserve(std::size_t{1} << n);
  for (SubsetMask s = 0; s < (SubsetMask{1} << n); ++s) {
    all.push_back(SetOfMask(s));
  }
  absl::StatusOr<SubsetDistribution> mu =
      SolveRestrictedClosure(v, profile, all);
  if (!mu.ok()) return mu.status();
  ClosureResult result;
  result.value = mu->Expectation(v);
  result.mu = *std::move(mu);
  result.method = ClosureMethod::kExact;
  result.guarantee = 1.0;
  return result;
}

}  // namespace persuasion
