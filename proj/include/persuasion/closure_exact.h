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

#ifndef PERSUASION_CLOSURE_EXACT_H_
#define PERSUASION_CLOSURE_EXACT_H_

#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "persuasion/core_model.h"
#include "persuasion/set_function.h"

namespace persuasion {

enum class ClosureMethod { kExact, kAnonymous, kSubmodularApprox };

// Value of the concave closure V⁺(a) = max Σ μ_S V(S) over distributions μ
// with marginals at most a, together with a distribution attaining it.
struct ClosureResult {
  double value = 0.0;
  SubsetDistribution mu = SubsetDistribution::PointMass(0, {});
  ClosureMethod method = ClosureMethod::kExact;
  // Proven lower bound on value / V⁺(a).
  double guarantee = 1.0;
  // Set when the bound in `guarantee` is not backed by the analysis for the
  // parameters actually used (coarse discretization grids).
  bool empirical = false;
};

// "exact", "anonymous", "submodular-approx" or "submodular-approx-empirical".
std::string_view MethodTag(const ClosureResult& result);

inline constexpr int kDefaultExactAgentCap = 16;

// Maximizes Σ μ_S V(S) over distributions supported on `support` with
// marginals at most `profile`. Returns a vertex optimum (at most n+1 sets
// with positive mass). FailedPrecondition if no feasible distribution exists
// on the given support.
absl::StatusOr<SubsetDistribution> SolveRestrictedClosure(
    const SetFunction& v, const PersuasionProfile& profile,
    const std::vector<AgentSet>& support);

// Exact V⁺(a) through the LP with one column per subset of [n]. Refuses
// (FailedPrecondition) when n exceeds `agent_cap`.
absl::StatusOr<ClosureResult> ConcaveClosureExact(
    const SetFunction& v, const PersuasionProfile& profile,
    int agent_cap = kDefaultExactAgentCap);

}  // namespace persuasion

#endif  // PERSUASION_CLOSURE_EXACT_H_
