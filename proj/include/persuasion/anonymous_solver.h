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

#ifndef PERSUASION_ANONYMOUS_SOLVER_H_
#define PERSUASION_ANONYMOUS_SOLVER_H_

#include <cstddef>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "persuasion/closure_exact.h"
#include "persuasion/core_model.h"
#include "persuasion/random.h"
#include "persuasion/set_function.h"

namespace persuasion {

// Largest total mass a measure over k-subsets can carry when agent i's
// marginal is capped by a_i:
//   β_k(a) = min over 0 <= m < k of (a_{m+1} + ... + a_n) / (k − m).
// `sorted_levels` must be nonincreasing; 1 <= k <= n. The result bounds raw
// mass and may exceed 1.
absl::StatusOr<double> BetaK(std::span<const double> sorted_levels, int k);

// Optimum of the polynomial-size LP over per-cardinality masses. Agents are
// relabeled so that levels are nonincreasing ("solver order").
struct PolyLpSolution {
  int n = 0;
  // alpha[k] is the mass on k-subsets, k = 0..n; alpha[0] sits on ∅.
  std::vector<double> alpha;
  // budget[k][p] is the marginal budget that solver-order agent p spends on
  // k-subsets, k = 1..n (budget[0] is unused and empty).
  std::vector<std::vector<double>> budget;
  // sigma[p] is the original index of the agent at solver position p.
  std::vector<int> sigma;
  // Persuasion levels in solver order.
  std::vector<double> sorted_levels;
  double objective = 0.0;
};

// `by_cardinality` is f(0..n), nondecreasing and nonnegative. The β_k bound
// enters as its k linear pieces, which is exact once the per-cardinality
// budgets are constrained to be nonincreasing in solver order.
absl::StatusOr<PolyLpSolution> SolvePolyLp(
    const std::vector<double>& by_cardinality,
    const PersuasionProfile& profile);

// Mass `mass` spread uniformly over the k-subsets S of solver positions with
// {0..j-1} ⊆ S ⊆ {0..l-1}. Holds 0 <= j < k <= l <= n.
struct Stage {
  int k = 0;
  int j = 0;
  int l = 0;
  double mass = 0.0;
};

struct StagedMeasure {
  int n = 0;
  std::vector<Stage> stages;
  double empty_mass = 0.0;
  std::vector<int> sigma;
};

// Realizes the per-cardinality masses of `solution` as a staged measure,
// processing k = n down to 1 against the remaining marginal budget. Each
// stage runs until the step's mass is placed or two budget coordinates
// meet. Fails with Internal if a step cannot place its mass.
absl::StatusOr<StagedMeasure> ConstructStagedMeasure(
    const PolyLpSolution& solution);

// marginals[k][p]: marginal of solver position p induced by stages of
// cardinality k (row 0 is all zero).
std::vector<std::vector<double>> PerCardinalityMarginals(
    const StagedMeasure& measure);

// Total mass placed on k-subsets, k = 0..n.
std::vector<double> PerCardinalityMass(const StagedMeasure& measure);

inline constexpr std::size_t kMaxExpandedSupport = 1'000'000;

// Enumerates every set of every stage, in original agent indices.
// ResourceExhausted when the support would exceed kMaxExpandedSupport.
absl::StatusOr<SubsetDistribution> ExpandStagedMeasure(
    const StagedMeasure& measure);

// Draws one set: a stage proportional to its mass, then a uniform
// (k − j)-subset of the window joined with the forced prefix.
AgentSet SampleStagedMeasure(const StagedMeasure& measure, Rng& rng);

struct AnonymousClosureResult {
  ClosureResult closure;
  PolyLpSolution poly;
  StagedMeasure staged;
};

// Exact concave closure of an anonymous set function. FailedPrecondition if
// `v` is not anonymous.
absl::StatusOr<AnonymousClosureResult> AnonymousConcaveClosure(
    const SetFunction& v, const PersuasionProfile& profile);

struct AnonymousSolution {
  AnonymousClosureResult closure;
  SignalingPolicy policy;
  double revenue = 0.0;
};

// Optimal policy for an instance with an anonymous sender utility.
absl::StatusOr<AnonymousSolution> SolveAnonymous(
    const PersuasionInstance& instance);

}  // namespace persuasion

#endif  // PERSUASION_ANONYMOUS_SOLVER_H_
