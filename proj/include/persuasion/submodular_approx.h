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

#ifndef PERSUASION_SUBMODULAR_APPROX_H_
#define PERSUASION_SUBMODULAR_APPROX_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "persuasion/closure_exact.h"
#include "persuasion/core_model.h"
#include "persuasion/set_function.h"

namespace persuasion {

// Agents with a_i >= 1/n² are "high"; the rest are "low". Both lists are
// ascending original indices.
struct SplitResult {
  std::vector<int> high;
  std::vector<int> low;

  int m() const { return static_cast<int>(high.size()); }
};

SplitResult SplitHighLow(const PersuasionProfile& profile);

// Grid used to discretize probabilities on the high agents: k copies of
// every high agent, and capacity k_i = floor(a_i k) copies for high agent i.
struct DiscretizationParams {
  double delta = 1.0;
  int copies = 1;
  // Indexed by position in SplitResult::high.
  std::vector<int> capacities;
};

// 1 / (n⁴(n+1)): the grid the approximation analysis is stated for.
double AnalysisGridDelta(int n);
// 1 / (n²(n+1)): a coarser grid that keeps the ground set small.
double CoarseGridDelta(int n);
// AnalysisGridDelta for n <= 6, CoarseGridDelta beyond.
double DefaultGridDelta(int n);

absl::StatusOr<DiscretizationParams> MakeDiscretization(
    const PersuasionProfile& profile, const SplitResult& split, double delta);

// Element (i, j) of the ground set U = [m] × [k]: copy j of high agent i
// (i is a position in SplitResult::high).
struct GroundElement {
  int agent = 0;
  int copy = 0;

  friend auto operator<=>(const GroundElement&, const GroundElement&) = default;
};

// Blocks B_i = {(i, 0), ..., (i, k−1)} with cardinality caps k_i.
class PartitionMatroid {
 public:
  PartitionMatroid(int copies, std::vector<int> capacities)
      : copies_(copies), capacities_(std::move(capacities)) {}

  int num_blocks() const { return static_cast<int>(capacities_.size()); }
  int copies() const { return copies_; }
  int capacity(int block) const { return capacities_[block]; }

  bool IsIndependent(std::span<const GroundElement> elements) const;

 private:
  int copies_;
  std::vector<int> capacities_;
};

// V restricted to a list of agents, addressed by bitmask over positions in
// that list. Values are tabulated up front when there are at most
// kTabulatedAgents agents.
class RestrictedValueOracle {
 public:
  static constexpr int kTabulatedAgents = 20;
  static constexpr int kMaxAgents = 64;

  static absl::StatusOr<RestrictedValueOracle> Create(const SetFunction& v,
                                                      std::vector<int> agents);

  int size() const { return static_cast<int>(agents_.size()); }
  double operator()(SubsetMask positions) const;
  AgentSet ToAgentSet(SubsetMask positions) const;

 private:
  RestrictedValueOracle(const SetFunction& v, std::vector<int> agents);

  const SetFunction* v_;
  std::vector<int> agents_;
  std::vector<double> table_;
};

// F(R) = (1/k) Σ_j V(R^j), where R^j holds the agents whose copy j is in R.
double ObjectiveF(const RestrictedValueOracle& oracle,
                  std::span<const GroundElement> assignment, int copies);

enum class MatroidAlgorithm { kGreedy, kContinuousGreedy };

struct ContinuousGreedyOptions {
  int steps = 100;
  int samples = 500;
};

// Maximizes F over independent sets of `matroid`.
//  - kGreedy: lazy greedy on marginal gains, stopping when no feasible
//    element has positive gain. Ratio >= 1/2.
//  - kContinuousGreedy: continuous greedy on the multilinear extension with
//    sampled gradients, then swap rounding. Ratio >= 1 − 1/e − o(1) in
//    expectation.
// Gradient samples draw from Rng({seed, step, sample}); rounding of block i
// draws from Rng({seed, kRoundingStream, i}).
absl::StatusOr<std::vector<GroundElement>> MatroidSubmodularMax(
    const RestrictedValueOracle& oracle, const PartitionMatroid& matroid,
    MatroidAlgorithm algorithm, const ContinuousGreedyOptions& options,
    std::uint64_t seed);

// Optimal distribution over `support` under the marginal bounds; a vertex
// solution with at most n+1 sets. `support` must contain ∅.
absl::StatusOr<SubsetDistribution> SupportLp(
    const SetFunction& v, const std::vector<AgentSet>& support,
    const PersuasionProfile& profile);

// Scales a distribution over high agents by (1 − 1/n), puts mass a_i on
// every low singleton and the rest on ∅. Identity when there are no low
// agents.
absl::StatusOr<SubsetDistribution> LiftToFull(const SubsetDistribution& nu,
                                              const SplitResult& split,
                                              const PersuasionProfile& profile);

struct SubmodularConfig {
  MatroidAlgorithm algorithm = MatroidAlgorithm::kGreedy;
  // Grid size; DefaultGridDelta(n) when unset.
  std::optional<double> delta;
  ContinuousGreedyOptions continuous_greedy;
  std::uint64_t seed = 0;
  // Multiplicative allowance folded into the reported guarantee.
  double slack = 0.01;
};

// The closure value together with every intermediate product of the
// pipeline.
struct SubmodularClosureResult {
  ClosureResult closure;
  SplitResult split;
  DiscretizationParams grid;
  std::vector<GroundElement> assignment;
  double assignment_value = 0.0;  // F(assignment)
  std::vector<AgentSet> candidates;
  SubsetDistribution high_distribution = SubsetDistribution::PointMass(0, {});
  SubsetDistribution lifted = SubsetDistribution::PointMass(0, {});
};

// Approximate V⁺(a) for monotone submodular V. For n <= 12, explicit and
// anonymous utilities are checked to be monotone submodular first.
absl::StatusOr<SubmodularClosureResult> ApproximateClosure(
    const SetFunction& v, const PersuasionProfile& profile,
    const SubmodularConfig& config);

struct SubmodularSolution {
  SubmodularClosureResult closure;
  SignalingPolicy policy;
  double revenue = 0.0;
};

absl::StatusOr<SubmodularSolution> SolveSubmodular(
    const PersuasionInstance& instance, const SubmodularConfig& config);

}  // namespace persuasion

#endif  // PERSUASION_SUBMODULAR_APPROX_H_
