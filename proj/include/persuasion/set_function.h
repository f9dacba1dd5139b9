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

#ifndef PERSUASION_SET_FUNCTION_H_
#define PERSUASION_SET_FUNCTION_H_

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"

namespace persuasion {

// A set of agents, as 0-based indices sorted ascending without repeats.
using AgentSet = std::vector<int>;

// Dense encoding used wherever all 2^n subsets are enumerated. Bit i set
// means agent i is in the set.
using SubsetMask = std::uint64_t;

SubsetMask MaskOf(const AgentSet& set);
AgentSet SetOfMask(SubsetMask mask);

// Returns true if `set` is sorted, duplicate-free and within [0, n).
bool IsCanonicalSet(const AgentSet& set, int n);

// The sender's utility V over sets of adopting agents. Four
// representations are supported; each validates its payload on
// construction so that a constructed SetFunction is always nonnegative and
// evaluable on every subset of its agents.
class SetFunction {
 public:
  enum class Kind { kExplicit, kAnonymous, kAdditive, kCoverage };

  static constexpr int kMaxExplicitAgents = 24;

  // `values[mask]` is V of the set encoded by `mask`; size must be 2^n.
  static absl::StatusOr<SetFunction> Explicit(int n,
                                              std::vector<double> values);
  // V(S) = by_cardinality[|S|]; n = by_cardinality.size() - 1. The profile
  // must be nondecreasing.
  static absl::StatusOr<SetFunction> Anonymous(
      std::vector<double> by_cardinality);
  // V(S) = sum of weights[i] for i in S.
  static absl::StatusOr<SetFunction> Additive(std::vector<double> weights);
  // V(S) = total weight of elements covered by the union of covers[i], i in S.
  static absl::StatusOr<SetFunction> Coverage(
      std::vector<double> element_weights,
      std::vector<std::vector<int>> covers);

  Kind kind() const;
  int num_agents() const { return num_agents_; }

  // Requires IsCanonicalSet(set, num_agents()).
  double Value(const AgentSet& set) const;
  // Range-checked variant of Value().
  absl::StatusOr<double> CheckedValue(const AgentSet& set) const;
  // Requires num_agents() <= 64.
  double ValueOfMask(SubsetMask mask) const;

  // Payload accessors; valid only for the matching kind.
  const std::vector<double>& explicit_values() const;
  const std::vector<double>& cardinality_profile() const;
  const std::vector<double>& additive_weights() const;
  const std::vector<double>& element_weights() const;
  const std::vector<std::vector<int>>& covers() const;

 private:
  struct ExplicitTable {
    std::vector<double> values;
  };
  struct AnonymousProfile {
    std::vector<double> by_cardinality;
  };
  struct AdditiveWeights {
    std::vector<double> weights;
  };
  struct CoverageSystem {
    std::vector<double> element_weights;
    std::vector<std::vector<int>> covers;
    // covers as bitsets over elements, one word vector per agent.
    std::vector<std::vector<std::uint64_t>> cover_bits;
  };
  using Payload = std::variant<ExplicitTable, AnonymousProfile, AdditiveWeights,
                               CoverageSystem>;

  SetFunction(int num_agents, Payload payload)
      : num_agents_(num_agents), payload_(std::move(payload)) {}

  double CoverageValue(const CoverageSystem& c,
                       const std::vector<int>& agents) const;

  int num_agents_;
  Payload payload_;
};

// Exhaustive structural checks. They refuse (FailedPrecondition) above this
// many agents.
inline constexpr int kMaxExhaustiveCheckAgents = 20;

absl::StatusOr<bool> IsMonotone(const SetFunction& v);
// Diminishing returns: V(S+i) - V(S) >= V(T+i) - V(T) for S ⊆ T, i ∉ T.
absl::StatusOr<bool> IsSubmodular(const SetFunction& v);

// If every pair of equal-size subsets has the same value (within 1e-12),
// returns the cardinality profile f(0..n).
std::optional<std::vector<double>> IsAnonymous(const SetFunction& v);

}  // namespace persuasion

#endif  // PERSUASION_SET_FUNCTION_H_
