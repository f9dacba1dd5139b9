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

#ifndef PERSUASION_CORE_MODEL_H_
#define PERSUASION_CORE_MODEL_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "persuasion/set_function.h"

namespace persuasion {

// The two states of nature: kLow is ω₀ (the product is bad), kHigh is ω₁.
enum class StateOfNature { kLow = 0, kHigh = 1 };

// Payoff u_xy of an agent taking action y in state ω_x. Normalized so that
// the agent prefers rejecting in ω₀ (u00 > u01) and adopting in ω₁
// (u11 > u10).
struct AgentUtility {
  double u00 = 1.0;
  double u01 = 0.0;
  double u10 = 0.0;
  double u11 = 1.0;
};

absl::Status ValidateAgentUtility(const AgentUtility& agent);

// Best-reply indifference slack on the utility-difference scale.
inline constexpr double kIndifferenceTolerance = 1e-9;
// Slack on marginal feasibility, Σ μ_S 1[i ∈ S] ≤ a_i + tolerance.
inline constexpr double kMarginalTolerance = 1e-9;
// Slack on total probability mass of a SubsetDistribution.
inline constexpr double kMassTolerance = 1e-9;

// Per-agent persuasion levels a_i ∈ [0, 1]: the largest probability with
// which agent i can be told to adopt in ω₀ while still obeying.
class PersuasionProfile {
 public:
  static absl::StatusOr<PersuasionProfile> Create(std::vector<double> levels);

  int size() const { return static_cast<int>(levels_.size()); }
  double operator[](int i) const { return levels_[i]; }
  const std::vector<double>& levels() const { return levels_; }

 private:
  explicit PersuasionProfile(std::vector<double> levels)
      : levels_(std::move(levels)) {}
  std::vector<double> levels_;
};

class PersuasionInstance {
 public:
  // Validates 0 < gamma < 1, every agent's sign pattern, that the sender
  // covers exactly the listed agents, and (for explicit tables) that the
  // sender utility is monotone.
  static absl::StatusOr<PersuasionInstance> Create(
      double gamma, std::vector<AgentUtility> agents, SetFunction sender);

  int n() const { return static_cast<int>(agents_.size()); }
  double gamma() const { return gamma_; }
  const std::vector<AgentUtility>& agents() const { return agents_; }
  const SetFunction& sender() const { return sender_; }

 private:
  PersuasionInstance(double gamma, std::vector<AgentUtility> agents,
                     SetFunction sender)
      : gamma_(gamma), agents_(std::move(agents)), sender_(std::move(sender)) {}

  double gamma_;
  std::vector<AgentUtility> agents_;
  SetFunction sender_;
};

struct WeightedSet {
  AgentSet set;
  double prob = 0.0;

  friend bool operator==(const WeightedSet&, const WeightedSet&) = default;
};

// A probability measure over subsets of n agents, stored as a sparse
// support list sorted lexicographically by set.
class SubsetDistribution {
 public:
  // Strict: masses must be nonnegative and sum to 1 within kMassTolerance,
  // sets must be canonical and distinct.
  static absl::StatusOr<SubsetDistribution> Create(
      int n, std::vector<WeightedSet> support);

  // For solver output: clips negative masses to zero, merges duplicate
  // sets, drops empty masses and renormalizes when the total is within 1e-8
  // of one. Larger deviations are an internal error.
  static absl::StatusOr<SubsetDistribution> FromSolverMasses(
      int n, std::vector<WeightedSet> support);

  static SubsetDistribution PointMass(int n, AgentSet set);

  int n() const { return n_; }
  const std::vector<WeightedSet>& support() const { return support_; }

  // marginal(i) = Σ_{S ∋ i} μ_S.
  std::vector<double> Marginals() const;
  // Σ_S μ_S V(S).
  double Expectation(const SetFunction& v) const;

 private:
  SubsetDistribution(int n, std::vector<WeightedSet> support)
      : n_(n), support_(std::move(support)) {}

  int n_;
  std::vector<WeightedSet> support_;
};

// A straightforward private signaling policy. In ω₁ every agent is told to
// adopt (F₁ is the point mass on the full set); in ω₀ the set of agents told
// to adopt is drawn from f0.
class SignalingPolicy {
 public:
  explicit SignalingPolicy(SubsetDistribution f0) : f0_(std::move(f0)) {}

  int n() const { return f0_.n(); }
  const SubsetDistribution& f0() const { return f0_; }

 private:
  SubsetDistribution f0_;
};

absl::StatusOr<double> PersuasionLevel(const AgentUtility& agent, double gamma);

PersuasionProfile ProfileOf(const PersuasionInstance& instance);

// γ·V([n]) + (1−γ)·E_{F₀} V.
absl::StatusOr<double> Revenue(const SignalingPolicy& policy,
                               const PersuasionInstance& instance);

// Agent i's posterior probability of ω₁ after seeing `signal`. Fails with
// FailedPrecondition when the signal has probability zero.
absl::StatusOr<double> Posterior(const SignalingPolicy& policy,
                                 const PersuasionInstance& instance, int agent,
                                 int signal);

// 1 (adopt) iff p·u11 + (1−p)·u01 ≥ p·u10 + (1−p)·u00, with a deficit of at
// most kIndifferenceTolerance counted as indifference.
int BestReply(const AgentUtility& agent, double posterior);

struct IcViolation {
  int agent = 0;
  std::string reason;
};

struct IcReport {
  bool ok = true;
  std::vector<double> marginals;
  std::vector<IcViolation> violations;
};

// Checks marginal feasibility against the instance's profile and that every
// reachable recommendation is a best reply. Collects all violations.
IcReport VerifyIncentiveCompatibility(const SignalingPolicy& policy,
                                      const PersuasionInstance& instance);

// Wraps mu as F₀. Marginal excesses up to 1e-8 (solver round-off) are
// repaired by moving the excess mass of agent i from S to S∖{i}; larger
// excesses are rejected naming the agent.
absl::StatusOr<SignalingPolicy> PolicyFromDistribution(
    const SubsetDistribution& mu, const PersuasionInstance& instance);

inline constexpr double kDefaultGadgetGamma = 1e-3;

// Builds an instance whose persuasion profile is `profile` and whose sender
// utility is `v`: u00 = 1, u01 = u10 = 0, u11 = a_i(1−γ)/γ. Every a_i must
// be positive.
absl::StatusOr<PersuasionInstance> GadgetFromClosure(
    const SetFunction& v, const PersuasionProfile& profile,
    double gamma = kDefaultGadgetGamma);

}  // namespace persuasion

#endif  // PERSUASION_CORE_MODEL_H_
