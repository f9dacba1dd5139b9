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

#include "persuasion/core_model.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace persuasion {

absl::Status ValidateAgentUtility(const AgentUtility& agent) {
  for (double u : {agent.u00, agent.u01, agent.u10, agent.u11}) {
    if (!std::isfinite(u)) {
      return absl::InvalidArgumentError("agent utilities must be finite");
    }
  }
  if (!(agent.u00 > agent.u01)) {
    return absl::InvalidArgumentError(
        absl::StrCat("agent must strictly prefer rejecting in the low state "
                     "(u00 > u01), got u00=",
                     agent.u00, " u01=", agent.u01));
  }
  if (!(agent.u11 > agent.u10)) {
    return absl::InvalidArgumentError(
        absl::StrCat("agent must strictly prefer adopting in the high state "
                     "(u11 > u10), got u11=",
                     agent.u11, " u10=", agent.u10));
  }
  return absl::OkStatus();
}

namespace {

absl::Status ValidateGamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("gamma must lie in (0, 1), got ", gamma));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<PersuasionProfile> PersuasionProfile::Create(
    std::vector<double> levels) {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] >= 0.0 && levels[i] <= 1.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("persuasion level of agent ", i,
                       " must be in [0, 1], got ", levels[i]));
    }
  }
  return PersuasionProfile(std::move(levels));
}

absl::StatusOr<PersuasionInstance> PersuasionInstance::Create(
    double gamma, std::vector<AgentUtility> agents, SetFunction sender) {
  if (auto s = ValidateGamma(gamma); !s.ok()) return s;
  if (agents.empty()) {
    return absl::InvalidArgumentError("an instance needs at least one agent");
  }
  for (std::size_t i = 0; i < agents.size(); ++i) {
    if (auto s = ValidateAgentUtility(agents[i]); !s.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("agent ", i, ": ", s.message()));
    }
  }
  if (sender.num_agents() != static_cast<int>(agents.size())) {
    return absl::InvalidArgumentError(
        absl::StrCat("sender utility is defined over ", sender.num_agents(),
                     " agents but the instance has ", agents.size()));
  }
  // Anonymous profiles are checked nondecreasing on construction; additive
  // and coverage functions are monotone by form.
  if (sender.kind() == SetFunction::Kind::kExplicit &&
      sender.num_agents() <= kMaxExhaustiveCheckAgents) {
    absl::StatusOr<bool> monotone = IsMonotone(sender);
    if (!monotone.ok()) return monotone.status();
    if (!*monotone) {
      return absl::InvalidArgumentError(
          "sender utility must be monotone nondecreasing");
    }
  }
  return PersuasionInstance(gamma, std::move(agents), std::move(sender));
}

absl::StatusOr<SubsetDistribution> SubsetDistribution::Create(
    int n, std::vector<WeightedSet> support) {
  if (n < 0) return absl::InvalidArgumentError("negative agent count");
  double total = 0.0;
  for (std::size_t k = 0; k < support.size(); ++k) {
    if (!IsCanonicalSet(support[k].set, n)) {
      return absl::InvalidArgumentError(
          absl::StrCat("support entry ", k,
                       " is not a sorted, distinct subset of [0, ", n, ")"));
    }
    if (!std::isfinite(support[k].prob) || support[k].prob < 0.0) {
      return absl::InvalidArgumentError(absl::StrCat(
          "support entry ", k, " has invalid mass ", support[k].prob));
    }
    total += support[k].prob;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    return absl::InvalidArgumentError(
        absl::StrCat("masses sum to ", total, ", not 1"));
  }
  std::sort(
      support.begin(), support.end(),
      [](const WeightedSet& a, const WeightedSet& b) { return a.set < b.set; });
  for (std::size_t k = 1; k < support.size(); ++k) {
    if (support[k].set == support[k - 1].set) {
      return absl::InvalidArgumentError("support lists a set twice");
    }
  }
  return SubsetDistribution(n, std::move(support));
}

absl::StatusOr<SubsetDistribution> SubsetDistribution::FromSolverMasses(
    int n, std::vector<WeightedSet> support) {
  std::map<AgentSet, double> merged;
  double total = 0.0;
  for (WeightedSet& entry : support) {
    if (!IsCanonicalSet(entry.set, n)) {
      return absl::InternalError("solver produced a malformed agent set");
    }
    const double mass = std::max(entry.prob, 0.0);
    if (mass == 0.0) continue;
    merged[std::move(entry.set)] += mass;
    total += mass;
  }
  if (std::abs(total - 1.0) > 1e-8) {
    return absl::InternalError(
        absl::StrCat("solver masses sum to ", total, "; cannot renormalize"));
  }
  std::vector<WeightedSet> out;
  out.reserve(merged.size());
  for (auto& [set, mass] : merged) {
    out.push_back({set, std::min(mass / total, 1.0)});
  }
  return SubsetDistribution(n, std::move(out));
}

SubsetDistribution SubsetDistribution::PointMass(int n, AgentSet set) {
  return SubsetDistribution(n, {WeightedSet{std::move(set), 1.0}});
}

std::vector<double> SubsetDistribution::Marginals() const {
  std::vector<double> marginals(n_, 0.0);
  for (const WeightedSet& entry : support_) {
    for (int i : entry.set) marginals[i] += entry.prob;
  }
  return marginals;
}

double SubsetDistribution::Expectation(const SetFunction& v) const {
  double total = 0.0;
  for (const WeightedSet& entry : support_) {
    total += entry.prob * v.Value(entry.set);
  }
  return total;
}

absl::StatusOr<double> PersuasionLevel(const AgentUtility& agent,
                                       double gamma) {
  if (auto s = ValidateGamma(gamma); !s.ok()) return s;
  if (auto s = ValidateAgentUtility(agent); !s.ok()) return s;
  const double ratio =
      gamma / (1.0 - gamma) * (agent.u11 - agent.u10) / (agent.u00 - agent.u01);
  return std::clamp(ratio, 0.0, 1.0);
}

PersuasionProfile ProfileOf(const PersuasionInstance& instance) {
  std::vector<double> levels;
  levels.reserve(instance.n());
  for (const AgentUtility& agent : instance.agents()) {
    // The instance was validated on construction.
    levels.push_back(*PersuasionLevel(agent, instance.gamma()));
  }
  return *PersuasionProfile::Create(std::move(levels));
}

namespace {

absl::Status CheckDimensions(const SignalingPolicy& policy,
                             const PersuasionInstance& instance) {
  if (policy.n() != instance.n()) {
    return absl::InvalidArgumentError(
        absl::StrCat("policy is over ", policy.n(),
                     " agents but the instance has ", instance.n()));
  }
  return absl::OkStatus();
}

AgentSet FullSet(int n) {
  AgentSet all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  return all;
}

double PosteriorOfAdopt(double gamma, double marginal) {
  return gamma / (gamma + (1.0 - gamma) * marginal);
}

bool SignalZeroReachable(double marginal) { return 1.0 - marginal > 1e-12; }

}  // namespace

absl::StatusOr<double> Revenue(const SignalingPolicy& policy,
                               const PersuasionInstance& instance) {
  if (auto s = CheckDimensions(policy, instance); !s.ok()) return s;
  const double gamma = instance.gamma();
  return gamma * instance.sender().Value(FullSet(instance.n())) +
         (1.0 - gamma) * policy.f0().Expectation(instance.sender());
}

absl::StatusOr<double> Posterior(const SignalingPolicy& policy,
                                 const PersuasionInstance& instance, int agent,
                                 int signal) {
  if (auto s = CheckDimensions(policy, instance); !s.ok()) return s;
  if (agent < 0 || agent >= instance.n()) {
    return absl::OutOfRangeError(absl::StrCat("no agent ", agent));
  }
  if (signal != 0 && signal != 1) {
    return absl::InvalidArgumentError("signal must be 0 or 1");
  }
  const double marginal = policy.f0().Marginals()[agent];
  if (signal == 1) return PosteriorOfAdopt(instance.gamma(), marginal);
  if (!SignalZeroReachable(marginal)) {
    return absl::FailedPreconditionError(absl::StrCat(
        "unreachable signal: agent ", agent, " never receives signal 0"));
  }
  // F₁ never recommends rejection, so signal 0 reveals ω₀.
  return 0.0;
}

int BestReply(const AgentUtility& agent, double posterior) {
  const double adopt = posterior * agent.u11 + (1.0 - posterior) * agent.u01;
  const double reject = posterior * agent.u10 + (1.0 - posterior) * agent.u00;
  return adopt - reject >= -kIndifferenceTolerance ? 1 : 0;
}

IcReport VerifyIncentiveCompatibility(const SignalingPolicy& policy,
                                      const PersuasionInstance& instance) {
  IcReport report;
  if (auto s = CheckDimensions(policy, instance); !s.ok()) {
    report.ok = false;
    report.violations.push_back({-1, std::string(s.message())});
    return report;
  }
  const PersuasionProfile profile = ProfileOf(instance);
  report.marginals = policy.f0().Marginals();
  for (int i = 0; i < instance.n(); ++i) {
    const double marginal = report.marginals[i];
    if (marginal > profile[i] + kMarginalTolerance) {
      report.violations.push_back(
          {i, absl::StrCat("marginal ", marginal, " exceeds persuasion level ",
                           profile[i])});
    }
    const AgentUtility& agent = instance.agents()[i];
    const double p1 = PosteriorOfAdopt(instance.gamma(), marginal);
    if (BestReply(agent, p1) != 1) {
      report.violations.push_back(
          {i,
           absl::StrCat("rejects the adopt recommendation at posterior ", p1)});
    }
    if (SignalZeroReachable(marginal) && BestReply(agent, 0.0) != 0) {
      report.violations.push_back(
          {i, "adopts despite the reject recommendation"});
    }
  }
  report.ok = report.violations.empty();
  return report;
}

absl::StatusOr<SignalingPolicy> PolicyFromDistribution(
    const SubsetDistribution& mu, const PersuasionInstance& instance) {
  if (mu.n() != instance.n()) {
    return absl::InvalidArgumentError(
        absl::StrCat("distribution is over ", mu.n(),
                     " agents but the instance has ", instance.n()));
  }
  constexpr double kRepairableExcess = 1e-8;
  const PersuasionProfile profile = ProfileOf(instance);
  std::vector<double> marginals = mu.Marginals();
  for (int i = 0; i < instance.n(); ++i) {
    if (marginals[i] > profile[i] + kRepairableExcess) {
      return absl::FailedPreconditionError(
          absl::StrCat("agent ", i, ": marginal ", marginals[i],
                       " exceeds persuasion level ", profile[i]));
    }
  }

  std::vector<WeightedSet> support = mu.support();
  bool repaired = false;
  for (int i = 0; i < instance.n(); ++i) {
    const double excess = marginals[i] - profile[i];
    if (excess <= 0.0) continue;
    repaired = true;
    const double fraction = excess / marginals[i];
    std::vector<WeightedSet> moved;
    for (WeightedSet& entry : support) {
      if (!std::binary_search(entry.set.begin(), entry.set.end(), i)) {
        continue;
      }
      const double shift = entry.prob * fraction;
      entry.prob -= shift;
      AgentSet without;
      for (int j : entry.set) {
        if (j != i) without.push_back(j);
      }
      moved.push_back({std::move(without), shift});
    }
    support.insert(support.end(), moved.begin(), moved.end());
    double marginal = 0.0;
    for (const WeightedSet& entry : support) {
      if (std::binary_search(entry.set.begin(), entry.set.end(), i)) {
        marginal += entry.prob;
      }
    }
    marginals[i] = marginal;
  }
  if (!repaired) return SignalingPolicy(mu);
  absl::StatusOr<SubsetDistribution> fixed =
      SubsetDistribution::FromSolverMasses(instance.n(), std::move(support));
  if (!fixed.ok()) return fixed.status();
  return SignalingPolicy(*std::move(fixed));
}

absl::StatusOr<PersuasionInstance> GadgetFromClosure(
    const SetFunction& v, const PersuasionProfile& profile, double gamma) {
  if (auto s = ValidateGamma(gamma); !s.ok()) return s;
  if (profile.size() != v.num_agents()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "profile has ", profile.size(), " entries but the set function has ",
        v.num_agents(), " agents"));
  }
  std::vector<AgentUtility> agents;
  agents.reserve(profile.size());
  for (int i = 0; i < profile.size(); ++i) {
    if (!(profile[i] > 0.0)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "agent ", i,
          " has persuasion level 0, which needs u11 = u10; drop the agent "
          "or perturb its level to a small positive value"));
    }
    agents.push_back(AgentUtility{.u00 = 1.0,
                                  .u01 = 0.0,
                                  .u10 = 0.0,
                                  .u11 = profile[i] * (1.0 - gamma) / gamma});
  }
  return PersuasionInstance::Create(gamma, std::move(agents), v);
}

}  // namespace persuasion
