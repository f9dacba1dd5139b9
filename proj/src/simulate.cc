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

#include "persuasion/simulate.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "persuasion/random.h"

namespace persuasion {

absl::StatusOr<SimulationReport> RunSimulation(
    const SignalingPolicy& policy, const PersuasionInstance& instance,
    std::int64_t trials, std::uint64_t seed) {
  if (trials < 1) {
    return absl::InvalidArgumentError("trials must be at least 1");
  }
  const IcReport ic = VerifyIncentiveCompatibility(policy, instance);
  if (!ic.ok) {
    return absl::FailedPreconditionError(absl::StrCat(
        "refusing to simulate a policy that is not incentive compatible (",
        ic.violations.size(), " violations, first at agent ",
        ic.violations.front().agent, ")"));
  }
  const int n = instance.n();

  // Best replies depend only on (agent, signal); tabulate them.
  std::vector<int> reply_to_adopt(n);
  std::vector<int> reply_to_reject(n);
  for (int i = 0; i < n; ++i) {
    const AgentUtility& agent = instance.agents()[i];
    absl::StatusOr<double> p1 = Posterior(policy, instance, i, 1);
    if (!p1.ok()) return p1.status();
    reply_to_adopt[i] = BestReply(agent, *p1);
    absl::StatusOr<double> p0 = Posterior(policy, instance, i, 0);
    // An unreachable signal is never drawn, so its reply is irrelevant.
    reply_to_reject[i] = p0.ok() ? BestReply(agent, *p0) : 0;
  }

  std::vector<double> cumulative;
  for (const WeightedSet& entry : policy.f0().support()) {
    cumulative.push_back((cumulative.empty() ? 0.0 : cumulative.back()) +
                         entry.prob);
  }
  SimulationReport report;
  report.trials = trials;
  report.state_count.assign(2, 0);
  std::vector<std::vector<std::int64_t>> adopted(
      2, std::vector<std::int64_t>(n, 0));
  // Welford running moments.
  double mean = 0.0;
  double m2 = 0.0;
  std::vector<char> recommended(n);
  AgentSet adopters;
  for (std::int64_t t = 0; t < trials; ++t) {
    Rng rng({seed, static_cast<std::uint64_t>(t)});
    const int state = rng.Bernoulli(instance.gamma()) ? 1 : 0;
    std::fill(recommended.begin(), recommended.end(), 0);
    if (state == 1) {
      std::fill(recommended.begin(), recommended.end(), 1);
    } else {
      const double u = rng.Uniform01() * cumulative.back();
      const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      const std::size_t pick =
          std::min<std::size_t>(it - cumulative.begin(), cumulative.size() - 1);
      for (int i : policy.f0().support()[pick].set) recommended[i] = 1;
    }
    adopters.clear();
    for (int i = 0; i < n; ++i) {
      const int action =
          recommended[i] ? reply_to_adopt[i] : reply_to_reject[i];
      if (action != recommended[i]) ++report.disobedience_count;
      if (action == 1) {
        adopters.push_back(i);
        ++adopted[state][i];
      }
    }
    const double value = instance.sender().Value(adopters);
    const double delta = value - mean;
    mean += delta / static_cast<double>(t + 1);
    m2 += delta * (value - mean);
    ++report.state_count[state];
  }

  const double count = static_cast<double>(trials);
  report.empirical_revenue = mean;
  const double variance = trials > 1 ? m2 / (count - 1.0) : 0.0;
  report.std_error = std::sqrt(variance / count);
  report.adoption_rate.assign(2, std::vector<double>(n, 0.0));
  for (int s = 0; s < 2; ++s) {
    if (report.state_count[s] == 0) continue;
    for (int i = 0; i < n; ++i) {
      report.adoption_rate[s][i] =
          static_cast<double>(adopted[s][i]) / report.state_count[s];
    }
  }
  return report;
}

}  // namespace persuasion
