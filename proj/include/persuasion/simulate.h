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

#ifndef PERSUASION_SIMULATE_H_
#define PERSUASION_SIMULATE_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "persuasion/core_model.h"

namespace persuasion {

struct SimulationReport {
  std::int64_t trials = 0;
  double empirical_revenue = 0.0;
  double std_error = 0.0;
  // adoption_rate[s][i]: fraction of trials in state s (0 = ω₀, 1 = ω₁) in
  // which agent i adopted. Zero when the state never occurred.
  std::vector<std::vector<double>> adoption_rate;
  std::vector<std::int64_t> state_count;  // trials per state
  std::int64_t disobedience_count = 0;
};

// Replays the game `trials` times: draw the state from the prior, draw the
// recommendations from F(ω), let every agent best-reply to its posterior
// and record V of the adopters. Trial t draws from Rng({seed, t}), so the
// report is a pure function of the arguments. Refuses policies that are not
// incentive compatible.
absl::StatusOr<SimulationReport> RunSimulation(
    const SignalingPolicy& policy, const PersuasionInstance& instance,
    std::int64_t trials, std::uint64_t seed);

}  // namespace persuasion

#endif  // PERSUASION_SIMULATE_H_
