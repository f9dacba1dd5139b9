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

#ifndef PERSUASION_CLI_IO_H_
#define PERSUASION_CLI_IO_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "persuasion/core_model.h"
#include "persuasion/set_function.h"

namespace persuasion {

inline constexpr std::string_view kInstanceVersion = "persuasion-instance/1";
inline constexpr std::string_view kPolicyVersion = "persuasion-policy/1";

// Instance document:
//   {"version": "persuasion-instance/1", "n": 2, "gamma": 0.5,
//    "agents": [{"u00": 1, "u01": 0, "u10": 0, "u11": 1}, ...],
//    "sender": <set function>}
// Set function documents (also accepted standalone by `gadget`/`check`):
//   {"type": "explicit", "values": [V(mask) for mask in 0..2^n-1]}
//   {"type": "anonymous", "f": [f(0), ..., f(n)]}
//   {"type": "additive", "weights": [w_0, ..., w_{n-1}]}
//   {"type": "coverage", "element_weights": [...], "covers": [[e, ...], ...]}
// Agents are 0-based everywhere. Errors carry the JSON path of the
// offending value, e.g. "at .agents[1].u00: ...".
absl::StatusOr<PersuasionInstance> ParseInstance(std::string_view text);
absl::StatusOr<SetFunction> ParseSetFunction(std::string_view text);
// Accepts either a bare array or {"a": [...]}.
absl::StatusOr<PersuasionProfile> ParseProfile(std::string_view text);

std::string EmitInstance(const PersuasionInstance& instance);
std::string EmitSetFunction(const SetFunction& v);

struct PolicyDocument {
  int n = 0;
  SubsetDistribution f0 = SubsetDistribution::PointMass(0, {});
  std::vector<double> marginals;
  double closure_value = 0.0;
  double revenue = 0.0;
  std::string method;
  double guarantee = 1.0;
  std::optional<std::uint64_t> seed;
};

// Canonical text: fixed key order, 17 significant digits, ascending sets,
// lexicographically sorted support. ParsePolicy(EmitPolicy(d)) re-emits to
// identical text.
std::string EmitPolicy(const PolicyDocument& doc);
absl::StatusOr<PolicyDocument> ParsePolicy(std::string_view text);

// Entry point of the `persuasion` command-line tool. `args` excludes the
// program name. Data goes to `out`, diagnostics to `err`. Exit codes: 0
// success, 1 usage, 2 validation, 3 infeasible or refused, 4 internal.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace persuasion

#endif  // PERSUASION_CLI_IO_H_
