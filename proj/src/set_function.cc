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

#include "persuasion/set_function.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace persuasion {

SubsetMask MaskOf(const AgentSet& set) {
  SubsetMask mask = 0;
  for (int i : set) mask |= SubsetMask{1} << i;
  return mask;
}

AgentSet SetOfMask(SubsetMask mask) {
  AgentSet set;
  while (mask != 0) {
    set.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return set;
}

bool IsCanonicalSet(const AgentSet& set, int n) {
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (set[k] < 0 || set[k] >= n) return false;
    if (k > 0 && set[k] <= set[k - 1]) return false;
  }
  return true;
}

namespace {

absl::Status CheckValues(const std::vector<double>& values, const char* what) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k]) || values[k] < 0.0) {
      return absl::InvalidArgumentError(absl::StrCat(
          what, "[", k, "] must be finite and nonnegative, got ", values[k]));
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<SetFunction> SetFunction::Explicit(int n,
                                                  std::vector<double> values) {
  if (n < 0 || n > kMaxExplicitAgents) {
    return absl::InvalidArgumentError(
        absl::StrCat("explicit set functions support 0..", kMaxExplicitAgents,
                     " agents, got ", n));
  }
  if (values.size() != (std::size_t{1} << n)) {
    return absl::InvalidArgumentError(
        absl::StrCat("explicit table for ", n, " agents needs ",
                     std::size_t{1} << n, " values, got ", values.size()));
  }
  if (auto s = CheckValues(values, "values"); !s.ok()) return s;
  return SetFunction(n, ExplicitTable{std::move(values)});
}

absl::StatusOr<SetFunction> SetFunction::Anonymous(
    std::vector<double> by_cardinality) {
  if (by_cardinality.empty()) {
    return absl::InvalidArgumentError("anonymous profile needs at least f(0)");
  }
  if (auto s = CheckValues(by_cardinality, "f"); !s.ok()) return s;
  for (std::size_t k = 1; k < by_cardinality.size(); ++k) {
    if (by_cardinality[k] < by_cardinality[k - 1]) {
      return absl::InvalidArgumentError(
          absl::StrCat("anonymous profile must be nondecreasing: f(", k,
                       ") < f(", k - 1, ")"));
    }
  }
  const int n = static_cast<int>(by_cardinality.size()) - 1;
  return SetFunction(n, AnonymousProfile{std::move(by_cardinality)});
}

absl::StatusOr<SetFunction> SetFunction::Additive(std::vector<double> weights) {
  if (auto s = CheckValues(weights, "weights"); !s.ok()) return s;
  const int n = static_cast<int>(weights.size());
  return SetFunction(n, AdditiveWeights{std::move(weights)});
}

absl::StatusOr<SetFunction> SetFunction::Coverage(
    std::vector<double> element_weights, std::vector<std::vector<int>> covers) {
  if (auto s = CheckValues(element_weights, "element_weights"); !s.ok()) {
    return s;
  }
  const int num_elements = static_cast<int>(element_weights.size());
  const std::size_t words = (element_weights.size() + 63) / 64;
  std::vector<std::vector<std::uint64_t>> bits(covers.size());
  for (std::size_t i = 0; i < covers.size(); ++i) {
    bits[i].assign(words, 0);
    for (int e : covers[i]) {
      if (e < 0 || e >= num_elements) {
        return absl::InvalidArgumentError(
            absl::StrCat("covers[", i, "] references element ", e,
                         " outside [0, ", num_elements, ")"));
      }
      bits[i][e / 64] |= std::uint64_t{1} << (e % 64);
    }
  }
  const int n = static_cast<int>(covers.size());
  return SetFunction(n, CoverageSystem{std::move(element_weights),
                                       std::move(covers), std::move(bits)});
}

SetFunction::Kind SetFunction::kind() const {
  return static_cast<Kind>(payload_.index());
}

double SetFunction::CoverageValue(const CoverageSystem& c,
                                  const std::vector<int>& agents) const {
  const std::size_t words = (c.element_weights.size() + 63) / 64;
  double total = 0.0;
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t word = 0;
    for (int i : agents) word |= c.cover_bits[i][w];
    while (word != 0) {
      total += c.element_weights[w * 64 + std::countr_zero(word)];
      word &= word - 1;
    }
  }
  return total;
}

double SetFunction::Value(const AgentSet& set) const {
  switch (kind()) {
    case Kind::kExplicit:
      return std::get<ExplicitTable>(payload_).values[MaskOf(set)];
    case Kind::kAnonymous:
      return std::get<AnonymousProfile>(payload_).by_cardinality[set.size()];
    case Kind::kAdditive: {
      const auto& w = std::get<AdditiveWeights>(payload_).weights;
      double total = 0.0;
      for (int i : set) total += w[i];
      return total;
    }
    case Kind::kCoverage:
      return CoverageValue(std::get<CoverageSystem>(payload_), set);
  }
  return 0.0;
}

absl::StatusOr<double> SetFunction::CheckedValue(const AgentSet& set) const {
  if (!IsCanonicalSet(set, num_agents_)) {
    return absl::OutOfRangeError(
        absl::StrCat("agent set must be sorted, distinct and within [0, ",
                     num_agents_, ")"));
  }
  return Value(set);
}

double SetFunction::ValueOfMask(SubsetMask mask) const {
  if (kind() == Kind::kExplicit) {
    return std::get<ExplicitTable>(payload_).values[mask];
  }
  if (kind() == Kind::kAnonymous) {
    return std::get<AnonymousProfile>(payload_)
        .by_cardinality[std::popcount(mask)];
  }
  return Value(SetOfMask(mask));
}

const std::vector<double>& SetFunction::explicit_values() const {
  return std::get<ExplicitTable>(payload_).values;
}
const std::vector<double>& SetFunction::cardinality_profile() const {
  return std::get<AnonymousProfile>(payload_).by_cardinality;
}
const std::vector<double>& SetFunction::additive_weights() const {
  return std::get<AdditiveWeights>(payload_).weights;
}
const std::vector<double>& SetFunction::element_weights() const {
  return std::get<CoverageSystem>(payload_).element_weights;
}
const std::vector<std::vector<int>>& SetFunction::covers() const {
  return std::get<CoverageSystem>(payload_).covers;
}

namespace {

absl::Status CheckExhaustiveSize(int n) {
  if (n > kMaxExhaustiveCheckAgents) {
    return absl::FailedPreconditionError(absl::StrCat(
        "exhaustive check is limited to ", kMaxExhaustiveCheckAgents,
        " agents (got ", n, "); use a sampled check"));
  }
  return absl::OkStatus();
}

std::vector<double> Tabulate(const SetFunction& v) {
  const SubsetMask count = SubsetMask{1} << v.num_agents();
  std::vector<double> table(count);
  for (SubsetMask s = 0; s < count; ++s) table[s] = v.ValueOfMask(s);
  return table;
}

double ComparisonTolerance(const std::vector<double>& table) {
  double scale = 1.0;
  for (double x : table) scale = std::max(scale, std::abs(x));
  return 1e-12 * scale;
}

}  // namespace

absl::StatusOr<bool> IsMonotone(const SetFunction& v) {
  const int n = v.num_agents();
  if (auto s = CheckExhaustiveSize(n); !s.ok()) return s;
  const std::vector<double> table = Tabulate(v);
  const double tol = ComparisonTolerance(table);
  for (SubsetMask s = 0; s < table.size(); ++s) {
    for (int i = 0; i < n; ++i) {
      const SubsetMask bit = SubsetMask{1} << i;
      if ((s & bit) == 0 && table[s | bit] < table[s] - tol) return false;
    }
  }
  return true;
}

absl::StatusOr<bool> IsSubmodular(const SetFunction& v) {
  const int n = v.num_agents();
  if (auto s = CheckExhaustiveSize(n); !s.ok()) return s;
  const std::vector<double> table = Tabulate(v);
  const double tol = ComparisonTolerance(table);
  // Diminishing returns over all S ⊆ T is equivalent to the local
  // condition V(S+i) + V(S+j) >= V(S+i+j) + V(S) for i, j ∉ S.
  for (SubsetMask s = 0; s < table.size(); ++s) {
    for (int i = 0; i < n; ++i) {
      const SubsetMask bi = SubsetMask{1} << i;
      if (s & bi) continue;
      for (int j = i + 1; j < n; ++j) {
        const SubsetMask bj = SubsetMask{1} << j;
        if (s & bj) continue;
        if (table[s | bi] + table[s | bj] <
            table[s | bi | bj] + table[s] - tol) {
          return false;
        }
      }
    }
  }
  return true;
}

std::optional<std::vector<double>> IsAnonymous(const SetFunction& v) {
  const int n = v.num_agents();
  if (v.kind() == SetFunction::Kind::kAnonymous) {
    return v.cardinality_profile();
  }
  if (v.kind() == SetFunction::Kind::kAdditive) {
    const auto& w = v.additive_weights();
    for (double x : w) {
      if (std::abs(x - w[0]) > 1e-12 * std::max(1.0, std::abs(w[0]))) {
        return std::nullopt;
      }
    }
    std::vector<double> f(n + 1);
    for (int k = 0; k <= n; ++k) f[k] = k * (n > 0 ? w[0] : 0.0);
    return f;
  }
  if (n > SetFunction::kMaxExplicitAgents) return std::nullopt;
  std::vector<double> f(n + 1);
  std::vector<bool> seen(n + 1, false);
  const SubsetMask count = SubsetMask{1} << n;
  for (SubsetMask s = 0; s < count; ++s) {
    const double value = v.ValueOfMask(s);
    const int k = std::popcount(s);
    if (!seen[k]) {
      seen[k] = true;
      f[k] = value;
    } else if (std::abs(value - f[k]) > 1e-12 * std::max(1.0, std::abs(f[k]))) {
      return std::nullopt;
    }
  }
  return f;
}

}  // namespace persuasion
