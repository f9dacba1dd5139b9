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

#include "persuasion/submodular_approx.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <tuple>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "persuasion/random.h"

namespace persuasion {

SplitResult SplitHighLow(const PersuasionProfile& profile) {
  const int n = profile.size();
  const double threshold = 1.0 / (static_cast<double>(n) * n);
  SplitResult split;
  for (int i = 0; i < n; ++i) {
    (profile[i] >= threshold ? split.high : split.low).push_back(i);
  }
  return split;
}

double AnalysisGridDelta(int n) {
  const double nn = n;
  return 1.0 / (nn * nn * nn * nn * (nn + 1.0));
}

double CoarseGridDelta(int n) {
  const double nn = n;
  return 1.0 / (nn * nn * (nn + 1.0));
}

double DefaultGridDelta(int n) {
  return n <= 6 ? AnalysisGridDelta(n) : CoarseGridDelta(n);
}

absl::StatusOr<DiscretizationParams> MakeDiscretization(
    const PersuasionProfile& profile, const SplitResult& split, double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("grid size delta must be in (0, 1], got ", delta));
  }
  const double copies = std::round(1.0 / delta);
  if (copies > 1e7) {
    return absl::InvalidArgumentError(absl::StrCat(
        "grid size delta = ", delta, " needs too many copies (", copies, ")"));
  }
  DiscretizationParams params;
  params.delta = delta;
  params.copies = std::max(1, static_cast<int>(copies));
  for (int i : split.high) {
    // The 1e-9 nudge absorbs products such as 0.29 * 100 = 28.999...
    const int cap =
        static_cast<int>(std::floor(profile[i] * params.copies + 1e-9));
    params.capacities.push_back(std::clamp(cap, 0, params.copies));
  }
  return params;
}

bool PartitionMatroid::IsIndependent(
    std::span<const GroundElement> elements) const {
  std::vector<int> used(capacities_.size(), 0);
  std::set<GroundElement> seen;
  for (const GroundElement& e : elements) {
    if (e.agent < 0 || e.agent >= num_blocks() || e.copy < 0 ||
        e.copy >= copies_) {
      return false;
    }
    if (!seen.insert(e).second) return false;
    if (++used[e.agent] > capacities_[e.agent]) return false;
  }
  return true;
}

RestrictedValueOracle::RestrictedValueOracle(const SetFunction& v,
                                             std::vector<int> agents)
    : v_(&v), agents_(std::move(agents)) {
  if (size() <= kTabulatedAgents) {
    table_.resize(std::size_t{1} << size());
    for (SubsetMask s = 0; s < table_.size(); ++s) {
      table_[s] = v_->Value(ToAgentSet(s));
    }
  }
}

absl::StatusOr<RestrictedValueOracle> RestrictedValueOracle::Create(
    const SetFunction& v, std::vector<int> agents) {
  if (static_cast<int>(agents.size()) > kMaxAgents) {
    return absl::FailedPreconditionError(
        absl::StrCat("at most ", kMaxAgents, " high agents are supported, got ",
                     agents.size()));
  }
  if (!std::is_sorted(agents.begin(), agents.end()) ||
      !IsCanonicalSet(agents, v.num_agents())) {
    return absl::InvalidArgumentError(
        "restricted agents must be a canonical agent set");
  }
  return RestrictedValueOracle(v, std::move(agents));
}

double RestrictedValueOracle::operator()(SubsetMask positions) const {
  if (!table_.empty()) return table_[positions];
  return v_->Value(ToAgentSet(positions));
}

AgentSet RestrictedValueOracle::ToAgentSet(SubsetMask positions) const {
  AgentSet set;
  while (positions != 0) {
    set.push_back(agents_[std::countr_zero(positions)]);
    positions &= positions - 1;
  }
  return set;
}

double ObjectiveF(const RestrictedValueOracle& oracle,
                  std::span<const GroundElement> assignment, int copies) {
  std::map<int, SubsetMask> projections;
  for (const GroundElement& e : assignment) {
    projections[e.copy] |= SubsetMask{1} << e.agent;
  }
  double total = (copies - static_cast<double>(projections.size())) * oracle(0);
  for (const auto& [copy, mask] : projections) total += oracle(mask);
  return total / copies;
}

namespace {

constexpr std::uint64_t kRoundingStream = 0x5eedba5e0f5a1d00ULL;

std::vector<GroundElement> LazyGreedy(const RestrictedValueOracle& oracle,
                                      const PartitionMatroid& matroid) {
  const int m = matroid.num_blocks();
  const int k = matroid.copies();
  std::vector<SubsetMask> projection(k, 0);
  std::vector<int> used(m, 0);

  // Max-heap on (stale gain, then lowest agent, then lowest copy).
  using Entry = std::tuple<double, int, int>;
  auto worse = [](const Entry& a, const Entry& b) {
    if (std::get<0>(a) != std::get<0>(b))
      return std::get<0>(a) < std::get<0>(b);
    if (std::get<1>(a) != std::get<1>(b))
      return std::get<1>(a) > std::get<1>(b);
    return std::get<2>(a) > std::get<2>(b);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
  const double empty_value = oracle(0);
  for (int i = 0; i < m; ++i) {
    if (matroid.capacity(i) == 0) continue;
    const double gain = oracle(SubsetMask{1} << i) - empty_value;
    for (int j = 0; j < k; ++j) heap.emplace(gain, i, j);
  }

  std::vector<GroundElement> chosen;
  while (!heap.empty()) {
    auto [stale, i, j] = heap.top();
    heap.pop();
    if (used[i] >= matroid.capacity(i)) continue;
    const SubsetMask bit = SubsetMask{1} << i;
    const double fresh = oracle(projection[j] | bit) - oracle(projection[j]);
    if (!heap.empty() && fresh < std::get<0>(heap.top())) {
      heap.emplace(fresh, i, j);
      continue;
    }
    if (fresh <= 0.0) break;
    projection[j] |= bit;
    ++used[i];
    chosen.push_back({i, j});
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

// Columns (copies) whose fractional point y restricted to the column is
// identical share a type; their gradients have the same distribution, so
// one set of samples serves the whole type.
struct ColumnType {
  std::vector<int> columns;
  std::vector<double> y;  // inclusion probability per block
};

std::vector<GroundElement> ContinuousGreedy(
    const RestrictedValueOracle& oracle, const PartitionMatroid& matroid,
    const ContinuousGreedyOptions& options, std::uint64_t seed) {
  const int m = matroid.num_blocks();
  const int k = matroid.copies();
  const int steps = options.steps;
  const double step_size = 1.0 / steps;

  std::vector<ColumnType> types(1);
  types[0].columns.resize(k);
  std::iota(types[0].columns.begin(), types[0].columns.end(), 0);
  types[0].y.assign(m, 0.0);

  // bases[t][i] lists the columns of block i in the base chosen at step t.
  std::vector<std::vector<std::vector<int>>> bases(steps);

  for (int step = 0; step < steps; ++step) {
    const int num_types = static_cast<int>(types.size());
    std::vector<std::vector<double>> gradient(num_types,
                                              std::vector<double>(m, 0.0));
    for (int sample = 0; sample < options.samples; ++sample) {
      Rng rng({seed, static_cast<std::uint64_t>(step),
               static_cast<std::uint64_t>(sample)});
      for (int t = 0; t < num_types; ++t) {
        SubsetMask r = 0;
        for (int i = 0; i < m; ++i) {
          if (rng.Uniform01() < types[t].y[i]) r |= SubsetMask{1} << i;
        }
        const double base = oracle(r);
        for (int i = 0; i < m; ++i) {
          const SubsetMask bit = SubsetMask{1} << i;
          gradient[t][i] +=
              (r & bit) ? base - oracle(r & ~bit) : oracle(r | bit) - base;
        }
      }
    }

    // Max-weight base of the partition matroid: in block i, the k_i columns
    // of largest gradient. Columns are taken type by type, lowest first.
    std::vector<std::vector<int>> take(m, std::vector<int>(num_types, 0));
    std::vector<int> order(num_types);
    for (int i = 0; i < m; ++i) {
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return gradient[a][i] > gradient[b][i];
      });
      int remaining = matroid.capacity(i);
      for (int t : order) {
        if (remaining == 0) break;
        const int q =
            std::min(remaining, static_cast<int>(types[t].columns.size()));
        take[i][t] = q;
        remaining -= q;
      }
    }

    bases[step].assign(m, {});
    std::vector<ColumnType> next;
    std::map<std::vector<double>, int> by_y;
    for (int t = 0; t < num_types; ++t) {
      const std::vector<int>& cols = types[t].columns;
      for (int i = 0; i < m; ++i) {
        bases[step][i].insert(bases[step][i].end(), cols.begin(),
                              cols.begin() + take[i][t]);
      }
      std::vector<int> cuts = {0, static_cast<int>(cols.size())};
      for (int i = 0; i < m; ++i) cuts.push_back(take[i][t]);
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
      for (std::size_t c = 1; c < cuts.size(); ++c) {
        std::vector<double> y = types[t].y;
        for (int i = 0; i < m; ++i) {
          if (take[i][t] >= cuts[c]) y[i] += step_size;
        }
        auto [it, inserted] = by_y.try_emplace(y, next.size());
        if (inserted) next.push_back({{}, std::move(y)});
        auto& dst = next[it->second].columns;
        dst.insert(dst.end(), cols.begin() + cuts[c - 1],
                   cols.begin() + cuts[c]);
      }
    }
    types = std::move(next);
  }

  // Swap rounding: merge the step bases (each of weight 1/steps) one at a
  // time. Swaps never cross blocks, so each block rounds independently.
  std::vector<GroundElement> result;
  for (int i = 0; i < m; ++i) {
    Rng rng({seed, kRoundingStream, static_cast<std::uint64_t>(i)});
    std::vector<int> merged = bases[0][i];
    std::sort(merged.begin(), merged.end());
    double merged_weight = step_size;
    for (int t = 1; t < steps; ++t) {
      std::vector<int> other = bases[t][i];
      std::sort(other.begin(), other.end());
      std::vector<int> only_merged;
      std::vector<int> only_other;
      std::set_difference(merged.begin(), merged.end(), other.begin(),
                          other.end(), std::back_inserter(only_merged));
      std::set_difference(other.begin(), other.end(), merged.begin(),
                          merged.end(), std::back_inserter(only_other));
      const double keep = merged_weight / (merged_weight + step_size);
      for (std::size_t p = 0; p < only_merged.size(); ++p) {
        if (!rng.Bernoulli(keep)) {
          *std::lower_bound(merged.begin(), merged.end(), only_merged[p]) =
              only_other[p];
          std::sort(merged.begin(), merged.end());
        }
      }
      merged_weight += step_size;
    }
    for (int col : merged) result.push_back({i, col});
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace

absl::StatusOr<std::vector<GroundElement>> MatroidSubmodularMax(
    const RestrictedValueOracle& oracle, const PartitionMatroid& matroid,
    MatroidAlgorithm algorithm, const ContinuousGreedyOptions& options,
    std::uint64_t seed) {
  if (matroid.num_blocks() != oracle.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("matroid has ", matroid.num_blocks(),
                     " blocks but the oracle has ", oracle.size(), " agents"));
  }
  if (matroid.copies() < 1) {
    return absl::InvalidArgumentError("matroid needs at least one copy");
  }
  for (int i = 0; i < matroid.num_blocks(); ++i) {
    if (matroid.capacity(i) < 0 || matroid.capacity(i) > matroid.copies()) {
      return absl::InvalidArgumentError(
          absl::StrCat("capacity of block ", i, " outside [0, copies]"));
    }
  }
  if (algorithm == MatroidAlgorithm::kGreedy) {
    return LazyGreedy(oracle, matroid);
  }
  if (options.steps <= 0 || options.samples <= 0) {
    return absl::InvalidArgumentError(
        "continuous greedy needs positive step and sample counts");
  }
  return ContinuousGreedy(oracle, matroid, options, seed);
}

absl::StatusOr<SubsetDistribution> SupportLp(
    const SetFunction& v, const std::vector<AgentSet>& support,
    const PersuasionProfile& profile) {
  if (std::find(support.begin(), support.end(), AgentSet{}) == support.end()) {
    return absl::InvalidArgumentError("support LP requires ∅ in the support");
  }
  absl::StatusOr<SubsetDistribution> nu =
      SolveRestrictedClosure(v, profile, support);
  if (nu.status().code() == absl::StatusCode::kFailedPrecondition) {
    return absl::InternalError(
        "support LP infeasible although ∅ is in the support");
  }
  return nu;
}

absl::StatusOr<SubsetDistribution> LiftToFull(
    const SubsetDistribution& nu, const SplitResult& split,
    const PersuasionProfile& profile) {
  const int n = profile.size();
  if (nu.n() != n) {
    return absl::InvalidArgumentError("distribution and profile disagree on n");
  }
  if (split.low.empty()) return nu;
  double low_total = 0.0;
  for (int i : split.low) low_total += profile[i];
  const double empty_mass = 1.0 / n - low_total;
  if (!(empty_mass >= 0.0)) {
    return absl::InternalError(
        absl::StrCat("low persuasion levels sum to ", low_total,
                     ", which leaves no room below 1/n"));
  }
  const double scale = 1.0 - 1.0 / n;
  std::vector<WeightedSet> support;
  for (const WeightedSet& entry : nu.support()) {
    support.push_back({entry.set, scale * entry.prob});
  }
  for (int i : split.low) support.push_back({AgentSet{i}, profile[i]});
  support.push_back({AgentSet{}, empty_mass});
  return SubsetDistribution::FromSolverMasses(n, std::move(support));
}

namespace {

absl::Status CheckSubmodularPrecondition(const SetFunction& v) {
  constexpr int kSpotCheckAgents = 12;
  if (v.kind() == SetFunction::Kind::kAdditive ||
      v.kind() == SetFunction::Kind::kCoverage ||
      v.num_agents() > kSpotCheckAgents) {
    return absl::OkStatus();
  }
  absl::StatusOr<bool> monotone = IsMonotone(v);
  if (!monotone.ok()) return monotone.status();
  absl::StatusOr<bool> submodular = IsSubmodular(v);
  if (!submodular.ok()) return submodular.status();
  if (!*monotone || !*submodular) {
    return absl::FailedPreconditionError(
        "the submodular solver needs a monotone submodular sender utility");
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<SubmodularClosureResult> ApproximateClosure(
    const SetFunction& v, const PersuasionProfile& profile,
    const SubmodularConfig& config) {
  const int n = v.num_agents();
  if (profile.size() != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "profile has ", profile.size(), " entries for ", n, " agents"));
  }
  if (n == 0) {
    return absl::InvalidArgumentError("need at least one agent");
  }
  if (!(config.slack >= 0.0 && config.slack < 1.0)) {
    return absl::InvalidArgumentError("slack must be in [0, 1)");
  }
  if (auto s = CheckSubmodularPrecondition(v); !s.ok()) return s;

  SubmodularClosureResult out;
  out.split = SplitHighLow(profile);
  const double delta = config.delta.value_or(DefaultGridDelta(n));
  absl::StatusOr<DiscretizationParams> grid =
      MakeDiscretization(profile, out.split, delta);
  if (!grid.ok()) return grid.status();
  out.grid = *std::move(grid);

  absl::StatusOr<RestrictedValueOracle> oracle =
      RestrictedValueOracle::Create(v, out.split.high);
  if (!oracle.ok()) return oracle.status();
  const PartitionMatroid matroid(out.grid.copies, out.grid.capacities);
  absl::StatusOr<std::vector<GroundElement>> assignment =
      MatroidSubmodularMax(*oracle, matroid, config.algorithm,
                           config.continuous_greedy, config.seed);
  if (!assignment.ok()) return assignment.status();
  out.assignment = *std::move(assignment);
  out.assignment_value = ObjectiveF(*oracle, out.assignment, out.grid.copies);

  // Candidate support: the projected sets R^j plus ∅, the high singletons
  // and the full high set.
  std::set<AgentSet> candidates;
  {
    std::map<int, SubsetMask> projections;
    for (const GroundElement& e : out.assignment) {
      projections[e.copy] |= SubsetMask{1} << e.agent;
    }
    for (const auto& [copy, mask] : projections) {
      candidates.insert(oracle->ToAgentSet(mask));
    }
  }
  candidates.insert(AgentSet{});
  for (int i : out.split.high) candidates.insert(AgentSet{i});
  candidates.insert(out.split.high);
  out.candidates.assign(candidates.begin(), candidates.end());

  absl::StatusOr<SubsetDistribution> nu = SupportLp(v, out.candidates, profile);
  if (!nu.ok()) return nu.status();
  out.high_distribution = *std::move(nu);

  absl::StatusOr<SubsetDistribution> lifted =
      LiftToFull(out.high_distribution, out.split, profile);
  if (!lifted.ok()) return lifted.status();
  out.lifted = *std::move(lifted);

  // Re-optimize over everything collected so far on the full agent set,
  // plus the prefixes of the agents ordered by level. Mass a_(r) − a_(r+1)
  // on the r-th prefix meets every marginal with equality.
  for (int i : out.split.low) candidates.insert(AgentSet{i});
  {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return profile[x] > profile[y]; });
    AgentSet prefix;
    for (int i : order) {
      if (profile[i] <= 0.0) break;
      prefix.insert(std::upper_bound(prefix.begin(), prefix.end(), i), i);
      candidates.insert(prefix);
    }
  }
  for (const WeightedSet& entry : out.lifted.support()) {
    candidates.insert(entry.set);
  }
  const std::vector<AgentSet> final_support(candidates.begin(),
                                            candidates.end());
  absl::StatusOr<SubsetDistribution> mu = SupportLp(v, final_support, profile);
  if (!mu.ok()) return mu.status();

  out.closure.value = mu->Expectation(v);
  out.closure.mu = *std::move(mu);
  out.closure.method = ClosureMethod::kSubmodularApprox;
  const double base_ratio = config.algorithm == MatroidAlgorithm::kGreedy
                                ? 0.5
                                : 1.0 - std::exp(-1.0);
  out.closure.guarantee = base_ratio * (1.0 - config.slack);
  out.closure.empirical = delta > AnalysisGridDelta(n) * (1.0 + 1e-9);
  return out;
}

absl::StatusOr<SubmodularSolution> SolveSubmodular(
    const PersuasionInstance& instance, const SubmodularConfig& config) {
  absl::StatusOr<SubmodularClosureResult> closure =
      ApproximateClosure(instance.sender(), ProfileOf(instance), config);
  if (!closure.ok()) return closure.status();
  absl::StatusOr<SignalingPolicy> policy =
      PolicyFromDistribution(closure->closure.mu, instance);
  if (!policy.ok()) return policy.status();
  absl::StatusOr<double> revenue = Revenue(*policy, instance);
  if (!revenue.ok()) return revenue.status();
  return SubmodularSolution{*std::move(closure), *std::move(policy), *revenue};
}

}  // namespace persuasion
