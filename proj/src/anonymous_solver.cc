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

#include "persuasion/anonymous_solver.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "persuasion/lp.h"

namespace persuasion {

absl::StatusOr<double> BetaK(std::span<const double> sorted_levels, int k) {
  const int n = static_cast<int>(sorted_levels.size());
  if (k < 1 || k > n) {
    return absl::InvalidArgumentError(
        absl::StrCat("cardinality k = ", k, " outside [1, ", n, "]"));
  }
  for (int i = 1; i < n; ++i) {
    if (sorted_levels[i] > sorted_levels[i - 1]) {
      return absl::InvalidArgumentError(
          "persuasion levels must be sorted in nonincreasing order");
    }
  }
  // suffix = a_{m+1} + ... + a_n, walking m upward.
  double suffix =
      std::accumulate(sorted_levels.begin(), sorted_levels.end(), 0.0);
  double beta = std::numeric_limits<double>::infinity();
  for (int m = 0; m < k; ++m) {
    beta = std::min(beta, suffix / (k - m));
    suffix -= sorted_levels[m];
  }
  return beta;
}

absl::StatusOr<PolyLpSolution> SolvePolyLp(
    const std::vector<double>& by_cardinality,
    const PersuasionProfile& profile) {
  const int n = profile.size();
  if (static_cast<int>(by_cardinality.size()) != n + 1) {
    return absl::InvalidArgumentError(absl::StrCat("cardinality profile needs ",
                                                   n + 1, " entries, got ",
                                                   by_cardinality.size()));
  }
  for (int k = 0; k <= n; ++k) {
    if (by_cardinality[k] < 0.0 ||
        (k > 0 && by_cardinality[k] < by_cardinality[k - 1])) {
      return absl::InvalidArgumentError(
          "cardinality profile must be nonnegative and nondecreasing");
    }
  }

  PolyLpSolution out;
  out.n = n;
  out.sigma.resize(n);
  std::iota(out.sigma.begin(), out.sigma.end(), 0);
  std::stable_sort(out.sigma.begin(), out.sigma.end(),
                   [&](int x, int y) { return profile[x] > profile[y]; });
  out.sorted_levels.resize(n);
  for (int p = 0; p < n; ++p) out.sorted_levels[p] = profile[out.sigma[p]];

  // Variables: alpha_0..alpha_n, then budget a_p^k for k = 1..n, p = 0..n-1.
  const int num_vars = (n + 1) + n * n;
  auto alpha_var = [](int k) { return k; };
  auto budget_var = [n](int k, int p) { return (n + 1) + (k - 1) * n + p; };

  LinearProgram lp;
  lp.objective.assign(num_vars, 0.0);
  for (int k = 0; k <= n; ++k) lp.objective[alpha_var(k)] = by_cardinality[k];

  {
    std::vector<double> row(num_vars, 0.0);
    for (int k = 0; k <= n; ++k) row[alpha_var(k)] = 1.0;
    lp.AddConstraint(std::move(row), Relation::kEqual, 1.0);
  }
  // alpha_k <= (a^k_{m+1} + ... + a^k_n) / (k - m) for 0 <= m < k.
  for (int k = 1; k <= n; ++k) {
    for (int m = 0; m < k; ++m) {
      std::vector<double> row(num_vars, 0.0);
      row[alpha_var(k)] = 1.0;
      for (int p = m; p < n; ++p) row[budget_var(k, p)] = -1.0 / (k - m);
      lp.AddConstraint(std::move(row), Relation::kLessEqual, 0.0);
    }
  }
  for (int p = 0; p < n; ++p) {
    std::vector<double> row(num_vars, 0.0);
    for (int k = 1; k <= n; ++k) row[budget_var(k, p)] = 1.0;
    lp.AddConstraint(std::move(row), Relation::kLessEqual,
                     out.sorted_levels[p]);
  }
  for (int k = 1; k <= n; ++k) {
    for (int p = 0; p + 1 < n; ++p) {
      std::vector<double> row(num_vars, 0.0);
      row[budget_var(k, p + 1)] = 1.0;
      row[budget_var(k, p)] = -1.0;
      lp.AddConstraint(std::move(row), Relation::kLessEqual, 0.0);
    }
  }

  absl::StatusOr<LpSolution> solution = SolveLp(lp);
  if (!solution.ok()) return solution.status();
  if (solution->status != LpStatus::kOptimal) {
    // alpha_0 = 1 with zero budgets is always feasible and the objective is
    // bounded by f(n).
    return absl::InternalError(
        "anonymous LP reported infeasible or unbounded; this is a bug");
  }
  out.alpha.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    out.alpha[k] = std::max(solution->values[alpha_var(k)], 0.0);
  }
  out.budget.assign(n + 1, {});
  for (int k = 1; k <= n; ++k) {
    out.budget[k].resize(n);
    for (int p = 0; p < n; ++p) {
      out.budget[k][p] = std::max(solution->values[budget_var(k, p)], 0.0);
    }
  }
  out.objective = solution->objective;
  return out;
}

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kNegligibleMass = 1e-12;
// Residual step mass tolerated when the budget runs dry through round-off.
constexpr double kResidualMass = 1e-10;

enum class StopRule { kMassPlaced, kPrefixMeets, kWindowMeets };

}  // namespace

absl::StatusOr<StagedMeasure> ConstructStagedMeasure(
    const PolyLpSolution& solution) {
  const int n = solution.n;
  if (static_cast<int>(solution.alpha.size()) != n + 1 ||
      static_cast<int>(solution.sorted_levels.size()) != n ||
      static_cast<int>(solution.sigma.size()) != n) {
    return absl::InvalidArgumentError("malformed PolyLpSolution");
  }
  StagedMeasure measure;
  measure.n = n;
  measure.sigma = solution.sigma;
  measure.empty_mass = solution.alpha[0];

  // Remaining marginal budget, nonincreasing in solver order throughout.
  std::vector<double> budget = solution.sorted_levels;

  for (int k = n; k >= 1; --k) {
    double remaining = solution.alpha[k];
    if (remaining <= kNegligibleMass) {
      measure.empty_mass += remaining;
      continue;
    }
    for (int stage_count = 0;; ++stage_count) {
      if (stage_count > 2 * n + 2) {
        return absl::InternalError(absl::StrCat(
            "staged construction did not terminate at step k = ", k));
      }
      const double c = budget[k - 1];
      int j = k - 1;
      while (j > 0 && budget[j - 1] <= c + kTieTolerance) --j;
      int l = k;
      while (l < n && budget[l] >= c - kTieTolerance) ++l;
      const double next = l < n ? budget[l] : 0.0;
      const double rate = static_cast<double>(k - j) / (l - j);

      double x = remaining;
      StopRule rule = StopRule::kMassPlaced;
      if (j > 0 && rate < 1.0) {
        const double x_prefix = (budget[j - 1] - c) / (1.0 - rate);
        if (x_prefix < x) {
          x = x_prefix;
          rule = StopRule::kPrefixMeets;
        }
      }
      const double x_window = (c - next) / rate;
      if (x_window < x) {
        x = x_window;
        rule = StopRule::kWindowMeets;
      }

      if (x <= kNegligibleMass) {
        // Only possible once the window has been drained to zero.
        if (remaining <= kResidualMass) {
          measure.empty_mass += remaining;
          break;
        }
        return absl::InternalError(absl::StrCat(
            "staged construction exhausted the marginal budget at k = ", k,
            " with mass ", remaining, " unplaced; remaining budget: [",
            absl::StrJoin(budget, ", "), "]"));
      }

      measure.stages.push_back({k, j, l, x});
      for (int p = 0; p < j; ++p) budget[p] -= x;
      double window_value = c - rate * x;
      if (rule == StopRule::kPrefixMeets) window_value = budget[j - 1];
      if (rule == StopRule::kWindowMeets) window_value = next;
      for (int p = j; p < l; ++p) budget[p] = window_value;
      for (double& b : budget) {
        if (b < kTieTolerance) b = 0.0;
      }
      remaining -= x;
      if (rule == StopRule::kMassPlaced) break;
    }
  }
  return measure;
}

std::vector<std::vector<double>> PerCardinalityMarginals(
    const StagedMeasure& measure) {
  std::vector<std::vector<double>> marginals(
      measure.n + 1, std::vector<double>(measure.n, 0.0));
  for (const Stage& s : measure.stages) {
    const double share = s.mass * (s.k - s.j) / (s.l - s.j);
    for (int p = 0; p < s.j; ++p) marginals[s.k][p] += s.mass;
    for (int p = s.j; p < s.l; ++p) marginals[s.k][p] += share;
  }
  return marginals;
}

std::vector<double> PerCardinalityMass(const StagedMeasure& measure) {
  std::vector<double> mass(measure.n + 1, 0.0);
  mass[0] = measure.empty_mass;
  for (const Stage& s : measure.stages) mass[s.k] += s.mass;
  return mass;
}

namespace {

// C(a, b) as a double, saturating well past kMaxExpandedSupport.
double Binomial(int a, int b) {
  double result = 1.0;
  for (int t = 1; t <= b; ++t) {
    result = result * (a - b + t) / t;
    if (result > 1e18) return result;
  }
  return std::round(result);
}

AgentSet ToOriginal(const std::vector<int>& positions,
                    const std::vector<int>& sigma) {
  AgentSet set;
  set.reserve(positions.size());
  for (int p : positions) set.push_back(sigma[p]);
  std::sort(set.begin(), set.end());
  return set;
}

}  // namespace

absl::StatusOr<SubsetDistribution> ExpandStagedMeasure(
    const StagedMeasure& measure) {
  double total_sets = 1.0;
  for (const Stage& s : measure.stages) {
    total_sets += Binomial(s.l - s.j, s.k - s.j);
  }
  if (total_sets > static_cast<double>(kMaxExpandedSupport)) {
    return absl::ResourceExhaustedError(
        absl::StrCat("expanding the staged measure needs ", total_sets,
                     " sets, above the limit of ", kMaxExpandedSupport,
                     "; sample from it instead"));
  }
  std::vector<WeightedSet> support;
  support.push_back({AgentSet{}, measure.empty_mass});
  for (const Stage& s : measure.stages) {
    const int choose = s.k - s.j;
    const double each = s.mass / Binomial(s.l - s.j, choose);
    // Enumerate combinations of `choose` window positions in [j, l).
    std::vector<int> combo(choose);
    std::iota(combo.begin(), combo.end(), s.j);
    std::vector<int> positions(s.k);
    std::iota(positions.begin(), positions.begin() + s.j, 0);
    while (true) {
      std::copy(combo.begin(), combo.end(), positions.begin() + s.j);
      support.push_back({ToOriginal(positions, measure.sigma), each});
      int t = choose - 1;
      while (t >= 0 && combo[t] == s.l - choose + t) --t;
      if (t < 0) break;
      ++combo[t];
      for (int u = t + 1; u < choose; ++u) combo[u] = combo[u - 1] + 1;
    }
  }
  return SubsetDistribution::FromSolverMasses(measure.n, std::move(support));
}

AgentSet SampleStagedMeasure(const StagedMeasure& measure, Rng& rng) {
  double total = measure.empty_mass;
  for (const Stage& s : measure.stages) total += s.mass;
  double u = rng.Uniform01() * total;
  if (u < measure.empty_mass || measure.stages.empty()) return {};
  u -= measure.empty_mass;
  const Stage* chosen = &measure.stages.back();
  for (const Stage& s : measure.stages) {
    if (u < s.mass) {
      chosen = &s;
      break;
    }
    u -= s.mass;
  }
  std::vector<int> window(chosen->l - chosen->j);
  std::iota(window.begin(), window.end(), chosen->j);
  const int choose = chosen->k - chosen->j;
  // Partial Fisher-Yates: the first `choose` entries become the sample.
  for (int t = 0; t < choose; ++t) {
    const int pick = t + static_cast<int>(rng.UniformInt(window.size() - t));
    std::swap(window[t], window[pick]);
  }
  std::vector<int> positions(chosen->j);
  std::iota(positions.begin(), positions.end(), 0);
  positions.insert(positions.end(), window.begin(), window.begin() + choose);
  return ToOriginal(positions, measure.sigma);
}

absl::StatusOr<AnonymousClosureResult> AnonymousConcaveClosure(
    const SetFunction& v, const PersuasionProfile& profile) {
  if (profile.size() != v.num_agents()) {
    return absl::InvalidArgumentError(
        absl::StrCat("profile has ", profile.size(), " entries for ",
                     v.num_agents(), " agents"));
  }
  std::optional<std::vector<double>> by_cardinality = IsAnonymous(v);
  if (!by_cardinality.has_value()) {
    return absl::FailedPreconditionError(
        "sender utility is not anonymous; use the submodular solver");
  }
  absl::StatusOr<PolyLpSolution> poly = SolvePolyLp(*by_cardinality, profile);
  if (!poly.ok()) return poly.status();
  absl::StatusOr<StagedMeasure> staged = ConstructStagedMeasure(*poly);
  if (!staged.ok()) return staged.status();
  absl::StatusOr<SubsetDistribution> mu = ExpandStagedMeasure(*staged);
  if (!mu.ok()) return mu.status();

  AnonymousClosureResult result;
  result.closure.value = mu->Expectation(v);
  result.closure.mu = *std::move(mu);
  result.closure.method = ClosureMethod::kAnonymous;
  result.closure.guarantee = 1.0;
  result.poly = *std::move(poly);
  result.staged = *std::move(staged);
  return result;
}

absl::StatusOr<AnonymousSolution> SolveAnonymous(
    const PersuasionInstance& instance) {
  absl::StatusOr<AnonymousClosureResult> closure =
      AnonymousConcaveClosure(instance.sender(), ProfileOf(instance));
  if (!closure.ok()) return closure.status();
  absl::StatusOr<SignalingPolicy> policy =
      PolicyFromDistribution(closure->closure.mu, instance);
  if (!policy.ok()) return policy.status();
  absl::StatusOr<double> revenue = Revenue(*policy, instance);
  if (!revenue.ok()) return revenue.status();
  return AnonymousSolution{*std::move(closure), *std::move(policy), *revenue};
}

}  // namespace persuasion
