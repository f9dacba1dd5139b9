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
#include <functional>
#include <map>
#include <vector>

#include "gtest/gtest.h"
#include "persuasion/closure_exact.h"
#include "test_util.h"

namespace persuasion {
namespace {

PersuasionProfile Profile(std::vector<double> a) {
  return *PersuasionProfile::Create(std::move(a));
}

// max Σ μ_S over k-subsets S subject to Σ_{S∋i} μ_S <= a_i.
double BetaByLp(const std::vector<double>& a, int k) {
  const int n = static_cast<int>(a.size());
  std::vector<SubsetMask> columns;
  for (SubsetMask s = 0; s < (SubsetMask{1} << n); ++s) {
    if (__builtin_popcountll(s) == k) columns.push_back(s);
  }
  LinearProgram lp;
  lp.objective.assign(columns.size(), 1.0);
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
      row[c] = columns[c] >> i & 1;
    lp.AddConstraint(row, Relation::kLessEqual, a[i]);
  }
  if (columns.size() <= 6) return testing::BruteForceLpOptimum(lp);
  return SolveLp(lp)->objective;
}

PolyLpSolution ManualSolution(std::vector<double> levels,
                              std::vector<double> alpha,
                              std::vector<std::vector<double>> budget) {
  PolyLpSolution s;
  s.n = static_cast<int>(levels.size());
  s.sorted_levels = std::move(levels);
  s.alpha = std::move(alpha);
  s.budget = std::move(budget);
  for (int p = 0; p < s.n; ++p) s.sigma.push_back(p);
  return s;
}

std::map<AgentSet, double> AsMap(const SubsetDistribution& mu) {
  std::map<AgentSet, double> out;
  for (const WeightedSet& e : mu.support()) out[e.set] = e.prob;
  return out;
}

TEST(BetaKTest, Examples) {
  const std::vector<double> a = {0.5, 0.3, 0.2};
  EXPECT_NEAR(*BetaK(a, 1), 1.0, 1e-15);
  const std::vector<double> ones = {1.0, 1.0, 1.0, 1.0};
  EXPECT_NEAR(*BetaK(ones, 2), 2.0, 1e-15);
  EXPECT_NEAR(BetaByLp(ones, 2), 2.0, 1e-12);
  const std::vector<double> skewed = {1.0, 0.1, 0.1};
  EXPECT_NEAR(*BetaK(skewed, 2), 0.2, 1e-15);
  EXPECT_NEAR(BetaByLp(skewed, 2), 0.2, 1e-12);
}

TEST(BetaKTest, RejectsBadInput) {
  const std::vector<double> unsorted = {0.2, 0.5};
  EXPECT_FALSE(BetaK(unsorted, 1).ok());
  const std::vector<double> a = {0.5, 0.2};
  EXPECT_FALSE(BetaK(a, 0).ok());
  EXPECT_FALSE(BetaK(a, 3).ok());
}

TEST(BetaKTest, MatchesLpOracle) {
  Rng rng({31});
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 1 + static_cast<int>(rng.UniformInt(6));
    std::vector<double> a = testing::RandomLevels(rng, n);
    std::sort(a.rbegin(), a.rend());
    const int k = 1 + static_cast<int>(rng.UniformInt(n));
    EXPECT_NEAR(*BetaK(a, k), BetaByLp(a, k), 1e-8);
  }
}

TEST(SolvePolyLpTest, Examples) {
  PolyLpSolution s = *SolvePolyLp({0.0, 1.0, 1.0}, Profile({0.5, 0.5}));
  EXPECT_NEAR(s.objective, 1.0, 1e-12);
  EXPECT_NEAR(s.alpha[1], 1.0, 1e-12);
  EXPECT_NEAR(s.budget[1][0], 0.5, 1e-12);
  EXPECT_NEAR(s.budget[1][1], 0.5, 1e-12);

  EXPECT_NEAR(SolvePolyLp({0.0, 1.0, 1.2}, Profile({0.5, 0.5}))->objective, 1.0,
              1e-12);
  EXPECT_NEAR(
      SolvePolyLp({0.0, 1.0, 2.0, 3.0}, Profile({0.3, 0.9, 0.1}))->objective,
      1.3, 1e-12);
}

TEST(SolvePolyLpTest, SortsAgentsDescending) {
  PolyLpSolution s = *SolvePolyLp({0.0, 1.0, 2.0}, Profile({0.2, 0.7}));
  EXPECT_EQ(s.sigma, (std::vector<int>{1, 0}));
  EXPECT_EQ(s.sorted_levels, (std::vector<double>{0.7, 0.2}));
}

TEST(SolvePolyLpTest, TiesKeepOriginalOrder) {
  PolyLpSolution s =
      *SolvePolyLp({0.0, 1.0, 2.0, 2.5}, Profile({0.4, 0.9, 0.4}));
  EXPECT_EQ(s.sigma, (std::vector<int>{1, 0, 2}));
}

TEST(ConstructStagedMeasureTest, SingleStageOverSingletons) {
  StagedMeasure m = *ConstructStagedMeasure(
      ManualSolution({0.5, 0.5}, {0.0, 1.0, 0.0}, {{}, {0.5, 0.5}, {0, 0}}));
  ASSERT_EQ(m.stages.size(), 1u);
  EXPECT_EQ(m.stages[0].k, 1);
  EXPECT_EQ(m.stages[0].j, 0);
  EXPECT_EQ(m.stages[0].l, 2);
  EXPECT_NEAR(m.stages[0].mass, 1.0, 1e-15);
  std::map<AgentSet, double> mu = AsMap(*ExpandStagedMeasure(m));
  EXPECT_NEAR(mu[{0}], 0.5, 1e-15);
  EXPECT_NEAR(mu[{1}], 0.5, 1e-15);
}

TEST(ConstructStagedMeasureTest, FullPair) {
  StagedMeasure m = *ConstructStagedMeasure(
      ManualSolution({1.0, 1.0}, {0.0, 0.0, 1.0}, {{}, {0, 0}, {1.0, 1.0}}));
  ASSERT_EQ(m.stages.size(), 1u);
  EXPECT_EQ(m.stages[0].k, 2);
  std::map<AgentSet, double> mu = AsMap(*ExpandStagedMeasure(m));
  EXPECT_NEAR((mu[{0, 1}]), 1.0, 1e-15);
}

TEST(ConstructStagedMeasureTest, ForcedPrefix) {
  StagedMeasure m = *ConstructStagedMeasure(
      ManualSolution({1.0, 0.5, 0.5}, {0.0, 0.0, 1.0, 0.0},
                     {{}, {0, 0, 0}, {1.0, 0.5, 0.5}, {0, 0, 0}}));
  ASSERT_EQ(m.stages.size(), 1u);
  EXPECT_EQ(m.stages[0].k, 2);
  EXPECT_EQ(m.stages[0].j, 1);
  EXPECT_EQ(m.stages[0].l, 3);
  EXPECT_NEAR(m.stages[0].mass, 1.0, 1e-15);
  std::map<AgentSet, double> mu = AsMap(*ExpandStagedMeasure(m));
  ASSERT_EQ(mu.size(), 2u);
  EXPECT_NEAR((mu[{0, 1}]), 0.5, 1e-15);
  EXPECT_NEAR((mu[{0, 2}]), 0.5, 1e-15);
}

TEST(SampleStagedMeasureTest, FrequenciesWithinThreeSigma) {
  StagedMeasure m = *ConstructStagedMeasure(
      ManualSolution({1.0, 0.5, 0.5}, {0.0, 0.0, 1.0, 0.0},
                     {{}, {0, 0, 0}, {1.0, 0.5, 0.5}, {0, 0, 0}}));
  Rng rng({2024});
  const int draws = 100000;
  int with_second = 0;
  for (int t = 0; t < draws; ++t) {
    AgentSet s = SampleStagedMeasure(m, rng);
    ASSERT_EQ(s.size(), 2u);
    ASSERT_EQ(s[0], 0);
    with_second += s[1] == 1;
  }
  const double sigma = std::sqrt(draws * 0.25);
  EXPECT_LE(std::abs(with_second - draws * 0.5), 3 * sigma);
}

TEST(ExpandStagedMeasureTest, RefusesHugeSupport) {
  StagedMeasure m;
  m.n = 40;
  m.stages.push_back({20, 0, 40, 1.0});
  for (int p = 0; p < 40; ++p) m.sigma.push_back(p);
  EXPECT_EQ(ExpandStagedMeasure(m).status().code(),
            absl::StatusCode::kResourceExhausted);
}

// Stage invariants: cardinality masses, feasibility and monotone
// per-cardinality marginals.
void CheckStaged(const PolyLpSolution& poly, const StagedMeasure& m) {
  const int n = poly.n;
  const std::vector<double> mass = PerCardinalityMass(m);
  for (int k = 0; k <= n; ++k) EXPECT_NEAR(mass[k], poly.alpha[k], 1e-9);
  const auto marg = PerCardinalityMarginals(m);
  std::vector<double> total(n, 0.0);
  for (int k = 1; k <= n; ++k) {
    for (int p = 0; p < n; ++p) {
      total[p] += marg[k][p];
      if (p > 0) EXPECT_GE(marg[k][p - 1], marg[k][p] - 1e-9);
    }
  }
  for (int p = 0; p < n; ++p) EXPECT_LE(total[p], poly.sorted_levels[p] + 1e-8);
  for (const Stage& s : m.stages) {
    EXPECT_LE(0, s.j);
    EXPECT_LT(s.j, s.k);
    EXPECT_LE(s.k, s.l);
    EXPECT_LE(s.l, n);
  }
  EXPECT_LE(static_cast<int>(m.stages.size()), n * n);
}

TEST(AnonymousConcaveClosureTest, MatchesExactOracle) {
  Rng rng({32});
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng.UniformInt(8));
    SetFunction v = testing::RandomAnonymous(rng, n);
    PersuasionProfile a = testing::RandomProfile(rng, n);
    AnonymousClosureResult r = *AnonymousConcaveClosure(v, a);
    EXPECT_NEAR(r.closure.value, ConcaveClosureExact(v, a)->value, 1e-6);
    EXPECT_NEAR(r.closure.mu.Expectation(v), r.closure.value, 1e-8);
    EXPECT_EQ(MethodTag(r.closure), "anonymous");
    CheckStaged(r.poly, r.staged);
  }
}

TEST(AnonymousConcaveClosureTest, RefusesNonAnonymous) {
  SetFunction v = *SetFunction::Additive({1.0, 2.0});
  EXPECT_EQ(AnonymousConcaveClosure(v, Profile({0.5, 0.5})).status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(SolveAnonymousTest, OrInstance) {
  PersuasionInstance inst = *PersuasionInstance::Create(
      0.5, {AgentUtility{1.0, 0.0, 0.0, 0.5}, AgentUtility{1.0, 0.0, 0.0, 0.5}},
      *SetFunction::Anonymous({0.0, 1.0, 1.0}));
  AnonymousSolution s = *SolveAnonymous(inst);
  EXPECT_NEAR(s.closure.closure.value, 1.0, 1e-12);
  EXPECT_NEAR(s.revenue, 1.0, 1e-12);
  EXPECT_TRUE(VerifyIncentiveCompatibility(s.policy, inst).ok);
}

TEST(SolveAnonymousTest, CountingUtility) {
  PersuasionInstance inst = *PersuasionInstance::Create(
      0.5, {AgentUtility{1.0, 0.0, 0.0, 0.3}, AgentUtility{1.0, 0.0, 0.0, 0.7}},
      *SetFunction::Anonymous({0.0, 1.0, 2.0}));
  AnonymousSolution s = *SolveAnonymous(inst);
  EXPECT_NEAR(s.closure.closure.value, 1.0, 1e-12);
  EXPECT_NEAR(s.revenue, 1.5, 1e-12);
}

TEST(SolveAnonymousTest, ZeroLevelsNeverLie) {
  PersuasionInstance inst = *PersuasionInstance::Create(
      0.4,
      {AgentUtility{1.0, 0.0, 0.0, 1e-9}, AgentUtility{1.0, 0.0, 0.0, 1e-9}},
      *SetFunction::Anonymous({0.1, 1.0, 1.0}));
  AnonymousSolution s = *SolveAnonymous(inst);
  EXPECT_NEAR(s.revenue, 0.4 * 1.0 + 0.6 * 0.1, 1e-8);
}

}  // namespace
}  // namespace persuasion
