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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "persuasion/anonymous_solver.h"
#include "persuasion/closure_exact.h"
#include "persuasion/core_model.h"
#include "persuasion/lp.h"
#include "persuasion/random.h"
#include "persuasion/simulate.h"
#include "persuasion/submodular_approx.h"
#include "test_util.h"

namespace persuasion {
namespace {

constexpr double kAnonymousTolerance = 1e-6;
constexpr double kBetaTolerance = 1e-8;
constexpr double kStagedMassTolerance = 1e-9;
constexpr double kStagedMarginalTolerance = 1e-8;
constexpr double kRatioSlack = 0.01;
constexpr double kIcMarginalTolerance = 1e-8;
constexpr double kSimulationSigmas = 3.0;
constexpr double kGadgetGamma = 1e-3;
constexpr double kGadgetTolerance = 1e-4;
constexpr double kShapeTolerance = 1e-8;
constexpr double kAdditiveTolerance = 1e-6;

constexpr int kAnonymousInstances = 240;
constexpr int kBetaCases = 300;
constexpr int kSubmodularInstances = 120;
constexpr int kSimulationInstances = 20;
constexpr std::int64_t kSimulationTrials = 100000;
constexpr int kGadgetPairs = 60;
constexpr int kShapePairs = 150;
constexpr int kAdditiveInstances = 60;

struct Outcome {
  bool pass = true;
  std::string detail;
  int failures = 0;
  std::string first_failure;

  void Fail(const std::string& why) {
    pass = false;
    if (failures++ == 0) first_failure = why;
  }
};

std::vector<PersuasionInstance> g_emitted_instances;
std::vector<SignalingPolicy> g_emitted_policies;
std::vector<std::string> g_emitted_labels;

void Record(const PersuasionInstance& inst, const SignalingPolicy& policy,
            const std::string& label) {
  g_emitted_instances.push_back(inst);
  g_emitted_policies.push_back(policy);
  g_emitted_labels.push_back(label);
}

// Agents whose persuasion level under `gamma` is exactly a_i (up to
// rounding), with a randomized u00 − u01 scale.
std::vector<AgentUtility> AgentsFor(Rng& rng, const std::vector<double>& a,
                                    double gamma) {
  std::vector<AgentUtility> agents;
  for (double level : a) {
    AgentUtility u;
    u.u00 = 1.0 + rng.Uniform01();
    u.u01 = rng.Uniform01() * 0.5;
    u.u10 = rng.Uniform01() * 0.5;
    const double target = std::max(level, 1e-6);
    u.u11 = u.u10 + target * (1 - gamma) / gamma * (u.u00 - u.u01);
    agents.push_back(u);
  }
  return agents;
}

std::string Fmt(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.3g", x);
  return buffer;
}

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
    for (std::size_t c = 0; c < columns.size(); ++c) {
      row[c] = static_cast<double>(columns[c] >> i & 1);
    }
    lp.AddConstraint(row, Relation::kLessEqual, a[i]);
  }
  if (columns.size() <= 5) return testing::BruteForceLpOptimum(lp);
  absl::StatusOr<LpSolution> s = SolveLp(lp);
  return s.ok() && s->status == LpStatus::kOptimal ? s->objective : NAN;
}

std::vector<AnonymousClosureResult> g_anonymous_results;

Outcome AnonymousExactness() {
  Outcome out;
  Rng rng({1});
  double worst = 0.0;
  for (int t = 0; t < kAnonymousInstances; ++t) {
    const int n = 2 + t % 9;
    std::vector<double> a = testing::RandomLevels(rng, n);
    SetFunction v = testing::RandomAnonymous(rng, n);
    const double gamma = 0.1 + 0.8 * rng.Uniform01();
    absl::StatusOr<PersuasionInstance> inst =
        PersuasionInstance::Create(gamma, AgentsFor(rng, a, gamma), v);
    if (!inst.ok()) {
      out.Fail(std::string(inst.status().message()));
      continue;
    }
    const PersuasionProfile profile = ProfileOf(*inst);
    absl::StatusOr<AnonymousSolution> solved = SolveAnonymous(*inst);
    absl::StatusOr<ClosureResult> exact = ConcaveClosureExact(v, profile);
    if (!solved.ok() || !exact.ok()) {
      out.Fail(absl::StrCat(
          "instance ", t, ": ",
          solved.ok() ? exact.status().message() : solved.status().message()));
      continue;
    }
    const double gap = std::abs(solved->closure.closure.value - exact->value);
    worst = std::max(worst, gap);
    if (gap > kAnonymousTolerance) {
      out.Fail(absl::StrCat("instance ", t, " (n=", n, ") gap ", gap));
    }
    g_anonymous_results.push_back(solved->closure);
    Record(*inst, solved->policy, absl::StrCat("anonymous #", t));
    absl::StatusOr<SignalingPolicy> exact_policy =
        PolicyFromDistribution(exact->mu, *inst);
    if (exact_policy.ok()) {
      Record(*inst, *exact_policy, absl::StrCat("exact #", t));
    } else {
      out.Fail(std::string(exact_policy.status().message()));
    }
  }
  out.detail = absl::StrCat(kAnonymousInstances, " instances, n in [2,10], ",
                            "max |anonymous - exact| = ", Fmt(worst), " (tol ",
                            Fmt(kAnonymousTolerance), ")");
  return out;
}

Outcome BetaCorrectness() {
  Outcome out;
  Rng rng({2});
  double worst = 0.0;
  for (int t = 0; t < kBetaCases; ++t) {
    const int n = 1 + static_cast<int>(rng.UniformInt(8));
    std::vector<double> a = testing::RandomLevels(rng, n);
    std::sort(a.rbegin(), a.rend());
    const int k = 1 + static_cast<int>(rng.UniformInt(n));
    absl::StatusOr<double> beta = BetaK(a, k);
    const double oracle = BetaByLp(a, k);
    if (!beta.ok() || std::isnan(oracle)) {
      out.Fail(absl::StrCat("case ", t, ": solver error"));
      continue;
    }
    const double gap = std::abs(*beta - oracle);
    worst = std::max(worst, gap);
    if (gap > kBetaTolerance) {
      out.Fail(absl::StrCat("case ", t, " (n=", n, ", k=", k, ") gap ", gap));
    }
  }
  out.detail = absl::StrCat(kBetaCases, " sorted profiles, n <= 8, ",
                            "max |beta_k - LP| = ", Fmt(worst), " (tol ",
                            Fmt(kBetaTolerance), ")");
  return out;
}

Outcome StagedConstruction() {
  Outcome out;
  double worst_mass = 0.0;
  double worst_excess = 0.0;
  double worst_monotone = 0.0;
  for (std::size_t t = 0; t < g_anonymous_results.size(); ++t) {
    const PolyLpSolution& poly = g_anonymous_results[t].poly;
    const StagedMeasure& staged = g_anonymous_results[t].staged;
    const int n = poly.n;
    const std::vector<double> mass = PerCardinalityMass(staged);
    for (int k = 0; k <= n; ++k) {
      worst_mass = std::max(worst_mass, std::abs(mass[k] - poly.alpha[k]));
    }
    const auto marg = PerCardinalityMarginals(staged);
    std::vector<double> total(n, 0.0);
    for (int k = 1; k <= n; ++k) {
      for (int p = 0; p < n; ++p) {
        total[p] += marg[k][p];
        if (p > 0) {
          worst_monotone =
              std::max(worst_monotone, marg[k][p] - marg[k][p - 1]);
        }
      }
    }
    for (int p = 0; p < n; ++p) {
      worst_excess = std::max(worst_excess, total[p] - poly.sorted_levels[p]);
    }
    if (worst_mass > kStagedMassTolerance ||
        worst_excess > kStagedMarginalTolerance ||
        worst_monotone > kStagedMassTolerance) {
      out.Fail(absl::StrCat("solution ", t));
    }
  }
  out.detail = absl::StrCat(
      g_anonymous_results.size(),
      " solutions; max |mass - alpha| = ", Fmt(worst_mass), " (tol ",
      Fmt(kStagedMassTolerance),
      "), max marginal excess = ", Fmt(std::max(0.0, worst_excess)), " (tol ",
      Fmt(kStagedMarginalTolerance),
      "), max monotonicity breach = ", Fmt(std::max(0.0, worst_monotone)));
  return out;
}

Outcome SubmodularRatio() {
  Outcome out;
  Rng rng({4});
  const double cg_bound = 1.0 - std::exp(-1.0) - kRatioSlack;
  double min_cg = INFINITY;
  double min_greedy = INFINITY;
  double sum_greedy = 0.0;
  int counted = 0;
  for (int t = 0; t < kSubmodularInstances; ++t) {
    const int n = 3 + t % 8;
    SetFunction v = t % 2 == 0 ? testing::RandomCoverage(rng, n)
                               : testing::RandomExplicitSubmodular(rng, n);
    std::vector<double> a = testing::RandomLevels(rng, n);
    const double gamma = 0.2 + 0.6 * rng.Uniform01();
    absl::StatusOr<PersuasionInstance> inst =
        PersuasionInstance::Create(gamma, AgentsFor(rng, a, gamma), v);
    if (!inst.ok()) {
      out.Fail(std::string(inst.status().message()));
      continue;
    }
    const PersuasionProfile profile = ProfileOf(*inst);
    absl::StatusOr<ClosureResult> exact = ConcaveClosureExact(v, profile);
    if (!exact.ok()) {
      out.Fail(std::string(exact.status().message()));
      continue;
    }
    SubmodularConfig config;
    config.delta = CoarseGridDelta(n);
    config.seed = static_cast<std::uint64_t>(t);
    absl::StatusOr<SubmodularSolution> greedy = SolveSubmodular(*inst, config);
    config.algorithm = MatroidAlgorithm::kContinuousGreedy;
    absl::StatusOr<SubmodularSolution> cg = SolveSubmodular(*inst, config);
    if (!greedy.ok() || !cg.ok()) {
      out.Fail(absl::StrCat(
          "instance ", t, ": ",
          greedy.ok() ? cg.status().message() : greedy.status().message()));
      continue;
    }
    Record(*inst, greedy->policy, absl::StrCat("greedy #", t));
    Record(*inst, cg->policy, absl::StrCat("continuous greedy #", t));
    if (exact->value <= 1e-12) continue;
    const double r_greedy = greedy->closure.closure.value / exact->value;
    const double r_cg = cg->closure.closure.value / exact->value;
    min_greedy = std::min(min_greedy, r_greedy);
    min_cg = std::min(min_cg, r_cg);
    sum_greedy += r_greedy;
    ++counted;
    if (r_cg < cg_bound) {
      out.Fail(absl::StrCat("instance ", t, " continuous greedy ratio ", r_cg));
    }
    if (r_greedy < 0.5) {
      out.Fail(absl::StrCat("instance ", t, " greedy ratio ", r_greedy));
    }
  }
  out.detail = absl::StrCat(
      kSubmodularInstances, " coverage/explicit instances, n in [3,10], ",
      "grid 1/(n^2(n+1)); min ratio continuous greedy = ", Fmt(min_cg),
      " (need ", Fmt(cg_bound), "), greedy min = ", Fmt(min_greedy),
      " mean = ", Fmt(sum_greedy / std::max(counted, 1)), " (need 0.5)");
  return out;
}

Outcome AdditiveClosedForm() {
  Outcome out;
  Rng rng({9});
  double worst = 0.0;
  int paths = 0;
  for (int t = 0; t < kAdditiveInstances; ++t) {
    const int n = 1 + t % 10;
    // Every third instance has equal weights, which makes it anonymous.
    std::vector<double> w(n);
    const double common = 0.5 + rng.Uniform01();
    for (double& x : w) x = t % 3 == 0 ? common : 2.0 * rng.Uniform01();
    SetFunction v = *SetFunction::Additive(w);
    std::vector<double> a = testing::RandomLevels(rng, n);
    const double gamma = 0.2 + 0.6 * rng.Uniform01();
    absl::StatusOr<PersuasionInstance> inst =
        PersuasionInstance::Create(gamma, AgentsFor(rng, a, gamma), v);
    if (!inst.ok()) {
      out.Fail(std::string(inst.status().message()));
      continue;
    }
    const PersuasionProfile profile = ProfileOf(*inst);
    double expected = 0.0;
    for (int i = 0; i < n; ++i) expected += w[i] * profile[i];

    auto check = [&](const std::string& path, absl::StatusOr<double> value) {
      ++paths;
      if (!value.ok()) {
        out.Fail(absl::StrCat(path, " #", t, ": ", value.status().message()));
        return;
      }
      const double gap = std::abs(*value - expected);
      worst = std::max(worst, gap);
      if (gap > kAdditiveTolerance) {
        out.Fail(absl::StrCat(path, " #", t, " gap ", gap));
      }
    };
    absl::StatusOr<ClosureResult> exact = ConcaveClosureExact(v, profile);
    check("exact",
          exact.ok() ? absl::StatusOr<double>(exact->value) : exact.status());
    if (exact.ok()) {
      absl::StatusOr<SignalingPolicy> p =
          PolicyFromDistribution(exact->mu, *inst);
      if (p.ok()) Record(*inst, *p, absl::StrCat("additive exact #", t));
    }
    for (MatroidAlgorithm algo :
         {MatroidAlgorithm::kGreedy, MatroidAlgorithm::kContinuousGreedy}) {
      SubmodularConfig config;
      config.algorithm = algo;
      config.seed = static_cast<std::uint64_t>(t);
      if (n > 6) config.delta = CoarseGridDelta(n);
      absl::StatusOr<SubmodularSolution> s = SolveSubmodular(*inst, config);
      const std::string name =
          algo == MatroidAlgorithm::kGreedy ? "greedy" : "continuous greedy";
      check(name, s.ok() ? absl::StatusOr<double>(s->closure.closure.value)
                         : s.status());
      if (s.ok()) Record(*inst, s->policy, absl::StrCat("additive ", name));
    }
    if (IsAnonymous(v).has_value()) {
      absl::StatusOr<AnonymousSolution> s = SolveAnonymous(*inst);
      check("anonymous", s.ok()
                             ? absl::StatusOr<double>(s->closure.closure.value)
                             : s.status());
      if (s.ok()) Record(*inst, s->policy, "additive anonymous");
    }
  }
  out.detail =
      absl::StrCat(kAdditiveInstances, " additive instances, ", paths,
                   " solver paths, max |value - sum w_i a_i| = ", Fmt(worst),
                   " (tol ", Fmt(kAdditiveTolerance), ")");
  return out;
}

Outcome SimulationConsistency() {
  Outcome out;
  Rng rng({6});
  int within = 0;
  for (int t = 0; t < kSimulationInstances; ++t) {
    const int n = 2 + t % 5;
    std::vector<double> a = testing::RandomLevels(rng, n);
    const double gamma = 0.2 + 0.6 * rng.Uniform01();
    const bool anonymous = t % 2 == 0;
    SetFunction v = anonymous ? testing::RandomAnonymous(rng, n)
                              : testing::RandomCoverage(rng, n);
    absl::StatusOr<PersuasionInstance> inst =
        PersuasionInstance::Create(gamma, AgentsFor(rng, a, gamma), v);
    if (!inst.ok()) {
      out.Fail(std::string(inst.status().message()));
      continue;
    }
    absl::StatusOr<SignalingPolicy> policy = absl::InternalError("unset");
    absl::StatusOr<double> revenue = absl::InternalError("unset");
    if (anonymous) {
      absl::StatusOr<AnonymousSolution> s = SolveAnonymous(*inst);
      if (s.ok()) {
        policy = s->policy;
        revenue = s->revenue;
      }
    } else {
      absl::StatusOr<SubmodularSolution> s = SolveSubmodular(*inst, {});
      if (s.ok()) {
        policy = s->policy;
        revenue = s->revenue;
      }
    }
    if (!policy.ok()) {
      out.Fail(absl::StrCat("instance ", t, ": solver failed"));
      continue;
    }
    Record(*inst, *policy, absl::StrCat("simulated #", t));
    absl::StatusOr<SimulationReport> report = RunSimulation(
        *policy, *inst, kSimulationTrials, static_cast<std::uint64_t>(t));
    if (!report.ok()) {
      out.Fail(absl::StrCat("instance ", t, ": ", report.status().message()));
      continue;
    }
    if (report->disobedience_count != 0) {
      out.Fail(absl::StrCat("instance ", t, ": disobedience"));
    }
    const double deviation = std::abs(report->empirical_revenue - *revenue);
    if (deviation <= kSimulationSigmas * report->std_error + 1e-12) ++within;
  }
  if (within < kSimulationInstances - 1) {
    out.Fail(absl::StrCat(within, " of ", kSimulationInstances, " within"));
  }
  out.detail =
      absl::StrCat(within, " of ", kSimulationInstances,
                   " instances within 3 standard errors at ", kSimulationTrials,
                   " trials (need ", kSimulationInstances - 1, ")");
  return out;
}

Outcome GadgetRoundTrip() {
  Outcome out;
  Rng rng({7});
  double worst = 0.0;
  for (int t = 0; t < kGadgetPairs; ++t) {
    const int n = 1 + t % 8;
    SetFunction v = t % 3 == 0   ? testing::RandomAnonymous(rng, n)
                    : t % 3 == 1 ? testing::RandomCoverage(rng, n)
                                 : testing::RandomExplicitMonotone(rng, n);
    std::vector<double> a(n);
    for (double& x : a)
      x = rng.Bernoulli(0.1) ? 1.0 : 0.01 + 0.99 * rng.Uniform01();
    const PersuasionProfile profile = *PersuasionProfile::Create(a);
    absl::StatusOr<PersuasionInstance> gadget =
        GadgetFromClosure(v, profile, kGadgetGamma);
    absl::StatusOr<ClosureResult> direct = ConcaveClosureExact(v, profile);
    if (!gadget.ok() || !direct.ok()) {
      out.Fail(absl::StrCat("pair ", t, ": setup failed"));
      continue;
    }
    absl::StatusOr<double> revenue = absl::InternalError("unset");
    if (IsAnonymous(v).has_value()) {
      absl::StatusOr<AnonymousSolution> s = SolveAnonymous(*gadget);
      if (s.ok()) {
        revenue = s->revenue;
        Record(*gadget, s->policy, absl::StrCat("gadget anonymous #", t));
      }
    } else {
      absl::StatusOr<ClosureResult> c =
          ConcaveClosureExact(v, ProfileOf(*gadget));
      if (c.ok()) {
        absl::StatusOr<SignalingPolicy> p =
            PolicyFromDistribution(c->mu, *gadget);
        if (p.ok()) {
          revenue = Revenue(*p, *gadget);
          Record(*gadget, *p, absl::StrCat("gadget exact #", t));
        }
      }
    }
    if (!revenue.ok()) {
      out.Fail(absl::StrCat("pair ", t, ": solve failed"));
      continue;
    }
    AgentSet full(n);
    for (int i = 0; i < n; ++i) full[i] = i;
    const double recovered =
        (*revenue - kGadgetGamma * v.Value(full)) / (1 - kGadgetGamma);
    const double gap = std::abs(recovered - direct->value);
    worst = std::max(worst, gap);
    if (gap > kGadgetTolerance) {
      out.Fail(absl::StrCat("pair ", t, " gap ", gap));
    }
  }
  out.detail =
      absl::StrCat(kGadgetPairs, " (V, a) pairs at gamma = ", Fmt(kGadgetGamma),
                   "; max recovery error = ", Fmt(worst), " (tol ",
                   Fmt(kGadgetTolerance), ")");
  return out;
}

Outcome ClosureShape() {
  Outcome out;
  Rng rng({8});
  double worst_monotone = 0.0;
  double worst_concave = 0.0;
  for (int t = 0; t < kShapePairs; ++t) {
    const int n = 1 + t % 8;
    SetFunction v = t % 2 == 0 ? testing::RandomExplicitMonotone(rng, n)
                               : testing::RandomCoverage(rng, n);
    std::vector<double> lo = testing::RandomLevels(rng, n);
    std::vector<double> hi = lo;
    for (double& x : hi) x += (1.0 - x) * rng.Uniform01();
    std::vector<double> other = testing::RandomLevels(rng, n);
    const double lambda = rng.Uniform01();
    std::vector<double> mid(n);
    for (int i = 0; i < n; ++i) {
      mid[i] = lambda * lo[i] + (1 - lambda) * other[i];
    }
    auto value = [&](const std::vector<double>& a) {
      absl::StatusOr<ClosureResult> r =
          ConcaveClosureExact(v, *PersuasionProfile::Create(a));
      return r.ok() ? r->value : NAN;
    };
    const double v_lo = value(lo);
    const double v_hi = value(hi);
    const double v_other = value(other);
    const double v_mid = value(mid);
    if (std::isnan(v_lo + v_hi + v_other + v_mid)) {
      out.Fail(absl::StrCat("pair ", t, ": solver failed"));
      continue;
    }
    worst_monotone = std::max(worst_monotone, v_lo - v_hi);
    worst_concave =
        std::max(worst_concave, lambda * v_lo + (1 - lambda) * v_other - v_mid);
    if (v_lo > v_hi + kShapeTolerance ||
        v_mid < lambda * v_lo + (1 - lambda) * v_other - kShapeTolerance) {
      out.Fail(absl::StrCat("pair ", t));
    }
  }
  out.detail = absl::StrCat(
      kShapePairs, " pairs, n <= 8; max monotonicity breach = ",
      Fmt(std::max(0.0, worst_monotone)),
      ", max concavity breach = ", Fmt(std::max(0.0, worst_concave)), " (tol ",
      Fmt(kShapeTolerance), ")");
  return out;
}

Outcome IncentiveCompatibility() {
  Outcome out;
  for (std::size_t p = 0; p < g_emitted_policies.size(); ++p) {
    const PersuasionInstance& inst = g_emitted_instances[p];
    const IcReport report =
        VerifyIncentiveCompatibility(g_emitted_policies[p], inst);
    const PersuasionProfile a = ProfileOf(inst);
    bool ok = report.ok;
    for (int i = 0; i < inst.n(); ++i) {
      ok = ok && report.marginals[i] <= a[i] + kIcMarginalTolerance;
    }
    if (!ok) {
      out.Fail(
          absl::StrCat(g_emitted_labels[p],
                       report.violations.empty()
                           ? std::string()
                           : absl::StrCat(" agent ", report.violations[0].agent,
                                          ": ", report.violations[0].reason)));
    }
  }
  out.detail = absl::StrCat(g_emitted_policies.size() - out.failures, " of ",
                            g_emitted_policies.size(),
                            " emitted policies pass verification");
  return out;
}

int Main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  // Criterion 5 inspects the policies collected by the others, so it runs
  // last; results print in numeric order.
  const std::vector<Criterion> criteria = {
      {1, "anonymous exactness", AnonymousExactness},
      {2, "beta_k correctness", BetaCorrectness},
      {3, "staged construction", StagedConstruction},
      {4, "submodular ratio", SubmodularRatio},
      {6, "simulation consistency", SimulationConsistency},
      {7, "gadget round trip", GadgetRoundTrip},
      {8, "closure shape", ClosureShape},
      {9, "additive closed form", AdditiveClosedForm},
      {5, "feasibility and incentive compatibility", IncentiveCompatibility},
  };
  std::vector<std::string> lines(10);
  bool all = true;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    const Outcome o = c.run();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    all = all && o.pass;
    lines[c.id] =
        absl::StrCat(o.pass ? "PASS" : "FAIL", " criterion ", c.id, " (",
                     c.name, "): ", o.detail, " [", Fmt(seconds), " s]");
    if (!o.pass) {
      absl::StrAppend(&lines[c.id], " -- ", o.failures,
                      " failures, first: ", o.first_failure);
    }
  }
  for (int id = 1; id <= 9; ++id) std::printf("%s\n", lines[id].c_str());
  std::printf("%s\n", all ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED");
  return all ? 0 : 1;
}

}  // namespace
}  // namespace persuasion

int main() { return persuasion::Main(); }
