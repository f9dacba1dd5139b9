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

#include "persuasion/lp.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace persuasion {
namespace {

constexpr double kPivotTolerance = 1e-10;
constexpr double kCostTolerance = 1e-10;

absl::Status Validate(const LinearProgram& lp) {
  const std::size_t n = lp.objective.size();
  if (!lp.lower_bounds.empty() && lp.lower_bounds.size() != n) {
    return absl::InvalidArgumentError(
        absl::StrCat("lower_bounds has ", lp.lower_bounds.size(),
                     " entries for ", n, " variables"));
  }
  for (double c : lp.objective) {
    if (!std::isfinite(c)) {
      return absl::InvalidArgumentError("objective has a non-finite entry");
    }
  }
  for (double l : lp.lower_bounds) {
    if (!std::isfinite(l)) {
      return absl::InvalidArgumentError("lower bound is not finite");
    }
  }
  for (std::size_t r = 0; r < lp.constraints.size(); ++r) {
    const LinearConstraint& row = lp.constraints[r];
    if (row.coefficients.size() != n) {
      return absl::InvalidArgumentError(
          absl::StrCat("constraint ", r, " has ", row.coefficients.size(),
                       " coefficients for ", n, " variables"));
    }
    if (!std::isfinite(row.rhs)) {
      return absl::InvalidArgumentError(
          absl::StrCat("constraint ", r, " has a non-finite rhs"));
    }
    for (double a : row.coefficients) {
      if (!std::isfinite(a)) {
        return absl::InvalidArgumentError(
            absl::StrCat("constraint ", r, " has a non-finite coefficient"));
      }
    }
  }
  return absl::OkStatus();
}

// Row-major dense tableau. The last row holds reduced costs; the last
// column holds the right-hand side.
class Tableau {
 public:
  Tableau(int rows, int cols)
      : rows_(rows),
        cols_(cols),
        data_((rows + 1) * (cols + 1), 0.0),
        basis_(rows, -1) {}

  double& at(int r, int c) { return data_[r * (cols_ + 1) + c]; }
  double at(int r, int c) const { return data_[r * (cols_ + 1) + c]; }
  double& rhs(int r) { return at(r, cols_); }
  double& cost(int c) { return at(rows_, c); }
  double objective_value() const { return at(rows_, cols_); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::vector<int>& basis() { return basis_; }

  // Installs "maximize costs·x" in the reduced-cost row, priced out
  // against the current basis.
  void SetObjective(const std::vector<double>& costs) {
    for (int c = 0; c <= cols_; ++c) cost(c) = c < cols_ ? -costs[c] : 0.0;
    for (int r = 0; r < rows_; ++r) {
      const double cb = costs[basis_[r]];
      if (cb == 0.0) continue;
      for (int c = 0; c <= cols_; ++c) at(rows_, c) += cb * at(r, c);
    }
  }

  void Pivot(int pr, int pc) {
    const double inv = 1.0 / at(pr, pc);
    for (int c = 0; c <= cols_; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (int r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double factor = at(r, pc);
      if (factor == 0.0) continue;
      double* dst = &data_[r * (cols_ + 1)];
      const double* src = &data_[pr * (cols_ + 1)];
      for (int c = 0; c <= cols_; ++c) dst[c] -= factor * src[c];
      at(r, pc) = 0.0;
    }
    basis_[pr] = pc;
  }

  enum class Outcome { kOptimal, kUnbounded, kIterationLimit };

  // Bland's rule: lowest-index improving column enters; among tied ratios
  // the row whose basic variable has the lowest index leaves.
  Outcome Run(const std::vector<bool>& may_enter, long max_iterations) {
    for (long iter = 0; iter < max_iterations; ++iter) {
      int enter = -1;
      for (int c = 0; c < cols_; ++c) {
        if (may_enter[c] && cost(c) < -kCostTolerance) {
          enter = c;
          break;
        }
      }
      if (enter < 0) return Outcome::kOptimal;
      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int r = 0; r < rows_; ++r) {
        const double a = at(r, enter);
        if (a <= kPivotTolerance) continue;
        const double ratio = std::max(rhs(r), 0.0) / a;
        if (leave < 0 || ratio < best_ratio - 1e-14) {
          best_ratio = ratio;
          leave = r;
        } else if (ratio <= best_ratio + 1e-14 && basis_[r] < basis_[leave]) {
          leave = r;
        }
      }
      if (leave < 0) return Outcome::kUnbounded;
      Pivot(leave, enter);
    }
    return Outcome::kIterationLimit;
  }

 private:
  int rows_;
  int cols_;
  std::vector<double> data_;
  std::vector<int> basis_;
};

absl::Status CheckSolution(const LinearProgram& lp,
                           const std::vector<double>& x) {
  const double tol = kLpFeasibilityTolerance;
  for (int j = 0; j < lp.num_variables(); ++j) {
    const double lb = lp.lower_bounds.empty() ? 0.0 : lp.lower_bounds[j];
    if (x[j] < lb - tol) {
      return absl::InternalError(absl::StrCat(
          "simplex numerical breakdown: variable ", j, " below its bound"));
    }
  }
  for (int r = 0; r < lp.num_constraints(); ++r) {
    const LinearConstraint& row = lp.constraints[r];
    double lhs = 0.0;
    double scale = std::max(1.0, std::abs(row.rhs));
    for (int j = 0; j < lp.num_variables(); ++j) {
      lhs += row.coefficients[j] * x[j];
      scale = std::max(scale, std::abs(row.coefficients[j] * x[j]));
    }
    const double slack = tol * scale;
    const bool ok =
        (row.relation == Relation::kLessEqual && lhs <= row.rhs + slack) ||
        (row.relation == Relation::kGreaterEqual && lhs >= row.rhs - slack) ||
        (row.relation == Relation::kEqual && std::abs(lhs - row.rhs) <= slack);
    if (!ok) {
      return absl::InternalError(
          absl::StrCat("simplex numerical breakdown: constraint ", r,
                       " violated by the computed optimum (lhs ", lhs, ", rhs ",
                       row.rhs, ")"));
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<LpSolution> SolveLp(const LinearProgram& lp) {
  if (auto s = Validate(lp); !s.ok()) return s;
  const int n = lp.num_variables();
  const int m = lp.num_constraints();

  // Substitute x = y + lb so that y >= 0, then flip rows to a
  // nonnegative right-hand side.
  std::vector<double> rhs(m);
  std::vector<double> sign(m, 1.0);
  std::vector<Relation> relation(m);
  for (int r = 0; r < m; ++r) {
    const LinearConstraint& row = lp.constraints[r];
    double b = row.rhs;
    if (!lp.lower_bounds.empty()) {
      for (int j = 0; j < n; ++j) b -= row.coefficients[j] * lp.lower_bounds[j];
    }
    relation[r] = row.relation;
    if (b < 0.0) {
      sign[r] = -1.0;
      b = -b;
      if (row.relation == Relation::kLessEqual) {
        relation[r] = Relation::kGreaterEqual;
      } else if (row.relation == Relation::kGreaterEqual) {
        relation[r] = Relation::kLessEqual;
      }
    }
    rhs[r] = b;
  }

  // Column layout: structural | slack/surplus | artificial.
  int num_slack = 0;
  int num_artificial = 0;
  for (int r = 0; r < m; ++r) {
    if (relation[r] != Relation::kEqual) ++num_slack;
    if (relation[r] != Relation::kLessEqual) ++num_artificial;
  }
  const int first_slack = n;
  const int first_artificial = n + num_slack;
  const int cols = n + num_slack + num_artificial;

  Tableau t(m, cols);
  int next_slack = first_slack;
  int next_artificial = first_artificial;
  for (int r = 0; r < m; ++r) {
    const LinearConstraint& row = lp.constraints[r];
    for (int j = 0; j < n; ++j) t.at(r, j) = sign[r] * row.coefficients[j];
    t.rhs(r) = rhs[r];
    if (relation[r] == Relation::kLessEqual) {
      t.at(r, next_slack) = 1.0;
      t.basis()[r] = next_slack++;
    } else {
      if (relation[r] == Relation::kGreaterEqual) {
        t.at(r, next_slack++) = -1.0;
      }
      t.at(r, next_artificial) = 1.0;
      t.basis()[r] = next_artificial++;
    }
  }

  const long max_iterations = 200L * (cols + m) + 10000;
  LpSolution solution;

  if (num_artificial > 0) {
    std::vector<double> phase1(cols, 0.0);
    for (int c = first_artificial; c < cols; ++c) phase1[c] = -1.0;
    t.SetObjective(phase1);
    std::vector<bool> may_enter(cols, true);
    if (t.Run(may_enter, max_iterations) != Tableau::Outcome::kOptimal) {
      return absl::InternalError("simplex phase 1 did not converge");
    }
    double rhs_scale = 1.0;
    for (double b : rhs) rhs_scale = std::max(rhs_scale, b);
    if (t.objective_value() < -1e-9 * rhs_scale) {
      solution.status = LpStatus::kInfeasible;
      return solution;
    }
    // Drive zero-valued artificials out of the basis where possible; rows
    // where that fails are redundant and stay pinned at zero.
    for (int r = 0; r < m; ++r) {
      if (t.basis()[r] < first_artificial) continue;
      int best = -1;
      double best_abs = kPivotTolerance;
      for (int c = 0; c < first_artificial; ++c) {
        if (std::abs(t.at(r, c)) > best_abs) {
          best_abs = std::abs(t.at(r, c));
          best = c;
        }
      }
      if (best >= 0) t.Pivot(r, best);
    }
  }

  std::vector<double> phase2(cols, 0.0);
  for (int j = 0; j < n; ++j) phase2[j] = lp.objective[j];
  t.SetObjective(phase2);
  std::vector<bool> may_enter(cols, true);
  for (int c = first_artificial; c < cols; ++c) may_enter[c] = false;
  switch (t.Run(may_enter, max_iterations)) {
    case Tableau::Outcome::kUnbounded:
      solution.status = LpStatus::kUnbounded;
      return solution;
    case Tableau::Outcome::kIterationLimit:
      return absl::InternalError("simplex phase 2 hit the iteration limit");
    case Tableau::Outcome::kOptimal:
      break;
  }

  std::vector<double> x(n, 0.0);
  for (int r = 0; r < m; ++r) {
    const int b = t.basis()[r];
    if (b < n) x[b] = std::max(t.rhs(r), 0.0);
  }
  if (!lp.lower_bounds.empty()) {
    for (int j = 0; j < n; ++j) x[j] += lp.lower_bounds[j];
  }
  if (auto s = CheckSolution(lp, x); !s.ok()) return s;
  solution.status = LpStatus::kOptimal;
  solution.objective = 0.0;
  for (int j = 0; j < n; ++j) solution.objective += lp.objective[j] * x[j];
  solution.values = std::move(x);
  return solution;
}

absl::StatusOr<LpSolution> BasicOptimalSolution(const LinearProgram& lp) {
  absl::StatusOr<LpSolution> solution = SolveLp(lp);
  if (!solution.ok() || solution->status != LpStatus::kOptimal) {
    return solution;
  }
  int support = 0;
  for (int j = 0; j < lp.num_variables(); ++j) {
    const double lb = lp.lower_bounds.empty() ? 0.0 : lp.lower_bounds[j];
    if (solution->values[j] != lb) ++support;
  }
  if (support > lp.num_constraints()) {
    return absl::InternalError(
        absl::StrCat("simplex returned a non-vertex solution with support ",
                     support, " > ", lp.num_constraints(), " rows"));
  }
  return solution;
}

}  // namespace persuasion
