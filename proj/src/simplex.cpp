// Copyright 2026 The prophetcomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "prophetcomp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace prophetcomp {
namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kCostTol = 1e-11;
constexpr double kFeasTol = 1e-9;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, 0.0), b_(rows, 0.0),
        basis_(rows, 0) {}

  double& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  double& rhs(std::size_t i) { return b_[i]; }
  std::size_t& basis(std::size_t i) { return basis_[i]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t r, std::size_t c, std::vector<double>& cost,
             double& cost_value) {
    const double inv = 1.0 / at(r, c);
    double* pr = &a_[r * cols_];
    for (std::size_t j = 0; j < cols_; ++j) pr[j] *= inv;
    b_[r] *= inv;
    pr[c] = 1.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      double* pi = &a_[i * cols_];
      const double factor = pi[c];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) pi[j] -= factor * pr[j];
      pi[c] = 0.0;
      b_[i] -= factor * b_[r];
      if (std::fabs(b_[i]) < 1e-14) b_[i] = std::max(0.0, b_[i]);
    }
    const double factor = cost[c];
    if (factor != 0.0) {
      for (std::size_t j = 0; j < cols_; ++j) cost[j] -= factor * pr[j];
      cost[c] = 0.0;
      cost_value -= factor * b_[r];
    }
    basis_[r] = c;
  }

  void drop_row(std::size_t r) {
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
             a_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
    b_.erase(b_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> a_;
  std::vector<double> b_;
  std::vector<std::size_t> basis_;
};

struct Phase {
  std::size_t pivots = 0;
  LpStatus status = LpStatus::kOptimal;
};

// Minimizes the reduced-cost row `cost` (with value `cost_value` = -z) over
// columns j < `allowed`. `lex_cols` are the initial identity columns, in row
// order; they carry B^{-1} for the lexicographic tie-break.
Phase run_phase(Tableau& t, std::vector<double>& cost, double& cost_value,
                std::size_t allowed, const std::vector<std::size_t>& lex_cols,
                std::size_t max_pivots) {
  Phase out;
  while (out.pivots < max_pivots) {
    std::size_t enter = allowed;
    double best = -kCostTol;
    for (std::size_t j = 0; j < allowed; ++j) {
      if (cost[j] < best) {
        best = cost[j];
        enter = j;
      }
    }
    if (enter == allowed) return out;

    std::size_t leave = t.rows();
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.rows(); ++i) {
      const double piv = t.at(i, enter);
      if (piv <= kPivotTol) continue;
      const double ratio = t.rhs(i) / piv;
      if (leave == t.rows() || ratio < best_ratio - 1e-13 * (1.0 + best_ratio)) {
        leave = i;
        best_ratio = ratio;
        continue;
      }
      if (ratio > best_ratio + 1e-13 * (1.0 + best_ratio)) continue;
      // Tie: lexicographically smaller row of B^{-1} / pivot wins.
      const double piv_leave = t.at(leave, enter);
      for (const std::size_t c : lex_cols) {
        const double lhs = t.at(i, c) / piv;
        const double rhs = t.at(leave, c) / piv_leave;
        if (std::fabs(lhs - rhs) <= 1e-12 * (std::fabs(lhs) + std::fabs(rhs))) {
          continue;
        }
        if (lhs < rhs) {
          leave = i;
          best_ratio = ratio;
        }
        break;
      }
    }
    if (leave == t.rows()) {
      out.status = LpStatus::kUnbounded;
      return out;
    }
    t.pivot(leave, enter, cost, cost_value);
    ++out.pivots;
  }
  out.status = LpStatus::kIterationLimit;
  return out;
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.objective.size();
  const std::size_t m = lp.rows.size();
  for (const auto& row : lp.rows) {
    if (row.coeffs.size() != n) {
      throw std::invalid_argument("constraint width does not match objective");
    }
  }

  // Column layout: [original | slack/surplus | artificial].
  std::size_t num_slack = 0;
  std::size_t num_art = 0;
  for (const auto& row : lp.rows) {
    if (row.sense != Sense::kEqual) ++num_slack;
    if (row.sense != Sense::kLessEqual || row.rhs < 0.0) ++num_art;
  }
  const std::size_t art_begin = n + num_slack;
  const std::size_t cols = art_begin + num_art;
  Tableau t(m, cols);
  std::vector<std::size_t> lex_cols(m);

  std::size_t slack = n;
  std::size_t art = art_begin;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = lp.rows[i];
    const double sign = row.rhs < 0.0 ? -1.0 : 1.0;
    Sense sense = row.sense;
    if (sign < 0.0 && sense != Sense::kEqual) {
      sense = sense == Sense::kLessEqual ? Sense::kGreaterEqual
                                         : Sense::kLessEqual;
    }
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = sign * row.coeffs[j];
    t.rhs(i) = sign * row.rhs;
    if (row.sense != Sense::kEqual) {
      t.at(i, slack) = sense == Sense::kLessEqual ? 1.0 : -1.0;
      if (sense == Sense::kLessEqual) {
        t.basis(i) = slack;
        lex_cols[i] = slack;
      }
      ++slack;
    }
    if (sense != Sense::kLessEqual) {
      t.at(i, art) = 1.0;
      t.basis(i) = art;
      lex_cols[i] = art;
      ++art;
    }
  }

  const std::size_t max_pivots = 50 * (m + cols) + 1000;
  LpSolution sol;

  // Phase 1: minimize the sum of artificials.
  std::vector<double> cost(cols, 0.0);
  double cost_value = 0.0;
  for (std::size_t j = art_begin; j < cols; ++j) cost[j] = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis(i) >= art_begin) {
      for (std::size_t j = 0; j < cols; ++j) cost[j] -= t.at(i, j);
      cost_value -= t.rhs(i);
    }
  }
  Phase p1 = run_phase(t, cost, cost_value, cols, lex_cols, max_pivots);
  sol.pivots += p1.pivots;
  if (p1.status == LpStatus::kIterationLimit) {
    sol.status = p1.status;
    return sol;
  }
  if (-cost_value > kFeasTol) {
    sol.status = LpStatus::kInfeasible;
    return sol;
  }
  // Drive basic artificials (at level zero) out of the basis.
  for (std::size_t i = 0; i < t.rows();) {
    if (t.basis(i) < art_begin) {
      ++i;
      continue;
    }
    std::size_t col = art_begin;
    for (std::size_t j = 0; j < art_begin; ++j) {
      if (std::fabs(t.at(i, j)) > kPivotTol) {
        col = j;
        break;
      }
    }
    if (col == art_begin) {
      t.drop_row(i);
      lex_cols.erase(lex_cols.begin() + static_cast<std::ptrdiff_t>(i));
      continue;
    }
    t.pivot(i, col, cost, cost_value);
    ++sol.pivots;
    ++i;
  }

  // Phase 2 over the original and slack columns.
  std::fill(cost.begin(), cost.end(), 0.0);
  cost_value = 0.0;
  for (std::size_t j = 0; j < n; ++j) cost[j] = lp.objective[j];
  for (std::size_t i = 0; i < t.rows(); ++i) {
    const double cb = t.basis(i) < n ? lp.objective[t.basis(i)] : 0.0;
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j < cols; ++j) cost[j] -= cb * t.at(i, j);
    cost_value -= cb * t.rhs(i);
  }
  Phase p2 = run_phase(t, cost, cost_value, art_begin, lex_cols, max_pivots);
  sol.pivots += p2.pivots;
  sol.status = p2.status;
  if (p2.status != LpStatus::kOptimal) return sol;

  sol.x.assign(n, 0.0);
  for (std::size_t i = 0; i < t.rows(); ++i) {
    if (t.basis(i) < n) sol.x[t.basis(i)] = t.rhs(i);
  }
  sol.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.x[j];
  return sol;
}

}  // namespace prophetcomp
