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

#ifndef PROPHETCOMP_SIMPLEX_HPP_
#define PROPHETCOMP_SIMPLEX_HPP_

// Small dense two-phase tableau simplex: minimize c^T x subject to row
// constraints and x >= 0. Dantzig entering rule with a lexicographic ratio
// test, which rules out cycling on degenerate problems.

#include <cstddef>
#include <vector>

namespace prophetcomp {

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct LinearProgram {
  struct Row {
    std::vector<double> coeffs;
    Sense sense = Sense::kLessEqual;
    double rhs = 0.0;
  };
  std::vector<double> objective;
  std::vector<Row> rows;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct LpSolution {
  LpStatus status = LpStatus::kIterationLimit;
  double objective = 0.0;
  std::vector<double> x;
  std::size_t pivots = 0;
};

LpSolution solve_lp(const LinearProgram& lp);

}  // namespace prophetcomp

#endif  // PROPHETCOMP_SIMPLEX_HPP_
