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

#ifndef PROPHETCOMP_COMPLEXITY_HPP_
#define PROPHETCOMP_COMPLEXITY_HPP_

// Competition complexity: how many draws m = beta n the single-threshold
// player needs so that its worst-case ratio against an n-draw prophet is at
// least 1 - epsilon.

#include <cstdint>
#include <optional>
#include <vector>

namespace prophetcomp {

// Lower branch W_{-1} of the Lambert W function on [-1/e, 0), by Halley
// iteration. Throws std::domain_error outside the domain.
double lambert_wm1(double x);

struct FiniteNComplexity {
  std::int64_t n = 0;
  std::int64_t m = 0;    // smallest m >= k with gamma_{m,n,k} >= 1 - eps
  double ratio = 0.0;    // m / n
};

FiniteNComplexity beta_finite_n(std::int64_t k, std::int64_t n,
                                double epsilon);

// psi_k(t, eps) = (t(k-1) + ln(1/eps)) / (k (1 - e^{-t})).
double psi(std::int64_t k, double t, double epsilon);

// Unique t > 0 with e^t = theta + 1 + t, theta = ln(1/eps)/(k-1); Newton
// iteration from the right. Requires k > 1.
double t_star(std::int64_t k, double epsilon);
// The same root through t = ln(-W_{-1}(-exp(-theta - 1))).
double t_star_lambert(std::int64_t k, double epsilon);

// Closed-form upper bound 1 + 2 theta + sqrt(2 theta); requires k > 1.
double closed_form_upper(std::int64_t k, double epsilon);

struct ComplexityQuery {
  std::int64_t k = 1;
  double epsilon = 0.1;
  std::optional<std::int64_t> n;
  std::vector<std::int64_t> n_grid;
};

struct ComplexityReport {
  std::int64_t k = 1;
  double epsilon = 0.0;
  bool infinite = false;  // epsilon == 0
  double lower = 0.0;
  double upper = 0.0;
  double upper_closed_form = 0.0;
  double t_star = 0.0;    // +inf for k = 1 (psi_1 decreases in t)
  double psi_at_t_star = 0.0;
  double poisson_estimate = 0.0;
  std::optional<FiniteNComplexity> finite_n;
  std::vector<FiniteNComplexity> n_grid;
  std::optional<double> n_grid_sup;
};

// Smallest beta with E[(k - Z)_+] <= k eps for Z ~ Poisson(beta k),
// by bisection to 1e-12.
double poisson_complexity(std::int64_t k, double epsilon);

// Throws std::domain_error for epsilon outside [0, 1), epsilon in
// (0, 1e-15), k < 1, or an n (or grid entry) below k.
ComplexityReport beta_bounds(const ComplexityQuery& query);

}  // namespace prophetcomp

#endif  // PROPHETCOMP_COMPLEXITY_HPP_
