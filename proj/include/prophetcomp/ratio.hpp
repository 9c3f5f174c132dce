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

#ifndef PROPHETCOMP_RATIO_HPP_
#define PROPHETCOMP_RATIO_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "prophetcomp/distribution.hpp"
#include "prophetcomp/instance.hpp"

namespace prophetcomp {

struct RatioResult {
  double gamma = 0.0;             // Q_{m,k}(k/n) / k
  double optimal_quantile = 0.0;  // k/n
  SelectionInstance instance;
};

// Expected reward of the single threshold F^{-1}(1-q) on m draws with budget
// k: (Q_{m,k}(q)/q) int_0^q f. Zero at q = 0.
double alg_value(const DistributionSpec& dist, std::int64_t m, std::int64_t k,
                 Quantile q);

// Prophet value int_0^1 g_{n,k}(u) f(u) du: the sum of the k largest order
// statistic means out of n draws.
double opt_value(const DistributionSpec& dist, std::int64_t n, std::int64_t k);

// Worst case over distributions of the best single-threshold ratio.
RatioResult competitive_ratio(const SelectionInstance& inst);

// phi(q) = (Q_{m,k}(q)/q)(atom + q constant), with phi(0) = 0.
double phi_value(const SelectionInstance& inst, double atom, double constant,
                 double q);

struct PhiCurve {
  std::vector<double> q;
  std::vector<double> phi;
  std::size_t argmax = 0;
  double max_value = 0.0;
};

// phi on a uniform grid of `grid` points in [0, 1], using the primal
// certificate constants of the instance. Throws std::domain_error if
// grid < 2.
PhiCurve phi_curve(const SelectionInstance& inst, std::size_t grid);

struct GridRatio {
  double q = 0.0;
  double ratio = 0.0;
};

// max over q in {i/(grid-1)} of alg_value / opt_value.
GridRatio best_grid_ratio(const DistributionSpec& dist,
                          const SelectionInstance& inst, std::size_t grid);

}  // namespace prophetcomp

#endif  // PROPHETCOMP_RATIO_HPP_
