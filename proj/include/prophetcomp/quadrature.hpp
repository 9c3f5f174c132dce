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

#ifndef PROPHETCOMP_QUADRATURE_HPP_
#define PROPHETCOMP_QUADRATURE_HPP_

#include <functional>

namespace prophetcomp {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

// Adaptive Gauss-Kronrod (7/15) on [a, b]; the integrand is never evaluated
// at the endpoints, so integrable endpoint singularities are allowed.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double tolerance = 1e-12,
                           unsigned max_depth = 15);

}  // namespace prophetcomp

#endif  // PROPHETCOMP_QUADRATURE_HPP_
