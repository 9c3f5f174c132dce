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

#include "prophetcomp/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace prophetcomp {

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double tolerance, unsigned max_depth) {
  using boost::math::quadrature::gauss_kronrod;
  QuadratureResult out;
  if (a == b) return out;
  out.value = gauss_kronrod<double, 15>::integrate(f, a, b, max_depth,
                                                   tolerance,
                                                   &out.error_estimate);
  return out;
}

}  // namespace prophetcomp
