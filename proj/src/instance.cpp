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

#include "prophetcomp/instance.hpp"

#include <cmath>

namespace prophetcomp {

SelectionInstance::SelectionInstance(std::int64_t m, std::int64_t n,
                                     std::int64_t k)
    : m_(m), n_(n), k_(k) {
  if (k < 1 || n < k || m < k) {
    throw std::domain_error("invalid instance " + to_string() +
                            ": need k >= 1, n >= k, m >= k");
  }
}

std::string SelectionInstance::to_string() const {
  return "(m=" + std::to_string(m_) + ", n=" + std::to_string(n_) +
         ", k=" + std::to_string(k_) + ")";
}

Quantile::Quantile(double q) : q_(q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::domain_error("quantile must lie in [0, 1], got " +
                            std::to_string(q));
  }
}

}  // namespace prophetcomp
