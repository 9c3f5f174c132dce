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

#ifndef PROPHETCOMP_INSTANCE_HPP_
#define PROPHETCOMP_INSTANCE_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace prophetcomp {

// (m, n, k): the online player sees m values, the prophet sees n, and both
// may keep at most k of them.
class SelectionInstance {
 public:
  // Throws std::domain_error unless k >= 1, n >= k and m >= k.
  SelectionInstance(std::int64_t m, std::int64_t n, std::int64_t k);

  std::int64_t m() const { return m_; }
  std::int64_t n() const { return n_; }
  std::int64_t k() const { return k_; }

  // The quantile k/n used by the optimal single threshold.
  double breakpoint() const {
    return static_cast<double>(k_) / static_cast<double>(n_);
  }

  std::string to_string() const;

  friend bool operator==(const SelectionInstance&,
                         const SelectionInstance&) = default;

 private:
  std::int64_t m_;
  std::int64_t n_;
  std::int64_t k_;
};

// A probability level in [0, 1].
class Quantile {
 public:
  explicit Quantile(double q);
  double value() const { return q_; }

 private:
  double q_;
};

}  // namespace prophetcomp

#endif  // PROPHETCOMP_INSTANCE_HPP_
