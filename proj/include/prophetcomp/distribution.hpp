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

#ifndef PROPHETCOMP_DISTRIBUTION_HPP_
#define PROPHETCOMP_DISTRIBUTION_HPP_

// Nonnegative value distributions described by their upper quantile
// function f(u) = F^{-1}(1 - u), u in [0, 1]. f is nonincreasing; small u
// means large values.

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace prophetcomp {

struct Uniform {
  double lo = 0.0;
  double hi = 1.0;
};

struct Exponential {
  double rate = 1.0;
};

// Classic Pareto with P[X > x] = (scale/x)^shape for x >= scale.
struct Pareto {
  double shape = 2.0;
  double scale = 1.0;
};

// f interpolated linearly between knots (u_i, value_i); u runs from 0 to 1.
struct QuantileTable {
  std::vector<std::pair<double, double>> knots;
};

// Two-point law: B + A/p with probability p, B otherwise. For q >= p its
// quantile integral is exactly A + qB, the finite-resolution version of the
// atom-plus-constant worst case.
struct AtomWorstCase {
  double atom = 0.0;      // A
  double constant = 0.0;  // B
  double mass = 1e-3;     // p
};

class DistributionSpec {
 public:
  using Variant =
      std::variant<Uniform, Exponential, Pareto, QuantileTable, AtomWorstCase>;

  // Validates parameters; throws std::domain_error for laws with negative
  // support, no finite mean, or a malformed table.
  DistributionSpec(Variant v);  // NOLINT(runtime/explicit)

  const Variant& variant() const { return v_; }

  // f(u) = F^{-1}(1 - u); may be +inf at u = 0 for unbounded laws.
  double quantile(double u) const;
  // int_0^q f(u) du (exact per variant).
  double quantile_integral(double q) const;
  double mean() const { return quantile_integral(1.0); }
  // Whether f has flat pieces, i.e. the law has atoms.
  bool has_atoms() const;

  std::string describe() const;

 private:
  Variant v_;
};

// The standard battery used by property and Monte Carlo checks.
std::vector<DistributionSpec> distribution_catalog();

}  // namespace prophetcomp

#endif  // PROPHETCOMP_DISTRIBUTION_HPP_
