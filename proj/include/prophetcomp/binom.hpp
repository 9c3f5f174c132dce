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

#ifndef PROPHETCOMP_BINOM_HPP_
#define PROPHETCOMP_BINOM_HPP_

// Binomial and Poisson primitives, the expected-acceptance function
// Q_{m,k}(q) = E[min{k, Binomial(m, q)}] with its derivatives, and the
// order-statistic kernel g_{n,k}.
//
// Every routine sums positive terms only. Chains start at the largest pmf
// inside the summed range (evaluated with Loader's saddle-point form) and
// walk outward with the multiplicative pmf ratio, so trials up to ~1e7 keep
// near machine relative accuracy. All functions are pure.

#include <cstdint>

#include "prophetcomp/instance.hpp"

namespace prophetcomp {

struct BinomialLaw {
  std::int64_t trials = 0;
  double success = 0.0;
};

// log P[Y = ell]. -inf at impossible points of degenerate laws.
// Throws std::domain_error if ell is outside [0, trials] or the law is invalid.
double binom_pmf_log(const BinomialLaw& law, std::int64_t ell);
double binom_pmf(const BinomialLaw& law, std::int64_t ell);

// P[Y <= ell] and P[Y >= ell]; any integer ell is accepted.
double binom_cdf(const BinomialLaw& law, std::int64_t ell);
double binom_sf(const BinomialLaw& law, std::int64_t ell);
// Logarithms of the same tails, finite far beyond double underflow.
double log_binom_cdf(const BinomialLaw& law, std::int64_t ell);
double log_binom_sf(const BinomialLaw& law, std::int64_t ell);

// E[(k - Y)_+].
double binom_shortfall(const BinomialLaw& law, std::int64_t k);

// Q_{m,k}(q) = k - sum_{l<k} (k - l) C(m,l) q^l (1-q)^(m-l).
// Throws std::domain_error unless m >= k >= 1.
double q_value(std::int64_t m, std::int64_t k, Quantile q);
// Q'_{m,k}(q) = m P[Binomial(m-1, q) <= k-1].
double q_deriv(std::int64_t m, std::int64_t k, Quantile q);
// Q''_{m,k}(q) = -m(m-1) C(m-2,k-1) q^(k-1) (1-q)^(m-k-1); 0 when m = k.
double q_second_deriv(std::int64_t m, std::int64_t k, Quantile q);
// Q(q) - q Q'(q) = k P[Binomial(m, q) >= k+1] >= 0 (concavity gap).
double q_concavity_gap(std::int64_t m, std::int64_t k, Quantile q);

// g_{n,k}(u) = sum_{l=n-k+1}^{n} l C(n,l) (1-u)^(l-1) u^(n-l).
// Throws std::domain_error for u outside [0, 1] or invalid (n, k).
double g_kernel(std::int64_t n, std::int64_t k, double u);
// int_0^u g_{n,k}(t) dt, which equals Q_{n,k}(u).
double kernel_mass(std::int64_t n, std::int64_t k, double u);
// int_0^u t g_{n,k}(t) dt.
double kernel_moment(std::int64_t n, std::int64_t k, double u);

double poisson_pmf_log(double lambda, std::int64_t ell);
// E[(k - Z)_+] and E[min{k, Z}] for Z ~ Poisson(lambda).
// Throws std::domain_error for lambda < 0 or k < 1.
double poisson_shortfall(std::int64_t k, double lambda);
double poisson_min_expectation(std::int64_t k, double lambda);

}  // namespace prophetcomp

#endif  // PROPHETCOMP_BINOM_HPP_
