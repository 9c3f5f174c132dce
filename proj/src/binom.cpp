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

#include "prophetcomp/binom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace prophetcomp {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLn2Pi = 1.8378770664093454835606594728112;
// A walk stops once the relative pmf drops below this and the weighted term
// is negligible against the running sum.
constexpr double kTailCut = 1e-20;

// log(n!) - log(sqrt(2 pi n) (n/e)^n).
double stirlerr(double n) {
  constexpr double S0 = 1.0 / 12.0;
  constexpr double S1 = 1.0 / 360.0;
  constexpr double S2 = 1.0 / 1260.0;
  constexpr double S3 = 1.0 / 1680.0;
  constexpr double S4 = 1.0 / 1188.0;
  if (n <= 15.0) {
    if (n == 0.0) return 0.0;
    return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n - 0.5 * kLn2Pi;
  }
  const double nn = n * n;
  if (n > 500.0) return (S0 - S1 / nn) / n;
  if (n > 80.0) return (S0 - (S1 - S2 / nn) / nn) / n;
  if (n > 35.0) return (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / n;
  return (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n;
}

// Deviance term x log(x/np) + np - x, accurate when x ~ np.
double bd0(double x, double np) {
  if (std::fabs(x - np) < 0.1 * (x + np)) {
    double v = (x - np) / (x + np);
    double s = (x - np) * v;
    double ej = 2.0 * x * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
  }
  return x * std::log(x / np) + np - x;
}

double loader_binom_log(double x, double n, double p, double q) {
  if (p == 0.0) return x == 0.0 ? 0.0 : kNegInf;
  if (q == 0.0) return x == n ? 0.0 : kNegInf;
  if (x == 0.0) {
    if (n == 0.0) return 0.0;
    return p < 0.1 ? -bd0(n, n * q) - n * p : n * std::log1p(-p);
  }
  if (x == n) {
    return q < 0.1 ? -bd0(n, n * p) - n * q : n * std::log(p);
  }
  const double lc = stirlerr(n) - stirlerr(x) - stirlerr(n - x) -
                    bd0(x, n * p) - bd0(n - x, n * q);
  const double lf = kLn2Pi + std::log(x) + std::log1p(-x / n);
  return lc - 0.5 * lf;
}

void check_law(const BinomialLaw& law) {
  if (law.trials < 0 || !(law.success >= 0.0 && law.success <= 1.0)) {
    throw std::domain_error("invalid binomial law (trials=" +
                            std::to_string(law.trials) +
                            ", success=" + std::to_string(law.success) + ")");
  }
}

void check_mk(std::int64_t m, std::int64_t k) {
  if (k < 1 || m < k) {
    throw std::domain_error("need m >= k >= 1, got m=" + std::to_string(m) +
                            ", k=" + std::to_string(k));
  }
}

// log sum_{l=lo}^{hi} weight(l) pmf(l) for a unimodal lattice pmf. The chain
// starts at `seed` (the pmf maximum restricted to [lo, hi]) and walks outward;
// down(l) = pmf(l-1)/pmf(l), up(l) = pmf(l+1)/pmf(l).
template <class Down, class Up, class Weight>
double log_chain_sum(double log_seed, std::int64_t seed, std::int64_t lo,
                     std::int64_t hi, Down down, Up up, Weight weight) {
  if (log_seed == kNegInf) return kNegInf;
  double acc = weight(seed);
  double rel = 1.0;
  for (std::int64_t l = seed; l > lo; --l) {
    rel *= down(l);
    const double term = weight(l - 1) * rel;
    acc += term;
    if (rel == 0.0 || (rel < kTailCut && term <= kTailCut * acc)) break;
  }
  rel = 1.0;
  for (std::int64_t l = seed; l < hi; ++l) {
    rel *= up(l);
    const double term = weight(l + 1) * rel;
    acc += term;
    if (rel == 0.0 || (rel < kTailCut && term <= kTailCut * acc)) break;
  }
  if (acc <= 0.0) return kNegInf;
  return log_seed + std::log(acc);
}

// Binomial chain over [lo, hi] with 0 <= lo <= hi <= trials.
template <class Weight>
double binom_log_sum(const BinomialLaw& law, std::int64_t lo, std::int64_t hi,
                     Weight weight) {
  const std::int64_t n = law.trials;
  const double p = law.success;
  if (lo > hi) return kNegInf;
  if (p == 0.0 || p == 1.0) {
    const std::int64_t atom = p == 0.0 ? 0 : n;
    if (atom < lo || atom > hi) return kNegInf;
    const double w = weight(atom);
    return w > 0.0 ? std::log(w) : kNegInf;
  }
  const double q = 1.0 - p;
  const double odds = p / q;
  const auto mode = static_cast<std::int64_t>(
      std::floor(static_cast<double>(n + 1) * p));
  const std::int64_t seed = std::clamp(std::min(mode, n), lo, hi);
  const double nd = static_cast<double>(n);
  const double log_seed =
      loader_binom_log(static_cast<double>(seed), nd, p, q);
  auto down = [&](std::int64_t l) {
    return static_cast<double>(l) / (nd - static_cast<double>(l) + 1.0) /
           odds;
  };
  auto up = [&](std::int64_t l) {
    return (nd - static_cast<double>(l)) / static_cast<double>(l + 1) * odds;
  };
  return log_chain_sum(log_seed, seed, lo, hi, down, up, weight);
}

double unit_weight(std::int64_t) { return 1.0; }

}  // namespace

double binom_pmf_log(const BinomialLaw& law, std::int64_t ell) {
  check_law(law);
  if (ell < 0 || ell > law.trials) {
    throw std::domain_error("binomial outcome " + std::to_string(ell) +
                            " outside [0, " + std::to_string(law.trials) +
                            "]");
  }
  return loader_binom_log(static_cast<double>(ell),
                          static_cast<double>(law.trials), law.success,
                          1.0 - law.success);
}

double binom_pmf(const BinomialLaw& law, std::int64_t ell) {
  return std::exp(binom_pmf_log(law, ell));
}

double log_binom_cdf(const BinomialLaw& law, std::int64_t ell) {
  check_law(law);
  if (ell < 0) return kNegInf;
  if (ell >= law.trials) return 0.0;
  return std::min(0.0, binom_log_sum(law, 0, ell, unit_weight));
}

double log_binom_sf(const BinomialLaw& law, std::int64_t ell) {
  check_law(law);
  if (ell <= 0) return 0.0;
  if (ell > law.trials) return kNegInf;
  return std::min(0.0, binom_log_sum(law, ell, law.trials, unit_weight));
}

double binom_cdf(const BinomialLaw& law, std::int64_t ell) {
  return std::exp(log_binom_cdf(law, ell));
}

double binom_sf(const BinomialLaw& law, std::int64_t ell) {
  return std::exp(log_binom_sf(law, ell));
}

double binom_shortfall(const BinomialLaw& law, std::int64_t k) {
  check_law(law);
  if (k <= 0) return 0.0;
  const std::int64_t hi = std::min(k - 1, law.trials);
  return std::exp(binom_log_sum(law, 0, hi, [k](std::int64_t l) {
    return static_cast<double>(k - l);
  }));
}

double q_value(std::int64_t m, std::int64_t k, Quantile q) {
  check_mk(m, k);
  const double p = q.value();
  if (p == 0.0) return 0.0;
  if (p == 1.0) return static_cast<double>(k);
  const BinomialLaw law{m, p};
  const double kd = static_cast<double>(k);
  double value;
  if (static_cast<double>(m) * p < kd) {
    // Mass sits below k: sum E[min{k, Y}] directly.
    value = std::exp(binom_log_sum(law, 1, m, [k](std::int64_t l) {
      return static_cast<double>(std::min(k, l));
    }));
  } else {
    value = kd - binom_shortfall(law, k);
  }
  return std::clamp(value, 0.0, kd);
}

double q_deriv(std::int64_t m, std::int64_t k, Quantile q) {
  check_mk(m, k);
  return static_cast<double>(m) * binom_cdf({m - 1, q.value()}, k - 1);
}

double q_second_deriv(std::int64_t m, std::int64_t k, Quantile q) {
  check_mk(m, k);
  if (m == k) return 0.0;
  const double md = static_cast<double>(m);
  return -md * (md - 1.0) * binom_pmf({m - 2, q.value()}, k - 1);
}

double q_concavity_gap(std::int64_t m, std::int64_t k, Quantile q) {
  check_mk(m, k);
  return static_cast<double>(k) * binom_sf({m, q.value()}, k + 1);
}

double g_kernel(std::int64_t n, std::int64_t k, double u) {
  check_mk(n, k);
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::domain_error("g_kernel argument outside [0, 1]: " +
                            std::to_string(u));
  }
  return static_cast<double>(n) * binom_cdf({n - 1, u}, k - 1);
}

double kernel_mass(std::int64_t n, std::int64_t k, double u) {
  return q_value(n, k, Quantile(u));
}

double kernel_moment(std::int64_t n, std::int64_t k, double u) {
  check_mk(n, k);
  const Quantile at(u);
  if (at.value() == 0.0) return 0.0;
  // t g(t) = sum_{j=1}^{k} j Bin(n,t)[j]; integrating each pmf term gives
  // P[Bin(n+1,u) >= j+1]/(n+1), regrouped by outcome l of Bin(n+1, u).
  const BinomialLaw law{n + 1, at.value()};
  const double sum = std::exp(binom_log_sum(law, 2, n + 1, [k](std::int64_t l) {
    const double j = static_cast<double>(std::min(k, l - 1));
    return 0.5 * j * (j + 1.0);
  }));
  return sum / static_cast<double>(n + 1);
}

double poisson_pmf_log(double lambda, std::int64_t ell) {
  if (!(lambda >= 0.0) || ell < 0) {
    throw std::domain_error("invalid Poisson evaluation");
  }
  if (lambda == 0.0) return ell == 0 ? 0.0 : kNegInf;
  if (ell == 0) return -lambda;
  const double x = static_cast<double>(ell);
  return -stirlerr(x) - bd0(x, lambda) - 0.5 * (kLn2Pi + std::log(x));
}

namespace {

template <class Weight>
double poisson_log_sum(double lambda, std::int64_t lo, std::int64_t hi,
                       Weight weight) {
  if (lambda == 0.0) {
    if (lo > 0) return kNegInf;
    const double w = weight(0);
    return w > 0.0 ? std::log(w) : kNegInf;
  }
  const auto mode = static_cast<std::int64_t>(std::floor(lambda));
  const std::int64_t seed = std::clamp(mode, lo, hi);
  auto down = [lambda](std::int64_t l) {
    return static_cast<double>(l) / lambda;
  };
  auto up = [lambda](std::int64_t l) {
    return lambda / static_cast<double>(l + 1);
  };
  return log_chain_sum(poisson_pmf_log(lambda, seed), seed, lo, hi, down, up,
                       weight);
}

void check_poisson(std::int64_t k, double lambda) {
  if (k < 1 || !(lambda >= 0.0) || std::isinf(lambda)) {
    throw std::domain_error("need k >= 1 and finite lambda >= 0");
  }
}

}  // namespace

double poisson_shortfall(std::int64_t k, double lambda) {
  check_poisson(k, lambda);
  return std::exp(poisson_log_sum(lambda, 0, k - 1, [k](std::int64_t l) {
    return static_cast<double>(k - l);
  }));
}

double poisson_min_expectation(std::int64_t k, double lambda) {
  check_poisson(k, lambda);
  const double kd = static_cast<double>(k);
  if (lambda < kd) {
    const double v = std::exp(poisson_log_sum(
        lambda, 1, std::numeric_limits<std::int64_t>::max() - 1,
        [k](std::int64_t l) { return static_cast<double>(std::min(k, l)); }));
    return std::clamp(v, 0.0, kd);
  }
  return std::clamp(kd - poisson_shortfall(k, lambda), 0.0, kd);
}

}  // namespace prophetcomp
