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

#include "prophetcomp/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "prophetcomp/binom.hpp"
#include "prophetcomp/instance.hpp"

namespace prophetcomp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMinEpsilon = 1e-15;

void check_epsilon(double epsilon) {
  if (!(epsilon >= kMinEpsilon && epsilon < 1.0)) {
    throw std::domain_error("epsilon must lie in [1e-15, 1), got " +
                            std::to_string(epsilon));
  }
}

void check_k_above_one(std::int64_t k) {
  if (k < 2) throw std::domain_error("requires k > 1");
}

double theta_of(std::int64_t k, double epsilon) {
  return -std::log(epsilon) / static_cast<double>(k - 1);
}

// e^t - 1 - t without cancellation for small t.
double exp_excess(double t) {
  if (std::fabs(t) < 1e-2) {
    double term = t * t / 2.0;
    double sum = term;
    for (int j = 3; j < 12; ++j) {
      term *= t / j;
      sum += term;
    }
    return sum;
  }
  return std::expm1(t) - t;
}

}  // namespace

double lambert_wm1(double x) {
  constexpr double kE = std::numbers::e;
  if (!(x >= -1.0 / kE && x < 0.0)) {
    throw std::domain_error("W_{-1} needs x in [-1/e, 0)");
  }
  const double branch = 1.0 + kE * x;
  if (branch <= 0.0) return -1.0;
  double w;
  if (x < -0.25) {
    // Series about the branch point in p = -sqrt(2(1 + e x)).
    const double p = -std::sqrt(2.0 * branch);
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else {
    const double l1 = std::log(-x);
    const double l2 = std::log(-l1);
    w = l1 - l2 + l2 / l1;
  }
  for (int i = 0; i < 100; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double dw = f / denom;
    w -= dw;
    if (!(std::fabs(dw) > 4.0 * std::numeric_limits<double>::epsilon() *
                              std::fabs(w))) {
      break;
    }
  }
  return std::min(w, -1.0);
}

FiniteNComplexity beta_finite_n(std::int64_t k, std::int64_t n,
                                double epsilon) {
  check_epsilon(epsilon);
  if (k < 1 || n < k) throw std::domain_error("need n >= k >= 1");
  const Quantile q(static_cast<double>(k) / static_cast<double>(n));
  const double target = static_cast<double>(k) * (1.0 - epsilon);
  auto enough = [&](std::int64_t m) { return q_value(m, k, q) >= target; };

  std::int64_t hi = k;
  while (!enough(hi)) {
    if (hi > std::numeric_limits<std::int64_t>::max() / 4) {
      throw std::overflow_error("competition complexity search overflow");
    }
    hi *= 2;
  }
  // Invariant: enough(hi), and !enough(lo) unless lo < k.
  std::int64_t lo = hi == k ? k - 1 : hi / 2;
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (enough(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {n, hi, static_cast<double>(hi) / static_cast<double>(n)};
}

double psi(std::int64_t k, double t, double epsilon) {
  check_epsilon(epsilon);
  if (k < 1) throw std::domain_error("psi needs k >= 1");
  if (!(t > 0.0)) throw std::domain_error("psi needs t > 0");
  const double kd = static_cast<double>(k);
  return (t * (kd - 1.0) - std::log(epsilon)) / (kd * -std::expm1(-t));
}

double t_star(std::int64_t k, double epsilon) {
  check_epsilon(epsilon);
  check_k_above_one(k);
  const double theta = theta_of(k, epsilon);
  // Start right of the root at ln(1 + theta + sqrt(theta^2 + 2 theta)); the
  // residual is convex, so Newton decreases monotonically onto the root.
  double t = std::log1p(theta + std::sqrt(theta * theta + 2.0 * theta));
  for (int i = 0; i < 200; ++i) {
    const double step = (exp_excess(t) - theta) / std::expm1(t);
    t -= step;
    if (!(std::fabs(step) > 2.0 * std::numeric_limits<double>::epsilon() * t)) {
      break;
    }
  }
  return t;
}

double t_star_lambert(std::int64_t k, double epsilon) {
  check_epsilon(epsilon);
  check_k_above_one(k);
  const double theta = theta_of(k, epsilon);
  return std::log(-lambert_wm1(-std::exp(-theta - 1.0)));
}

double closed_form_upper(std::int64_t k, double epsilon) {
  check_epsilon(epsilon);
  check_k_above_one(k);
  const double theta = theta_of(k, epsilon);
  return 1.0 + 2.0 * theta + std::sqrt(2.0 * theta);
}

double poisson_complexity(std::int64_t k, double epsilon) {
  check_epsilon(epsilon);
  if (k < 1) throw std::domain_error("need k >= 1");
  const double kd = static_cast<double>(k);
  const double budget = kd * epsilon;
  const double log_inv = -std::log(epsilon);
  auto excess = [&](double beta) {
    return poisson_shortfall(k, beta * kd) - budget;
  };
  double lo = log_inv / kd;
  double hi = k == 1 ? 2.0 * log_inv + 1.0 : closed_form_upper(k, epsilon);
  if (excess(lo) <= 0.0) return lo;
  while (excess(hi) > 0.0) hi *= 2.0;
  while (hi - lo > 1e-12 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

ComplexityReport beta_bounds(const ComplexityQuery& query) {
  if (query.k < 1) throw std::domain_error("need k >= 1");
  ComplexityReport r;
  r.k = query.k;
  r.epsilon = query.epsilon;
  if (query.epsilon == 0.0) {
    r.infinite = true;
    r.lower = r.upper = r.upper_closed_form = kInf;
    r.t_star = r.psi_at_t_star = r.poisson_estimate = kInf;
    return r;
  }
  check_epsilon(query.epsilon);
  const double kd = static_cast<double>(query.k);
  const double log_inv = -std::log(query.epsilon);
  r.lower = log_inv / kd;
  if (query.k == 1) {
    r.upper = r.upper_closed_form = r.psi_at_t_star = log_inv;
    r.t_star = kInf;
  } else {
    r.t_star = t_star(query.k, query.epsilon);
    r.psi_at_t_star = psi(query.k, r.t_star, query.epsilon);
    r.upper_closed_form = closed_form_upper(query.k, query.epsilon);
    r.upper = std::min(r.psi_at_t_star, r.upper_closed_form);
  }
  r.poisson_estimate = poisson_complexity(query.k, query.epsilon);
  if (query.n) r.finite_n = beta_finite_n(query.k, *query.n, query.epsilon);
  for (const std::int64_t n : query.n_grid) {
    r.n_grid.push_back(beta_finite_n(query.k, n, query.epsilon));
    r.n_grid_sup = std::max(r.n_grid_sup.value_or(0.0), r.n_grid.back().ratio);
  }
  return r;
}

}  // namespace prophetcomp
