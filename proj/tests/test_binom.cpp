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

#include <catch2/catch_amalgamated.hpp>

#include <boost/math/distributions/poisson.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "prophetcomp/binom.hpp"

using namespace prophetcomp;
using Catch::Approx;

TEST_CASE("pmf-log-small-cases", "[binom]") {
  CHECK(binom_pmf_log({2, 0.5}, 1) == Approx(std::log(0.5)).epsilon(1e-15));
  CHECK(binom_pmf_log({5, 0.0}, 0) == 0.0);
  CHECK(std::isinf(binom_pmf_log({5, 0.0}, 1)));
  CHECK(binom_pmf_log({5, 1.0}, 5) == 0.0);
  const double want = 1000.0 * std::log1p(-0.001);
  CHECK(oracle::rel_err(binom_pmf_log({1000, 0.001}, 0), want) < 1e-14);
}

TEST_CASE("pmf-matches-exact-rationals", "[binom]") {
  for (std::int64_t m : {1, 3, 7, 20, 45}) {
    for (auto [num, den] : {std::pair{1, 3}, {1, 2}, {7, 10}, {1, 97}}) {
      const double q = static_cast<double>(num) / den;
      for (std::int64_t l = 0; l <= m; ++l) {
        const oracle::Dec want = oracle::pmf(m, oracle::Dec(num) / den, l);
        INFO("m=" << m << " q=" << q << " l=" << l);
        CHECK(oracle::rel_err(binom_pmf({m, q}, l), oracle::to_double(want)) <
              1e-13);
      }
    }
  }
}

TEST_CASE("pmf-rejects-out-of-range-ell", "[binom]") {
  CHECK_THROWS_AS(binom_pmf_log({4, 0.3}, 5), std::domain_error);
  CHECK_THROWS_AS(binom_pmf_log({4, 0.3}, -1), std::domain_error);
}

TEST_CASE("pmf-sums-to-one-at-large-trials", "[binom]") {
  for (std::int64_t m : {1'000, 100'000, 1'000'000}) {
    for (double q : {1e-6, 0.3, 0.999}) {
      const BinomialLaw law{m, q};
      const double mean = m * q;
      const double sd = std::sqrt(mean * (1 - q)) + 1.0;
      const auto lo = static_cast<std::int64_t>(std::max(0.0, mean - 40 * sd));
      const auto hi = static_cast<std::int64_t>(
          std::min(static_cast<double>(m), mean + 40 * sd));
      double s = 0.0;
      for (std::int64_t l = lo; l <= hi; ++l) s += binom_pmf(law, l);
      INFO("m=" << m << " q=" << q);
      CHECK(std::fabs(s - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("tails-against-enumeration", "[binom]") {
  for (std::int64_t m : {5, 40, 200}) {
    for (double q : {0.01, 0.25, 0.5, 0.9}) {
      for (std::int64_t l : {0L, 1L, m / 3, m - 1}) {
        const double want =
            oracle::to_double(oracle::cdf(m, oracle::Dec(q), l));
        CHECK(oracle::rel_err(binom_cdf({m, q}, l), want) < 1e-12);
        const double sf_want = 1.0 - want;
        if (sf_want > 1e-3) {
          CHECK(oracle::rel_err(binom_sf({m, q}, l + 1), sf_want) < 1e-10);
        }
        CHECK(std::exp(log_binom_cdf({m, q}, l)) == Approx(want).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("q-value-examples", "[binom]") {
  for (std::int64_t n : {1, 2, 10, 1000}) {
    const double want = 1.0 - std::pow(1.0 - 1.0 / n, static_cast<double>(n));
    CHECK(q_value(n, 1, Quantile(1.0 / n)) == Approx(want).epsilon(1e-14));
  }
  CHECK(q_value(5, 2, Quantile(1.0)) == 2.0);
  CHECK(q_value(5, 2, Quantile(0.5)) == Approx(57.0 / 32.0).epsilon(1e-15));
  CHECK(q_value(5, 2, Quantile(0.0)) == 0.0);
  CHECK_THROWS_AS(q_value(2, 3, Quantile(0.5)), std::domain_error);
}

TEST_CASE("q-value-matches-exact-rational-arithmetic", "[binom]") {
  for (std::int64_t m : {1, 4, 9, 17, 30}) {
    for (std::int64_t k = 1; k <= m; k += 2) {
      for (auto [num, den] : {std::pair{1, 10}, {3, 10}, {1, 2}, {9, 10}}) {
        const double got = q_value(m, k, Quantile(static_cast<double>(num) / den));
        const double want =
            oracle::to_double(oracle::q_value_exact(m, k, num, den));
        INFO("m=" << m << " k=" << k << " q=" << num << "/" << den);
        CHECK(oracle::rel_err(got, want) < 1e-13);
      }
    }
  }
}

TEST_CASE("q-value-against-shortfall-enumeration", "[binom]") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> pick_m(1, 200);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 150; ++trial) {
    const std::int64_t m = pick_m(rng);
    const std::int64_t k =
        std::uniform_int_distribution<std::int64_t>(1, m)(rng);
    const double q = unit(rng) * (trial % 3 == 0 ? 0.05 : 1.0);
    const double want =
        oracle::to_double(oracle::q_value(m, k, oracle::Dec(q)));
    INFO("m=" << m << " k=" << k << " q=" << q);
    CHECK(oracle::rel_err(q_value(m, k, Quantile(q)), want) < 1e-10);
  }
}

TEST_CASE("q-value-monotone-and-midpoint-concave", "[binom]") {
  for (auto [m, k] : {std::pair<std::int64_t, std::int64_t>{5, 1}, {30, 7},
                      {200, 20}, {50, 50}, {400, 3}}) {
    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i) {
      const double q = i / 1000.0;
      const double v = q_value(m, k, Quantile(q));
      CHECK(v >= prev);
      CHECK(v >= 0.0);
      CHECK(v <= static_cast<double>(k));
      prev = v;
      if (i >= 2) {
        const double a = (i - 2) / 1000.0;
        const double mid = q_value(m, k, Quantile((a + q) / 2));
        CHECK(mid >= (q_value(m, k, Quantile(a)) + v) / 2 - 1e-10);
      }
    }
  }
}

TEST_CASE("q-value-poisson-limit", "[binom]") {
  const std::int64_t m = 1'000'000;
  for (std::int64_t k : {1, 3, 10}) {
    for (double beta : {0.5, 1.0, 1.7}) {
      const double q = k * beta / static_cast<double>(m);
      const double got = q_value(m, k, Quantile(q));
      const double lim = poisson_min_expectation(k, beta * k);
      CHECK(std::fabs(got - lim) <= 1e-4);
    }
  }
}

TEST_CASE("q-deriv-examples-and-finite-differences", "[binom]") {
  CHECK(q_deriv(3, 3, Quantile(0.5)) == Approx(3.0).epsilon(1e-15));
  CHECK(q_deriv(5, 1, Quantile(0.0)) == 5.0);
  CHECK(q_deriv(1000, 1, Quantile(0.001)) ==
        Approx(1000.0 * std::pow(0.999, 999)).epsilon(1e-13));
  for (auto [m, k] : {std::pair<std::int64_t, std::int64_t>{6, 2}, {40, 5},
                      {300, 30}, {9, 9}}) {
    for (double q : {0.05, 0.2, 0.5, 0.77, 0.95}) {
      const double h = 1e-5;
      const double fd = (q_value(m, k, Quantile(q + h)) -
                         q_value(m, k, Quantile(q - h))) / (2 * h);
      const double d = q_deriv(m, k, Quantile(q));
      CHECK(d >= 0.0);
      if (d > 1e-6) CHECK(oracle::rel_err(fd, d) < 1e-6);
      const double want = m * oracle::to_double(oracle::cdf(m - 1, oracle::Dec(q), k - 1));
      if (want > 1e-290) CHECK(oracle::rel_err(d, want) < 1e-12);
    }
  }
}

TEST_CASE("q-second-deriv", "[binom]") {
  CHECK(q_second_deriv(4, 1, Quantile(0.5)) == Approx(-3.0).epsilon(1e-14));
  CHECK(q_second_deriv(5, 2, Quantile(0.0)) == 0.0);
  for (double q : {0.0, 0.3, 1.0}) CHECK(q_second_deriv(7, 7, Quantile(q)) == 0.0);
  // m = k + 1: Q = (k+1)q - q^{k+1}, Q'' = -(k+1)k q^{k-1}.
  CHECK(q_second_deriv(4, 3, Quantile(0.6)) ==
        Approx(-12.0 * 0.36).epsilon(1e-13));
  for (auto [m, k] : {std::pair<std::int64_t, std::int64_t>{6, 2}, {40, 5},
                      {300, 30}}) {
    for (double q : {0.05, 0.2, 0.5, 0.77}) {
      const double h = 1e-5;
      const double fd = (q_deriv(m, k, Quantile(q + h)) -
                         q_deriv(m, k, Quantile(q - h))) / (2 * h);
      const double d2 = q_second_deriv(m, k, Quantile(q));
      CHECK(d2 <= 0.0);
      if (std::fabs(d2) > 1e-6) CHECK(oracle::rel_err(fd, d2) < 1e-5);
    }
  }
}

TEST_CASE("concavity-gap-equals-q-minus-q-q-prime", "[binom]") {
  for (auto [m, k] : {std::pair<std::int64_t, std::int64_t>{6, 2}, {40, 5},
                      {11, 10}, {10, 10}}) {
    for (double q : {0.01, 0.2, 0.5, 0.9}) {
      const Quantile at(q);
      const double direct = q_value(m, k, at) - q * q_deriv(m, k, at);
      const double gap = q_concavity_gap(m, k, at);
      CHECK(gap >= 0.0);
      CHECK(std::fabs(gap - direct) <= 1e-13 * std::max(1.0, q_value(m, k, at)));
    }
  }
  CHECK(q_concavity_gap(4, 4, Quantile(0.3)) == 0.0);
}

TEST_CASE("g-kernel-examples", "[binom]") {
  for (double u : {0.0, 0.3, 1.0}) CHECK(g_kernel(6, 6, u) == Approx(6.0));
  CHECK(g_kernel(2, 1, 0.5) == Approx(1.0).epsilon(1e-15));
  CHECK(g_kernel(3, 1, 0.0) == 3.0);
  CHECK_THROWS_AS(g_kernel(3, 1, 1.5), std::domain_error);
  CHECK_THROWS_AS(g_kernel(3, 1, -0.1), std::domain_error);
}

TEST_CASE("g-kernel-integrates-to-k-and-is-bounded", "[binom]") {
  using boost::math::quadrature::gauss_kronrod;
  for (std::int64_t n : {1, 2, 7, 50, 200}) {
    for (std::int64_t k : {1L, (n + 1) / 2, n}) {
      auto g = [&](double u) { return g_kernel(n, k, u); };
      const double integral = gauss_kronrod<double, 31>::integrate(g, 0.0, 1.0, 15, 1e-12);
      INFO("n=" << n << " k=" << k);
      CHECK(std::fabs(integral - static_cast<double>(k)) < 1e-8);
      for (int i = 0; i <= 200; ++i) {
        const double v = g(i / 200.0);
        CHECK(v >= 0.0);
        CHECK(v <= static_cast<double>(n) * (1 + 1e-14));
      }
      CHECK(kernel_mass(n, k, 1.0) == Approx(static_cast<double>(k)).epsilon(1e-14));
      for (double u : {0.1, 0.5, 0.9}) {
        auto tg = [&](double t) { return t * g_kernel(n, k, t); };
        CHECK(kernel_mass(n, k, u) ==
              Approx(gauss_kronrod<double, 31>::integrate(g, 0.0, u, 15, 1e-13)).epsilon(1e-11));
        CHECK(kernel_moment(n, k, u) ==
              Approx(gauss_kronrod<double, 31>::integrate(tg, 0.0, u, 15, 1e-13)).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("poisson-min-expectation", "[binom]") {
  for (double lam : {0.0, 0.1, 1.0, 7.5}) {
    CHECK(poisson_min_expectation(1, lam) ==
          Approx(-std::expm1(-lam)).epsilon(1e-14));
  }
  CHECK(poisson_min_expectation(3, 0.0) == 0.0);
  CHECK(poisson_min_expectation(2, 2.0) ==
        Approx(2.0 - 4.0 * std::exp(-2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(poisson_min_expectation(2, -1.0), std::domain_error);
  for (std::int64_t k : {1, 5, 40}) {
    double prev = 0.0;
    for (double lam = 0.0; lam < 3.0 * k; lam += 0.05 * k) {
      const double v = poisson_min_expectation(k, lam);
      CHECK(v >= prev);
      CHECK(v <= static_cast<double>(k));
      prev = v;
      // Against boost's Poisson cdf as an independent route.
      if (lam > 0.0) {
        boost::math::poisson_distribution<double> pois(lam);
        double shortfall = 0.0;
        for (std::int64_t l = 0; l < k; ++l) {
          shortfall += (k - l) * boost::math::pdf(pois, static_cast<double>(l));
        }
        CHECK(std::fabs(v - (k - shortfall)) < 1e-12 * k);
      }
    }
  }
}

TEST_CASE("chernoff-and-atom-bounds", "[binom]") {
  for (std::int64_t k : {2, 5, 12}) {
    for (std::int64_t n : {20, 100}) {
      for (std::int64_t m : {n, 2 * n}) {
        const double q = static_cast<double>(k) / n;
        const double tail = binom_cdf({m, q}, k - 1);
        for (double t : {0.1, 0.5, 1.0, 2.0}) {
          const double bound = std::exp(t * (k - 1) - k * (double(m) / n) * (1 - std::exp(-t)));
          CHECK(tail <= bound * (1 + 1e-12));
        }
        const double shortfall = binom_shortfall({m, q}, k);
        CHECK(shortfall >= k * std::pow(1 - q, static_cast<double>(m)) * (1 - 1e-12));
      }
    }
  }
}

TEST_CASE("quantile-validation", "[binom]") {
  CHECK_THROWS_AS(Quantile(-0.1), std::domain_error);
  CHECK_THROWS_AS(Quantile(1.1), std::domain_error);
  CHECK_THROWS_AS(Quantile(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(SelectionInstance(3, 2, 3), std::domain_error);
  CHECK_THROWS_AS(SelectionInstance(2, 3, 3), std::domain_error);
  CHECK_THROWS_AS(SelectionInstance(2, 3, 0), std::domain_error);
  CHECK(SelectionInstance(5, 4, 2).breakpoint() == 0.5);
}
