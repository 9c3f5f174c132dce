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

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "prophetcomp/binom.hpp"
#include "prophetcomp/certificate.hpp"
#include "prophetcomp/distribution.hpp"
#include "prophetcomp/ratio.hpp"

using namespace prophetcomp;
using Catch::Approx;
using boost::math::quadrature::gauss_kronrod;

namespace {

// tanh-sinh copes with the integrable singularities of f at u = 0; pieces
// are split at every kink used by the catalog.
double integrate_quantile(const DistributionSpec& d, double q) {
  auto f = [&](double u) { return d.quantile(u); };
  boost::math::quadrature::tanh_sinh<double> rule;
  double acc = 0.0;
  double left = 0.0;
  for (double cut : {0.02, 0.1, 0.4, 1.0}) {
    const double right = std::min(cut, q);
    if (right > left) acc += rule.integrate(f, left, right, 1e-13);
    left = std::max(left, right);
  }
  return acc;
}

}  // namespace

TEST_CASE("distribution-validation", "[distribution]") {
  CHECK_THROWS_AS(DistributionSpec(Uniform{-1.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(DistributionSpec(Uniform{2.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(DistributionSpec(Exponential{0.0}), std::domain_error);
  CHECK_THROWS_AS(DistributionSpec(Pareto{1.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(DistributionSpec(Pareto{3.0, -1.0}), std::domain_error);
  CHECK_THROWS_AS(DistributionSpec(QuantileTable{{{0.0, 1.0}, {1.0, 2.0}}}),
                  std::domain_error);
  CHECK_THROWS_AS(DistributionSpec(QuantileTable{{{0.0, 1.0}, {0.0, 1.0}, {1.0, 0.0}}}),
                  std::domain_error);
  CHECK_THROWS_AS(DistributionSpec(AtomWorstCase{-0.1, 0.5, 0.1}),
                  std::domain_error);
  CHECK_THROWS_AS(DistributionSpec(AtomWorstCase{0.1, 0.5, 0.0}),
                  std::domain_error);
  CHECK_THROWS_AS(DistributionSpec(AtomWorstCase{0.1, 0.5, 1.5}),
                  std::domain_error);
}

TEST_CASE("quantile-integral-matches-quadrature", "[distribution]") {
  for (const auto& d : distribution_catalog()) {
    INFO(d.describe());
    for (double q : {0.001, 0.05, 0.3, 0.77, 1.0}) {
      const double want = integrate_quantile(d, q);
      CHECK(d.quantile_integral(q) == Approx(want).epsilon(1e-9));
    }
    // f is a valid top-quantile function: nonincreasing and nonnegative.
    double prev = d.quantile(1e-9);
    for (int i = 1; i <= 1000; ++i) {
      const double v = d.quantile(i / 1000.0);
      CHECK(v <= prev);
      CHECK(v >= 0.0);
      prev = v;
    }
  }
}

TEST_CASE("distribution-means", "[distribution]") {
  CHECK(DistributionSpec(Uniform{1.0, 3.0}).mean() == Approx(2.0));
  CHECK(DistributionSpec(Exponential{4.0}).mean() == Approx(0.25));
  CHECK(DistributionSpec(Pareto{3.0, 2.0}).mean() == Approx(3.0));
  CHECK(DistributionSpec(AtomWorstCase{0.2, 0.5, 0.01}).mean() == Approx(0.7));
  const DistributionSpec table(QuantileTable{{{0.0, 4.0}, {0.5, 2.0}, {1.0, 0.0}}});
  CHECK(table.mean() == Approx(2.0));
  CHECK_FALSE(DistributionSpec(Uniform{0, 1}).has_atoms());
  CHECK(DistributionSpec(AtomWorstCase{0.2, 0.5, 0.01}).has_atoms());
  CHECK(DistributionSpec(QuantileTable{{{0.0, 5.0}, {0.1, 2.0}, {0.4, 2.0}, {1.0, 0.0}}})
            .has_atoms());
}

TEST_CASE("atom-worst-case-integral-is-exact-beyond-mass", "[distribution]") {
  const double a = 0.13;
  const double b = 0.41;
  const double p = 1e-3;
  const DistributionSpec d(AtomWorstCase{a, b, p});
  for (double q : {p, 0.01, 0.5, 1.0}) {
    CHECK(d.quantile_integral(q) == Approx(a + q * b).epsilon(1e-14));
  }
  CHECK(d.quantile(0.5 * p) == Approx(b + a / p));
  CHECK(d.quantile(2 * p) == b);
}

TEST_CASE("alg-value-examples", "[ratio]") {
  const DistributionSpec uni(Uniform{0.0, 1.0});
  CHECK(alg_value(uni, 1, 1, Quantile(1.0)) == Approx(0.5).epsilon(1e-15));
  CHECK(alg_value(uni, 4, 2, Quantile(0.0)) == 0.0);
  for (std::int64_t m : {1, 3, 10, 50}) {
    for (double q : {0.05, 0.3, 0.9}) {
      const double want = (1 - std::pow(1 - q, static_cast<double>(m))) * (1 - q / 2);
      CHECK(alg_value(uni, m, 1, Quantile(q)) == Approx(want).epsilon(1e-13));
    }
  }
  const double a = 0.07;
  const double b = 0.3;
  const DistributionSpec awc(AtomWorstCase{a, b, 1e-3});
  for (double q : {1e-3, 0.1, 0.6}) {
    const double want = oracle::to_double(oracle::q_value(12, 3, oracle::Dec(q))) / q * (a + q * b);
    CHECK(alg_value(awc, 12, 3, Quantile(q)) == Approx(want).epsilon(1e-13));
  }
}

TEST_CASE("opt-value-against-order-statistics", "[ratio]") {
  CHECK(opt_value(DistributionSpec(Uniform{0, 1}), 2, 1) == Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(opt_value(DistributionSpec(Exponential{1}), 1, 1) == Approx(1.0).epsilon(1e-12));
  CHECK(opt_value(DistributionSpec(Exponential{1}), 3, 2) ==
        Approx(1 + 0.5 + 1.0 / 3 + 0.5 + 1.0 / 3).epsilon(1e-12));
  for (std::int64_t n : {1, 2, 5, 17, 60}) {
    for (std::int64_t k : {1L, (n + 1) / 2, n}) {
      INFO("n=" << n << " k=" << k);
      CHECK(opt_value(DistributionSpec(Uniform{0.5, 2.0}), n, k) ==
            Approx(oracle::top_k_uniform(n, k, 0.5, 2.0)).epsilon(1e-12));
      CHECK(opt_value(DistributionSpec(Exponential{2.0}), n, k) ==
            Approx(oracle::top_k_exponential(n, k, 2.0)).epsilon(1e-10));
      CHECK(opt_value(DistributionSpec(Pareto{4.0, 1.5}), n, k) ==
            Approx(oracle::top_k_pareto(n, k, 4.0, 1.5)).epsilon(1e-10));
      CHECK(opt_value(DistributionSpec(Pareto{1.5, 1.0}), n, k) ==
            Approx(oracle::top_k_pareto(n, k, 1.5, 1.0)).epsilon(1e-9));
    }
  }
}

TEST_CASE("opt-value-prophet-takes-everything-when-n-equals-k", "[ratio]") {
  for (const auto& d : distribution_catalog()) {
    for (std::int64_t n : {1, 4, 9}) {
      CHECK(opt_value(d, n, n) == Approx(n * d.mean()).epsilon(1e-10));
    }
  }
}

TEST_CASE("opt-value-table-and-atoms-against-quadrature", "[ratio]") {
  const DistributionSpec table(
      QuantileTable{{{0.0, 5.0}, {0.1, 2.0}, {0.4, 2.0}, {1.0, 0.0}}});
  for (std::int64_t n : {1, 3, 10, 40}) {
    for (std::int64_t k : {1L, n}) {
      double want = 0.0;
      const double knots[] = {0.0, 0.1, 0.4, 1.0};
      for (int i = 0; i < 3; ++i) {
        auto integrand = [&](double u) { return g_kernel(n, k, u) * table.quantile(u); };
        want += gauss_kronrod<double, 31>::integrate(integrand, knots[i], knots[i + 1], 20, 1e-14);
      }
      CHECK(opt_value(table, n, k) == Approx(want).epsilon(1e-11));
    }
  }
  // Two-point law: kB plus A/p times E[min(k, #atoms)].
  const double a = 0.05;
  const double b = 0.5;
  const double p = 0.02;
  const DistributionSpec awc(AtomWorstCase{a, b, p});
  for (std::int64_t n : {1, 10, 30}) {
    for (std::int64_t k : {1L, 3L}) {
      if (k > n) continue;
      const double want =
          k * b + a / p * oracle::to_double(oracle::q_value(n, k, oracle::Dec(p)));
      CHECK(opt_value(awc, n, k) == Approx(want).epsilon(1e-13));
    }
  }
}

TEST_CASE("competitive-ratio-examples", "[ratio]") {
  for (std::int64_t n : {1, 2, 3, 10, 1000}) {
    const double want = 1 - std::pow(1 - 1.0 / n, static_cast<double>(n));
    CHECK(competitive_ratio(SelectionInstance(n, n, 1)).gamma == Approx(want).epsilon(1e-14));
  }
  const RatioResult r = competitive_ratio(SelectionInstance(1376, 1000, 1));
  CHECK(r.gamma == Approx(1 - std::exp(1376 * std::log1p(-0.001))).epsilon(1e-13));
  CHECK(r.gamma >= 0.7474);
  CHECK(r.optimal_quantile == 0.001);
  CHECK(competitive_ratio(SelectionInstance(2, 2, 2)).gamma == 1.0);
  CHECK(competitive_ratio(SelectionInstance(5, 4, 2)).gamma ==
        Approx(57.0 / 64.0).epsilon(1e-15));
  for (std::int64_t n : {3, 7, 40}) {
    CHECK(competitive_ratio(SelectionInstance(3, n, 3)).gamma ==
          Approx(3.0 / n).epsilon(1e-14));
  }
}

TEST_CASE("competitive-ratio-nondecreasing-in-m", "[ratio]") {
  for (auto [n, k] : {std::pair<std::int64_t, std::int64_t>{10, 1}, {10, 3},
                      {50, 7}, {100, 20}}) {
    double prev = 0.0;
    for (std::int64_t m = k; m <= 4 * n; ++m) {
      const double g = competitive_ratio(SelectionInstance(m, n, k)).gamma;
      CHECK(g >= prev);
      CHECK(g <= 1.0);
      prev = g;
    }
  }
}

TEST_CASE("phi-curve", "[ratio]") {
  const SelectionInstance flat(4, 9, 4);
  const PhiCurve c = phi_curve(flat, 101);
  CHECK(c.phi[0] == 0.0);
  for (std::size_t i = 1; i < c.q.size(); ++i) {
    CHECK(c.phi[i] == Approx(4.0 / 9.0).epsilon(1e-12));
  }
  const SelectionInstance inst(5, 4, 2);
  const PhiCurve curve = phi_curve(inst, 10001);
  CHECK(std::fabs(curve.q[curve.argmax] - 0.5) <= 1e-4);
  CHECK(std::fabs(curve.max_value - competitive_ratio(inst).gamma) <= 1e-9);
  const auto [primal, dual] = build_certificates(inst);
  CHECK(phi_value(inst, primal.atom, primal.constant, 0.5) ==
        Approx(competitive_ratio(inst).gamma).epsilon(1e-15));
  CHECK_THROWS_AS(phi_curve(inst, 1), std::domain_error);
}

TEST_CASE("grid-sup-is-at-least-gamma-for-catalog", "[ratio]") {
  std::mt19937_64 rng(5);
  const auto catalog = distribution_catalog();
  for (int trial = 0; trial < 40; ++trial) {
    const std::int64_t n = std::uniform_int_distribution<std::int64_t>(1, 50)(rng);
    const std::int64_t k = std::uniform_int_distribution<std::int64_t>(1, n)(rng);
    const std::int64_t m = std::uniform_int_distribution<std::int64_t>(k, 50)(rng);
    const SelectionInstance inst(m, n, k);
    const double gamma = competitive_ratio(inst).gamma;
    for (const auto& d : catalog) {
      INFO(d.describe() << " " << inst.to_string());
      CHECK(best_grid_ratio(d, inst, 1001).ratio >= gamma - 1e-6);
      const double at_break =
          alg_value(d, m, k, Quantile(inst.breakpoint())) / opt_value(d, n, k);
      CHECK(at_break >= gamma - 1e-9);
    }
  }
}

TEST_CASE("atom-worst-case-converges-to-gamma", "[ratio]") {
  for (auto inst : {SelectionInstance(10, 10, 1), SelectionInstance(20, 20, 2),
                    SelectionInstance(40, 10, 3)}) {
    const auto [primal, dual] = build_certificates(inst);
    const double gamma = competitive_ratio(inst).gamma;
    double prev = std::numeric_limits<double>::infinity();
    for (double p : {1e-2, 1e-3, 1e-4}) {
      const DistributionSpec d(AtomWorstCase{primal.atom, primal.constant, p});
      const double sup = best_grid_ratio(d, inst, 2001).ratio;
      INFO(inst.to_string() << " p=" << p);
      CHECK(sup >= gamma - 1e-12);
      CHECK(sup <= prev + 1e-12);
      prev = sup;
    }
    CHECK((prev - gamma) / gamma < 1e-2);
  }
}
