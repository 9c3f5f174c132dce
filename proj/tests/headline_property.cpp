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

// Finite-k check of the 1 - exp(-Theta(k)) loss under 1% extra competition:
// for k in {50, 100, 200}, beta = 1.01, n = 1e5, fit c from k = 50 and
// require 1 - gamma <= exp(-c k) at larger k plus geometric decay.

#include <cmath>
#include <cstdio>
#include <vector>

#include "oracles.hpp"
#include "prophetcomp/ratio.hpp"

using namespace prophetcomp;

namespace {

constexpr double kBeta = 1.01;

// 1 - gamma_{m,n,k} = E[(k - Y)_+] / k, Y ~ Bin(m, k/n), in 50 digits.
double shortfall_oracle(std::int64_t m, std::int64_t n, std::int64_t k) {
  const oracle::Dec q = oracle::Dec(k) / n;
  oracle::Dec s = 0;
  for (std::int64_t l = 0; l < k; ++l) s += oracle::Dec(k - l) * oracle::pmf(m, q, l);
  return oracle::to_double(s / k);
}

double loss(std::int64_t n, std::int64_t k) {
  const auto m = static_cast<std::int64_t>(std::ceil(kBeta * static_cast<double>(n)));
  return 1.0 - competitive_ratio(SelectionInstance(m, n, k)).gamma;
}

}  // namespace

int main() {
  const std::int64_t n = 100000;
  const std::vector<std::int64_t> ks = {50, 100, 200};
  std::vector<double> losses;
  bool routes_agree = true;
  for (std::int64_t k : ks) {
    const double lib = loss(n, k);
    const double ref = shortfall_oracle(static_cast<std::int64_t>(std::ceil(kBeta * n)), n, k);
    routes_agree = routes_agree && oracle::rel_err(lib, ref) <= 1e-9;
    losses.push_back(lib);
    std::printf("k=%-4lld 1-gamma = %.6e (oracle %.6e)\n", static_cast<long long>(k), lib, ref);
  }
  const double c = -std::log(losses[0]) / 50.0;
  bool bound_ok = true;
  for (std::size_t i = 1; i < ks.size(); ++i) {
    const double cap = std::exp(-c * static_cast<double>(ks[i]));
    const bool ok = losses[i] <= cap;
    bound_ok = bound_ok && ok;
    std::printf("k=%-4lld exp(-c k) = %.6e with c = %.6f: %s\n", static_cast<long long>(ks[i]),
                cap, c, ok ? "holds" : "violated");
  }
  // Geometric decay: the ratio over k 100 -> 200 must not exceed the square of
  // the ratio over 50 -> 100.
  const double r1 = losses[1] / losses[0];
  const double r2 = losses[2] / losses[1];
  const bool geometric = r2 <= r1 * r1;
  std::printf("decay ratios: 50->100 %.4f, 100->200 %.4f (geometric needs <= %.4f): %s\n", r1,
              r2, r1 * r1, geometric ? "holds" : "violated");
  std::printf("1-gamma * sqrt(k): %.4f %.4f %.4f\n", losses[0] * std::sqrt(50.0),
              losses[1] * std::sqrt(100.0), losses[2] * std::sqrt(200.0));

  // Where the exponential regime starts: the Chernoff rate of
  // P[Poisson(beta k) < k] is beta - 1 - ln beta.
  const double rate = kBeta - 1.0 - std::log(kBeta);
  std::printf("large-k regime (n = 1e7), Chernoff rate %.4e:\n", rate);
  for (std::int64_t k : {1000, 10000, 40000, 160000}) {
    const double l = loss(10000000, k);
    std::printf("  k=%-7lld 1-gamma = %.4e  -ln(1-gamma)/k = %.4e\n",
                static_cast<long long>(k), l, -std::log(l) / static_cast<double>(k));
  }

  const bool passed = routes_agree && bound_ok && geometric;
  std::printf("%s headline property: 1-gamma <= exp(-c k) at beta = 1.01, n = 1e5\n",
              passed ? "PASS" : "FAIL");
  return passed ? 0 : 1;
}
