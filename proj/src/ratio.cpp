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

#include "prophetcomp/ratio.hpp"

#include <cmath>
#include <stdexcept>

#include "prophetcomp/binom.hpp"
#include "prophetcomp/certificate.hpp"
#include "prophetcomp/quadrature.hpp"

namespace prophetcomp {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kQuadTolerance = 1e-13;

// int_{u0}^{u1} (a + b u) g_{n,k}(u) du in closed form.
double linear_piece(std::int64_t n, std::int64_t k, double u0, double u1,
                    double a, double b) {
  const double mass = kernel_mass(n, k, u1) - kernel_mass(n, k, u0);
  const double moment = kernel_moment(n, k, u1) - kernel_moment(n, k, u0);
  return a * mass + b * moment;
}

}  // namespace

double alg_value(const DistributionSpec& dist, std::int64_t m, std::int64_t k,
                 Quantile q) {
  const double acceptances = q_value(m, k, q);
  if (q.value() == 0.0) return 0.0;
  return acceptances / q.value() * dist.quantile_integral(q.value());
}

double opt_value(const DistributionSpec& dist, std::int64_t n,
                 std::int64_t k) {
  if (k < 1 || n < k) throw std::domain_error("opt_value needs n >= k >= 1");
  const double kd = static_cast<double>(k);
  auto g = [n, k](double u) { return g_kernel(n, k, u); };
  return std::visit(
      Overloaded{
          [&](const Uniform& d) {
            return linear_piece(n, k, 0.0, 1.0, d.hi, d.lo - d.hi);
          },
          [&](const QuantileTable& d) {
            double acc = 0.0;
            for (std::size_t i = 0; i + 1 < d.knots.size(); ++i) {
              const auto [u0, v0] = d.knots[i];
              const auto [u1, v1] = d.knots[i + 1];
              const double b = (v1 - v0) / (u1 - u0);
              acc += linear_piece(n, k, u0, u1, v0 - b * u0, b);
            }
            return acc;
          },
          [&](const AtomWorstCase& d) {
            return d.constant * kd +
                   d.atom / d.mass * kernel_mass(n, k, d.mass);
          },
          [&](const Exponential& d) {
            // u = s^2 removes the log singularity of f at 0.
            auto integrand = [&](double s) {
              if (s <= 0.0) return 0.0;
              return -4.0 * s * std::log(s) * g(s * s);
            };
            return integrate(integrand, 0.0, 1.0, kQuadTolerance).value /
                   d.rate;
          },
          [&](const Pareto& d) {
            // u = s^r with r (1 - 1/shape) = 2 turns s^{r-1} f(s^r) into
            // r * scale * s.
            const double r = 2.0 / (1.0 - 1.0 / d.shape);
            auto integrand = [&](double s) {
              return r * d.scale * s * g(std::pow(s, r));
            };
            return integrate(integrand, 0.0, 1.0, kQuadTolerance).value;
          },
      },
      dist.variant());
}

RatioResult competitive_ratio(const SelectionInstance& inst) {
  const double breakpoint = inst.breakpoint();
  const double gamma =
      q_value(inst.m(), inst.k(), Quantile(breakpoint)) /
      static_cast<double>(inst.k());
  return RatioResult{gamma, breakpoint, inst};
}

double phi_value(const SelectionInstance& inst, double atom, double constant,
                 double q) {
  const Quantile at(q);
  if (q == 0.0) return 0.0;
  return q_value(inst.m(), inst.k(), at) / q * (atom + q * constant);
}

PhiCurve phi_curve(const SelectionInstance& inst, std::size_t grid) {
  if (grid < 2) throw std::domain_error("phi_curve needs grid >= 2");
  const auto [primal, dual] = build_certificates(inst);
  (void)dual;
  PhiCurve out;
  out.q.resize(grid);
  out.phi.resize(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    const double q = static_cast<double>(i) / static_cast<double>(grid - 1);
    out.q[i] = q;
    out.phi[i] = phi_value(inst, primal.atom, primal.constant, q);
    if (out.phi[i] > out.phi[out.argmax]) out.argmax = i;
  }
  out.max_value = out.phi[out.argmax];
  return out;
}

GridRatio best_grid_ratio(const DistributionSpec& dist,
                          const SelectionInstance& inst, std::size_t grid) {
  if (grid < 2) throw std::domain_error("best_grid_ratio needs grid >= 2");
  const double opt = opt_value(dist, inst.n(), inst.k());
  GridRatio best;
  for (std::size_t i = 0; i < grid; ++i) {
    const double q = static_cast<double>(i) / static_cast<double>(grid - 1);
    const double r = alg_value(dist, inst.m(), inst.k(), Quantile(q)) / opt;
    if (r > best.ratio) best = {q, r};
  }
  return best;
}

}  // namespace prophetcomp
