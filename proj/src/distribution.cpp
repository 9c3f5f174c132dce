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

#include "prophetcomp/distribution.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace prophetcomp {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::domain_error(what);
}

void validate(const Uniform& d) {
  require(d.lo >= 0.0 && d.hi > d.lo && std::isfinite(d.hi),
          "uniform needs 0 <= lo < hi < inf");
}
void validate(const Exponential& d) {
  require(d.rate > 0.0 && std::isfinite(d.rate), "exponential needs rate > 0");
}
void validate(const Pareto& d) {
  require(d.shape > 1.0 && std::isfinite(d.shape),
          "pareto needs shape > 1 for a finite mean");
  require(d.scale > 0.0 && std::isfinite(d.scale), "pareto needs scale > 0");
}
void validate(const QuantileTable& d) {
  const auto& k = d.knots;
  require(k.size() >= 2, "quantile table needs at least two knots");
  require(k.front().first == 0.0 && k.back().first == 1.0,
          "quantile table knots must start at u=0 and end at u=1");
  for (std::size_t i = 0; i < k.size(); ++i) {
    require(std::isfinite(k[i].second) && k[i].second >= 0.0,
            "quantile table values must be finite and nonnegative");
    if (i > 0) {
      require(k[i].first > k[i - 1].first,
              "quantile table u must be strictly increasing");
      require(k[i].second <= k[i - 1].second,
              "quantile table values must be nonincreasing in u");
    }
  }
}
void validate(const AtomWorstCase& d) {
  require(d.atom >= 0.0 && d.constant >= 0.0 && std::isfinite(d.atom) &&
              std::isfinite(d.constant),
          "atom worst case needs A >= 0 and B >= 0");
  require(d.mass > 0.0 && d.mass <= 1.0, "atom worst case needs p in (0, 1]");
}

// Linear piece containing u: index i with knots[i].u <= u <= knots[i+1].u.
std::size_t table_segment(const QuantileTable& t, double u) {
  std::size_t i = 0;
  while (i + 2 < t.knots.size() && t.knots[i + 1].first < u) ++i;
  return i;
}

double table_value(const QuantileTable& t, std::size_t i, double u) {
  const auto [u0, v0] = t.knots[i];
  const auto [u1, v1] = t.knots[i + 1];
  return std::lerp(v0, v1, (u - u0) / (u1 - u0));
}

}  // namespace

DistributionSpec::DistributionSpec(Variant v) : v_(std::move(v)) {
  std::visit([](const auto& d) { validate(d); }, v_);
}

double DistributionSpec::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::domain_error("quantile level outside [0, 1]");
  }
  return std::visit(
      Overloaded{
          [u](const Uniform& d) { return d.hi - u * (d.hi - d.lo); },
          [u](const Exponential& d) { return -std::log(u) / d.rate; },
          [u](const Pareto& d) {
            return u == 0.0 ? std::numeric_limits<double>::infinity()
                            : d.scale * std::pow(u, -1.0 / d.shape);
          },
          [u](const QuantileTable& d) {
            return table_value(d, table_segment(d, u), u);
          },
          [u](const AtomWorstCase& d) {
            return u <= d.mass ? d.constant + d.atom / d.mass : d.constant;
          },
      },
      v_);
}

double DistributionSpec::quantile_integral(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::domain_error("quantile level outside [0, 1]");
  }
  if (q == 0.0) return 0.0;
  return std::visit(
      Overloaded{
          [q](const Uniform& d) { return q * d.hi - 0.5 * q * q * (d.hi - d.lo); },
          [q](const Exponential& d) { return q * (1.0 - std::log(q)) / d.rate; },
          [q](const Pareto& d) {
            const double e = 1.0 - 1.0 / d.shape;
            return d.scale * std::pow(q, e) / e;
          },
          [q](const QuantileTable& d) {
            double acc = 0.0;
            for (std::size_t i = 0; i + 1 < d.knots.size(); ++i) {
              const double u0 = d.knots[i].first;
              if (u0 >= q) break;
              const double u1 = std::min(q, d.knots[i + 1].first);
              acc += 0.5 * (u1 - u0) *
                     (table_value(d, i, u0) + table_value(d, i, u1));
            }
            return acc;
          },
          [q](const AtomWorstCase& d) {
            if (q < d.mass) return q * (d.constant + d.atom / d.mass);
            return d.atom + q * d.constant;
          },
      },
      v_);
}

bool DistributionSpec::has_atoms() const {
  return std::visit(
      Overloaded{
          [](const QuantileTable& d) {
            for (std::size_t i = 0; i + 1 < d.knots.size(); ++i) {
              if (d.knots[i].second == d.knots[i + 1].second) return true;
            }
            return false;
          },
          [](const AtomWorstCase&) { return true; },
          [](const auto&) { return false; },
      },
      v_);
}

std::string DistributionSpec::describe() const {
  std::ostringstream os;
  os.precision(12);
  std::visit(Overloaded{
                 [&](const Uniform& d) {
                   os << "uniform:" << d.lo << "," << d.hi;
                 },
                 [&](const Exponential& d) { os << "exp:" << d.rate; },
                 [&](const Pareto& d) {
                   os << "pareto:" << d.shape << "," << d.scale;
                 },
                 [&](const QuantileTable& d) {
                   os << "table:";
                   for (std::size_t i = 0; i < d.knots.size(); ++i) {
                     if (i) os << ",";
                     os << d.knots[i].first << "/" << d.knots[i].second;
                   }
                 },
                 [&](const AtomWorstCase& d) {
                   os << "atomwc:" << d.atom << "," << d.constant << ","
                      << d.mass;
                 },
             },
             v_);
  return os.str();
}

std::vector<DistributionSpec> distribution_catalog() {
  std::vector<DistributionSpec> out;
  out.emplace_back(Uniform{0.0, 1.0});
  out.emplace_back(Exponential{1.0});
  out.emplace_back(Pareto{4.0, 1.0});
  out.emplace_back(
      QuantileTable{{{0.0, 5.0}, {0.1, 2.0}, {0.4, 2.0}, {1.0, 0.0}}});
  out.emplace_back(AtomWorstCase{0.05, 0.5, 0.02});
  return out;
}

}  // namespace prophetcomp
