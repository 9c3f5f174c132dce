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

#include "prophetcomp/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "prophetcomp/binom.hpp"
#include "prophetcomp/quadrature.hpp"
#include "prophetcomp/ratio.hpp"
#include "prophetcomp/simplex.hpp"

namespace prophetcomp {
namespace {

constexpr double kEqualityTol = 1e-10;
constexpr double kSignSlack = 1e-12;
constexpr double kIdentityTol = 1e-8;
// Grid cells are short and w is a polynomial, so a shallow rule suffices.
constexpr double kCellTol = 1e-11;
constexpr unsigned kCellDepth = 6;

CheckReport make_report(std::string name, const SelectionInstance& inst) {
  return CheckReport{std::move(name), inst, true, 0.0, 0.0, {}};
}

void record(CheckReport& r, double residual, double at) {
  if (residual > r.max_residual) {
    r.max_residual = residual;
    r.witness = at;
  }
}

void fail(CheckReport& r, double at, const std::string& why) {
  if (r.passed) {
    r.witness = at;
    r.detail = why;
  }
  r.passed = false;
}

double dbl(std::int64_t x) { return static_cast<double>(x); }

// Log-space pieces of the quasiconcavity analysis at interior q.
struct LogPieces {
  double w;  // log w(q)
  double i;  // log I(q)
  double j;  // log J(q)
};

LogPieces log_pieces(std::int64_t m, std::int64_t k, double q) {
  const double lm = std::log(dbl(m));
  const double lm1 = std::log(dbl(m - 1));
  return LogPieces{
      binom_pmf_log({m - 2, q}, k - 1),
      log_binom_cdf({m - 1, q}, k - 1) - lm1,
      std::log(dbl(k)) - lm - lm1 + log_binom_sf({m, q}, k + 1),
  };
}

double rel_gap(double a, double b) {
  const double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
  return std::fabs(a - b) / scale;
}

}  // namespace

DualCertificate::DualCertificate(const SelectionInstance& inst)
    : n_(inst.n()),
      k_(inst.k()),
      breakpoint_(inst.breakpoint()),
      q_at_break_(q_value(inst.m(), inst.k(), Quantile(inst.breakpoint()))),
      value_(q_at_break_ / dbl(inst.k())) {}

double DualCertificate::eta(double u) const {
  if (u < 0.0 || u > 1.0) throw std::domain_error("eta needs u in [0,1]");
  const double mass = kernel_mass(n_, k_, u);
  if (u <= breakpoint_) {
    return dbl(n_) / dbl(k_) * q_at_break_ * u - value_ * mass;
  }
  return q_at_break_ - value_ * mass;
}

double DualCertificate::eta_derivative(double u) const {
  const double slope =
      u <= breakpoint_ ? dbl(n_) / dbl(k_) * q_at_break_ : 0.0;
  return slope - value_ * g_kernel(n_, k_, u);
}

CertificatePair build_certificates(const SelectionInstance& inst) {
  const std::int64_t m = inst.m();
  const std::int64_t n = inst.n();
  const std::int64_t k = inst.k();
  const Quantile at(inst.breakpoint());
  const double q = q_value(m, k, at);
  const double dq = q_deriv(m, k, at);
  const double gap = q_concavity_gap(m, k, at);
  PrimalCertificate primal;
  primal.atom = dbl(k) * dq / (dbl(n) * dbl(n) * q);
  primal.constant = gap / (dbl(k) * q);
  primal.value = q / dbl(k);
  return CertificatePair{primal, DualCertificate(inst)};
}

GridSpec::GridSpec(std::size_t points, double breakpoint) {
  if (points < 2) throw std::domain_error("grid needs at least 2 points");
  if (!(breakpoint >= 0.0 && breakpoint <= 1.0)) {
    throw std::domain_error("grid breakpoint must lie in [0,1]");
  }
  nodes_.reserve(points + 1);
  const double denom = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    nodes_.push_back(static_cast<double>(i) / denom);
  }
  nodes_.back() = 1.0;
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), breakpoint);
  if (it == nodes_.end() || *it != breakpoint) {
    it = nodes_.insert(it, breakpoint);
  }
  breakpoint_index_ = static_cast<std::size_t>(it - nodes_.begin());
}

double GridSpec::max_spacing() const {
  double out = 0.0;
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    out = std::max(out, nodes_[i] - nodes_[i - 1]);
  }
  return out;
}

GridSpec instance_grid(const SelectionInstance& inst, std::size_t points) {
  return GridSpec(points, inst.breakpoint());
}

CheckReport check_primal_feasibility(const PrimalCertificate& cert,
                                     const SelectionInstance& inst,
                                     const GridSpec& grid) {
  CheckReport r = make_report("primal_feasibility", inst);
  const double d = cert.value;
  const std::int64_t k = inst.k();

  if (cert.atom < 0.0 || cert.constant < 0.0) {
    fail(r, 0.0, "negative certificate constant");
  }
  const double norm = cert.atom * dbl(inst.n()) + cert.constant * dbl(k);
  if (std::fabs(norm - 1.0) > 1e-12) fail(r, 0.0, "normalization broken");

  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double q = grid[i];
    const double phi = phi_value(inst, cert.atom, cert.constant, q);
    const double excess = (phi - d) / d;
    record(r, excess, q);
    if (excess > kEqualityTol) fail(r, q, "constraint violated");
    if (inst.m() == k && std::fabs(excess) > kEqualityTol) {
      fail(r, q, "phi not constant for m = k");
    }
  }
  const double at_break =
      phi_value(inst, cert.atom, cert.constant, inst.breakpoint());
  if (std::fabs(at_break - d) > kEqualityTol * d) {
    fail(r, inst.breakpoint(), "constraint not active at breakpoint");
  }

  if (inst.m() == k + 1) {
    const double a = cert.atom;
    const double b = cert.constant;
    const double kd = dbl(k);
    auto dphi = [&](double q) {
      return b * (kd + 1.0 - std::pow(q, kd)) -
             kd * std::pow(q, kd - 1.0) * (a + b * q);
    };
    double prev = dphi(grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
      const double cur = dphi(grid[i]);
      if (cur > prev + kSignSlack) {
        fail(r, grid[i], "phi' increasing for m = k + 1");
      }
      prev = cur;
    }
  }
  return r;
}

CheckReport check_dual_feasibility(const DualCertificate& cert,
                                   const SelectionInstance& inst,
                                   const GridSpec& grid) {
  CheckReport r = make_report("dual_feasibility", inst);
  if (cert.atom_mass() != 1.0) fail(r, cert.atom_location(), "alpha mass");
  const double q_break = cert.value() * dbl(inst.k());
  const double slope = dbl(inst.n()) / dbl(inst.k()) * q_break;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double u = grid[i];
    const double lhs = cert.value() * g_kernel(inst.n(), inst.k(), u) +
                       cert.eta_derivative(u);
    const double rhs = u <= cert.atom_location() ? slope : 0.0;
    const double residual = std::fabs(lhs - rhs) / std::max(1.0, rhs);
    record(r, residual, u);
    if (residual > kEqualityTol) fail(r, u, "dual constraint not tight");
    const double e = cert.eta(u);
    if (e < -kSignSlack) fail(r, u, "eta negative");
  }
  if (std::fabs(cert.eta(0.0)) > kSignSlack) fail(r, 0.0, "eta(0) != 0");
  if (std::fabs(cert.eta(1.0)) > kSignSlack) fail(r, 1.0, "eta(1) != 0");
  return r;
}

double repaired_value(const SelectionInstance& inst, double atom,
                      double constant, const GridSpec& grid) {
  double best = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    best = std::max(best, phi_value(inst, atom, constant, grid[i]));
  }
  return best;
}

bool check_weak_duality(const PrimalCertificate& candidate,
                        const DualCertificate& dual) {
  return candidate.value >= dual.value() * (1.0 - kSignSlack);
}

double stieltjes_against_eta(const DualCertificate& dual,
                             const StepFunction& f) {
  if (f.breaks.size() != f.steps.size()) {
    throw std::invalid_argument("step function shape mismatch");
  }
  std::vector<double> cuts = f.breaks;
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double acc = 0.0;
  double left = 0.0;
  double eta_left = dual.eta(0.0);
  for (const double right : cuts) {
    if (right <= left) continue;
    double level = 0.0;
    for (std::size_t l = 0; l < f.breaks.size(); ++l) {
      if (f.breaks[l] >= right) level += f.steps[l];
    }
    const double eta_right = dual.eta(right);
    acc += level * (eta_right - eta_left);
    left = right;
    eta_left = eta_right;
  }
  return acc;
}

WeakDualityBattery weak_duality_battery(const SelectionInstance& inst,
                                        const GridSpec& grid,
                                        std::size_t trials,
                                        std::uint64_t seed) {
  const auto [primal, dual] = build_certificates(inst);
  WeakDualityBattery out{make_report("weak_duality", inst), trials,
                         std::numeric_limits<double>::infinity(),
                         std::numeric_limits<double>::infinity(),
                         std::numeric_limits<double>::infinity()};
  CheckReport& r = out.report;
  const double n = dbl(inst.n());
  const double k = dbl(inst.k());
  const double v = dual.value();

  std::vector<double> ratio(grid.size(), 0.0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    ratio[i] = q_value(inst.m(), inst.k(), Quantile(grid[i])) / grid[i];
  }

  if (!check_weak_duality(primal, dual) || primal.value != v) {
    fail(r, inst.breakpoint(), "certificate values differ");
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> node(1, grid.size() - 1);
  std::uniform_int_distribution<int> count(1, 8);

  for (std::size_t t = 0; t < trials; ++t) {
    double d_prime = 0.0;
    if (t % 2 == 0) {
      const double delta = (0.05 + 0.45 * unit(rng)) * (unit(rng) < 0.5 ? -1 : 1);
      const double a = std::clamp(primal.atom * (1.0 + delta) +
                                      (primal.atom == 0.0 ? delta / n : 0.0),
                                  0.0, 1.0 / n);
      const double b = std::max(0.0, (1.0 - n * a) / k);
      for (std::size_t i = 1; i < grid.size(); ++i) {
        d_prime = std::max(d_prime, ratio[i] * (a + grid[i] * b));
      }
      if (a != primal.atom) {
        out.min_strict_gap = std::min(out.min_strict_gap, d_prime - v);
      }
    } else {
      StepFunction f;
      f.atom = unit(rng) < 0.5 ? unit(rng) : 0.0;
      const int pieces = count(rng);
      double total = f.atom * n;
      for (int p = 0; p < pieces; ++p) {
        const double at = grid[node(rng)];
        const double s = unit(rng);
        f.breaks.push_back(at);
        f.steps.push_back(s);
        total += s * kernel_mass(inst.n(), inst.k(), at);
      }
      f.atom /= total;
      for (double& s : f.steps) s /= total;
      for (std::size_t i = 1; i < grid.size(); ++i) {
        double mass = f.atom;
        for (std::size_t l = 0; l < f.breaks.size(); ++l) {
          mass += f.steps[l] * std::min(grid[i], f.breaks[l]);
        }
        d_prime = std::max(d_prime, ratio[i] * mass);
      }
      const double st = stieltjes_against_eta(dual, f);
      out.min_stieltjes = std::min(out.min_stieltjes, st);
      if (st < -kEqualityTol) fail(r, t, "negative eta integral");
    }
    out.min_gap = std::min(out.min_gap, d_prime - v);
    if (!check_weak_duality(PrimalCertificate{0.0, 0.0, d_prime}, dual)) {
      fail(r, static_cast<double>(t), "primal point beats dual value");
    }
  }
  r.max_residual = std::max(0.0, -out.min_gap);
  return out;
}

std::vector<CheckReport> check_quasiconcavity(const SelectionInstance& inst,
                                              const GridSpec& grid) {
  const std::int64_t m = inst.m();
  const std::int64_t k = inst.k();
  if (m < k + 2) {
    throw std::domain_error("quasiconcavity analysis needs m >= k + 2");
  }
  const double c = dbl(m) * dbl(m - 1);
  const auto [primal, dual] = build_certificates(inst);
  (void)dual;
  const std::size_t size = grid.size();

  CheckReport r_dec = make_report("quasiconcavity.R_decreasing", inst);
  CheckReport h_neg = make_report("quasiconcavity.h_negative", inst);
  CheckReport h_end = make_report("quasiconcavity.h_endpoints", inst);
  CheckReport sign = make_report("quasiconcavity.phi_sign", inst);
  CheckReport id_i = make_report("quasiconcavity.identity_I", inst);
  CheckReport id_j = make_report("quasiconcavity.identity_J", inst);
  CheckReport ell = make_report("quasiconcavity.log_slope", inst);

  const double log_r_break = [&] {
    const LogPieces p = log_pieces(m, k, inst.breakpoint());
    return 2.0 * std::log(inst.breakpoint()) + p.i - p.j;
  }();

  double prev_log_r = std::numeric_limits<double>::infinity();
  r_dec.max_residual = -std::numeric_limits<double>::infinity();
  h_neg.max_residual = -std::numeric_limits<double>::infinity();
  for (std::size_t idx = 1; idx + 1 < size; ++idx) {
    const double q = grid[idx];
    const LogPieces p = log_pieces(m, k, q);
    const double log_r = 2.0 * std::log(q) + p.i - p.j;
    const double step = log_r - prev_log_r;
    if (idx > 1) {
      if (step > r_dec.max_residual) {
        r_dec.max_residual = step;
        r_dec.witness = q;
      }
      if (!(step < 0.0)) fail(r_dec, q, "R not strictly decreasing");
    }
    prev_log_r = log_r;

    const double h_scaled =
        2.0 - std::exp(std::log(q) + p.w - p.i) -
        std::exp(2.0 * std::log(q) + p.w - p.j);
    if (h_scaled > h_neg.max_residual) {
      h_neg.max_residual = h_scaled;
      h_neg.witness = q;
    }
    if (!(h_scaled < 0.0)) fail(h_neg, q, "h not negative");

    const Quantile at(q);
    const double dq = q_deriv(m, k, at);
    const double gap = q_concavity_gap(m, k, at);
    const double lhs = primal.constant * dq * q * q;
    const double rhs = primal.atom * gap;
    const double direct = lhs - rhs;
    const double via_r = log_r - log_r_break;
    const bool resolvable =
        std::fabs(direct) > 1e-12 * (std::fabs(lhs) + std::fabs(rhs)) &&
        std::fabs(lhs) + std::fabs(rhs) > 1e-290 &&
        std::fabs(via_r) > kSignSlack;
    if (resolvable && ((direct > 0.0) != (via_r > 0.0))) {
      fail(sign, q, "sign of phi' disagrees with R");
    }

    // d/dq log w by central difference against the closed form.
    const double hstep = 1e-6 * std::min(q, 1.0 - q);
    const double fd = (binom_pmf_log({m - 2, q + hstep}, k - 1) -
                       binom_pmf_log({m - 2, q - hstep}, k - 1)) /
                      (2.0 * hstep);
    const double closed = dbl(k - 1) / q - dbl(m - k - 1) / (1.0 - q);
    const double scale = dbl(k - 1) / q + dbl(m - k - 1) / (1.0 - q);
    const double ell_err = std::fabs(fd - closed) / scale;
    record(ell, ell_err, q);
    if (ell_err > 1e-5) fail(ell, q, "log-slope of w mismatch");
  }

  // h at the endpoints, straight from the definitions.
  for (const double q : {0.0, 1.0}) {
    const double w = binom_pmf({m - 2, q}, k - 1);
    const double i = binom_cdf({m - 1, q}, k - 1) / dbl(m - 1);
    const double j = dbl(k) / c * binom_sf({m, q}, k + 1);
    const double h = 2.0 * i * j - q * w * j - q * q * w * i;
    record(h_end, std::fabs(h), q);
    if (std::fabs(h) > kEqualityTol) fail(h_end, q, "h nonzero at endpoint");
  }

  // Cell-wise quadrature of w and t*w, accumulated from each end.
  auto w = [&](double t) { return binom_pmf({m - 2, t}, k - 1); };
  auto tw = [&](double t) { return t * binom_pmf({m - 2, t}, k - 1); };
  std::vector<double> tail(size, 0.0);
  std::vector<double> head(size, 0.0);
  for (std::size_t idx = size - 1; idx-- > 0;) {
    tail[idx] = tail[idx + 1] + integrate(w, grid[idx], grid[idx + 1], kCellTol, kCellDepth).value;
  }
  for (std::size_t idx = 1; idx < size; ++idx) {
    head[idx] = head[idx - 1] + integrate(tw, grid[idx - 1], grid[idx], kCellTol, kCellDepth)
                      .value;
  }
  for (std::size_t idx = 1; idx + 1 < size; ++idx) {
    const Quantile at(grid[idx]);
    const double ei = rel_gap(c * tail[idx], q_deriv(m, k, at));
    const double ej = rel_gap(c * head[idx], q_concavity_gap(m, k, at));
    record(id_i, ei, grid[idx]);
    record(id_j, ej, grid[idx]);
    if (ei > kIdentityTol) fail(id_i, grid[idx], "c*I differs from Q'");
    if (ej > kIdentityTol) fail(id_j, grid[idx], "c*J differs from Q - qQ'");
  }

  return {r_dec, h_neg, h_end, sign, id_i, id_j, ell};
}

CheckReport check_phi_argmax(const SelectionInstance& inst,
                             const GridSpec& grid) {
  CheckReport r = make_report("phi_argmax", inst);
  const auto [primal, dual] = build_certificates(inst);
  (void)dual;
  std::size_t best = 0;
  std::vector<double> phi(grid.size(), 0.0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    phi[i] = phi_value(inst, primal.atom, primal.constant, grid[i]);
    if (phi[i] > phi[best]) best = i;
  }
  const double at_break = phi[grid.breakpoint_index()];
  r.witness = grid[best];
  r.max_residual = (phi[best] - at_break) / at_break;
  const bool near = std::fabs(grid[best] - inst.breakpoint()) <=
                    grid.max_spacing();
  if (!near && r.max_residual > kSignSlack) {
    fail(r, grid[best], "phi maximized away from breakpoint");
  }
  if (std::fabs(at_break - primal.value) > 1e-9) {
    fail(r, inst.breakpoint(), "phi(k/n) differs from gamma");
  }
  return r;
}

LpResult solve_discretized_lp(const SelectionInstance& inst,
                              std::size_t grid_cells) {
  if (grid_cells < 10 || grid_cells > 2000) {
    throw std::domain_error("grid_cells must lie in [10, 2000]");
  }
  const std::size_t cells = grid_cells;
  const double inv = 1.0 / static_cast<double>(cells);
  // x = (d, atom, s_1..s_N); f = atom * delta_0 + sum_l s_l 1[u <= l/N].
  LinearProgram lp;
  lp.objective.assign(cells + 2, 0.0);
  lp.objective[0] = 1.0;
  for (std::size_t i = 1; i <= cells; ++i) {
    const double q = static_cast<double>(i) * inv;
    const double slope = q_value(inst.m(), inst.k(), Quantile(q)) / q;
    LinearProgram::Row row;
    row.coeffs.assign(cells + 2, 0.0);
    row.coeffs[0] = -1.0;
    row.coeffs[1] = slope;
    for (std::size_t l = 1; l <= cells; ++l) {
      row.coeffs[1 + l] = slope * static_cast<double>(std::min(i, l)) * inv;
    }
    row.sense = Sense::kLessEqual;
    row.rhs = 0.0;
    lp.rows.push_back(std::move(row));
  }
  LinearProgram::Row norm;
  norm.coeffs.assign(cells + 2, 0.0);
  norm.coeffs[1] = dbl(inst.n());
  for (std::size_t l = 1; l <= cells; ++l) {
    norm.coeffs[1 + l] =
        kernel_mass(inst.n(), inst.k(), static_cast<double>(l) * inv);
  }
  norm.sense = Sense::kEqual;
  norm.rhs = 1.0;
  lp.rows.push_back(std::move(norm));

  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw std::runtime_error("discretized LP did not reach an optimum");
  }
  return LpResult{sol.objective, sol.x[1], sol.pivots, cells};
}

}  // namespace prophetcomp
