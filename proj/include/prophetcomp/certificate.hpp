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

#ifndef PROPHETCOMP_CERTIFICATE_HPP_
#define PROPHETCOMP_CERTIFICATE_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "prophetcomp/instance.hpp"

namespace prophetcomp {

// Primal solution f = atom * delta_0 + constant on [0,1], objective `value`.
struct PrimalCertificate {
  double atom = 0.0;
  double constant = 0.0;
  double value = 0.0;
};

// Dual solution: alpha is a unit atom at `atom_location` = k/n.
class DualCertificate {
 public:
  explicit DualCertificate(const SelectionInstance& inst);

  double value() const { return value_; }
  double atom_location() const { return breakpoint_; }
  double atom_mass() const { return 1.0; }

  double eta(double u) const;
  double eta_derivative(double u) const;

 private:
  std::int64_t n_;
  std::int64_t k_;
  double breakpoint_;
  double q_at_break_;
  double value_;
};

struct CertificatePair {
  PrimalCertificate primal;
  DualCertificate dual;
};

CertificatePair build_certificates(const SelectionInstance& inst);

// Evaluation grid on [0,1] that always contains the endpoints and one
// extra node placed exactly on the breakpoint.
class GridSpec {
 public:
  GridSpec(std::size_t points, double breakpoint);

  const std::vector<double>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  double operator[](std::size_t i) const { return nodes_[i]; }
  std::size_t breakpoint_index() const { return breakpoint_index_; }
  double max_spacing() const;

 private:
  std::vector<double> nodes_;
  std::size_t breakpoint_index_ = 0;
};

GridSpec instance_grid(const SelectionInstance& inst, std::size_t points);

struct CheckReport {
  std::string check;
  SelectionInstance instance;
  bool passed = true;
  double max_residual = 0.0;
  double witness = 0.0;
  std::string detail;
};

CheckReport check_primal_feasibility(const PrimalCertificate& cert,
                                     const SelectionInstance& inst,
                                     const GridSpec& grid);

CheckReport check_dual_feasibility(const DualCertificate& cert,
                                   const SelectionInstance& inst,
                                   const GridSpec& grid);

// Smallest d' making (atom, constant) feasible on the grid.
double repaired_value(const SelectionInstance& inst, double atom,
                      double constant, const GridSpec& grid);

bool check_weak_duality(const PrimalCertificate& candidate,
                        const DualCertificate& dual);

// Nonincreasing step function: f = atom * delta_0 + sum_l steps[l] on
// [0, breaks[l]].
struct StepFunction {
  double atom = 0.0;
  std::vector<double> breaks;
  std::vector<double> steps;
};

// Int f d(eta) by Stieltjes summation; the atom at 0 meets eta(0) = 0.
double stieltjes_against_eta(const DualCertificate& dual,
                             const StepFunction& f);

struct WeakDualityBattery {
  CheckReport report;
  std::size_t trials = 0;
  double min_gap = 0.0;
  double min_strict_gap = 0.0;
  double min_stieltjes = 0.0;
};

// Random normalized primal points (perturbed (A, B) pairs and random step
// functions), each repaired to feasibility, must not beat the dual value.
WeakDualityBattery weak_duality_battery(const SelectionInstance& inst,
                                        const GridSpec& grid,
                                        std::size_t trials,
                                        std::uint64_t seed);

// Requires m >= k + 2. Returns one report per sub-check.
std::vector<CheckReport> check_quasiconcavity(const SelectionInstance& inst,
                                              const GridSpec& grid);

CheckReport check_phi_argmax(const SelectionInstance& inst,
                             const GridSpec& grid);

struct LpResult {
  double value = 0.0;
  double atom = 0.0;
  std::size_t pivots = 0;
  std::size_t cells = 0;
};

LpResult solve_discretized_lp(const SelectionInstance& inst,
                              std::size_t grid_cells);

}  // namespace prophetcomp

#endif  // PROPHETCOMP_CERTIFICATE_HPP_
