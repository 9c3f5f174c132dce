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

#ifndef PROPHETCOMP_MC_HPP_
#define PROPHETCOMP_MC_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "prophetcomp/distribution.hpp"
#include "prophetcomp/instance.hpp"

namespace prophetcomp {

// Philox4x32-10 block function (Salmon et al., SC'11).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;
PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key);

// Uniform stream for one trial: draw i is a pure function of
// (seed, trial, i), so trials can be evaluated in any order.
class TrialStream {
 public:
  TrialStream(std::uint64_t seed, std::uint64_t trial);
  // 53-bit uniform in the open interval (0, 1).
  double uniform(std::uint64_t draw) const;

 private:
  PhiloxKey key_;
  std::uint64_t trial_;
};

enum class TieBreak { kNone, kUniformNoise };

struct McConfig {
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 0;
  TieBreak tie_break = TieBreak::kUniformNoise;
  // 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
};

McEstimate simulate_threshold(const DistributionSpec& dist, std::int64_t m,
                              std::int64_t k, Quantile q,
                              const McConfig& cfg);

McEstimate simulate_prophet(const DistributionSpec& dist, std::int64_t n,
                            std::int64_t k, const McConfig& cfg);

struct ScanPoint {
  double q = 0.0;
  double ratio = 0.0;
  double std_error = 0.0;
};

// ALG/OPT on q_j = j / (q_grid - 1). Each trial draws max(m, n) uniforms;
// the prophet sees the first n and every threshold rule the first m.
std::vector<ScanPoint> empirical_ratio_scan(const DistributionSpec& dist,
                                            const SelectionInstance& inst,
                                            std::size_t q_grid,
                                            const McConfig& cfg);

}  // namespace prophetcomp

#endif  // PROPHETCOMP_MC_HPP_
