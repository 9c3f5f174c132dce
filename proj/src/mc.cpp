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

#include "prophetcomp/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <queue>
#include <stdexcept>
#include <thread>

namespace prophetcomp {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
constexpr std::uint64_t kChunk = 8192;

// Running mean and co-moments of (x, y).
struct Moments {
  double count = 0.0;
  double mx = 0.0;
  double my = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;

  void add(double x, double y) {
    count += 1.0;
    const double dx = x - mx;
    mx += dx / count;
    const double dy = y - my;
    my += dy / count;
    sxx += dx * (x - mx);
    syy += dy * (y - my);
    sxy += dx * (y - my);
  }

  void merge(const Moments& o) {
    if (o.count == 0.0) return;
    if (count == 0.0) {
      *this = o;
      return;
    }
    const double total = count + o.count;
    const double dx = o.mx - mx;
    const double dy = o.my - my;
    const double w = count * o.count / total;
    sxx += o.sxx + dx * dx * w;
    syy += o.syy + dy * dy * w;
    sxy += o.sxy + dx * dy * w;
    mx += dx * o.count / total;
    my += dy * o.count / total;
    count = total;
  }
};

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs body(chunk_index) for every chunk; chunks are claimed dynamically but
// results are stored per chunk, so the reduction order is fixed.
void for_each_chunk(std::uint64_t chunks, unsigned threads,
                    const std::function<void(std::uint64_t)>& body) {
  const unsigned workers = static_cast<unsigned>(
      std::min<std::uint64_t>(resolve_threads(threads), chunks));
  if (workers <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::uint64_t c = next++; c < chunks; c = next++) body(c);
    });
  }
}

McEstimate to_estimate(const Moments& acc, std::uint64_t trials) {
  McEstimate out;
  out.trials = trials;
  out.mean = acc.mx;
  if (trials > 1) {
    const double var = acc.sxx / static_cast<double>(trials - 1);
    out.std_error = std::sqrt(var / static_cast<double>(trials));
  }
  return out;
}

template <class TrialFn>
McEstimate run_scalar(const McConfig& cfg, TrialFn trial_value) {
  if (cfg.trials < 1) throw std::domain_error("trials must be >= 1");
  const std::uint64_t chunks = (cfg.trials + kChunk - 1) / kChunk;
  std::vector<Moments> parts(chunks);
  for_each_chunk(chunks, cfg.threads, [&](std::uint64_t c) {
    const std::uint64_t lo = c * kChunk;
    const std::uint64_t hi = std::min(cfg.trials, lo + kChunk);
    Moments acc;
    for (std::uint64_t t = lo; t < hi; ++t) {
      acc.add(trial_value(TrialStream(cfg.seed, t)), 0.0);
    }
    parts[c] = acc;
  });
  Moments total;
  for (const Moments& p : parts) total.merge(p);
  return to_estimate(total, cfg.trials);
}

// Accepts sequentially among `draws` uniforms; returns the collected sum.
double threshold_pass(const DistributionSpec& dist, const double* u,
                      std::int64_t m, std::int64_t k, double q,
                      double threshold, TieBreak tie) {
  double sum = 0.0;
  std::int64_t taken = 0;
  for (std::int64_t i = 0; i < m && taken < k; ++i) {
    if (tie == TieBreak::kUniformNoise) {
      // Quantile rank is the noise-perturbed order: u <= q wins the tie.
      if (u[i] > q) continue;
      sum += dist.quantile(u[i]);
      ++taken;
    } else {
      const double x = dist.quantile(u[i]);
      if (x < threshold) continue;
      sum += x;
      ++taken;
    }
  }
  return sum;
}

// Sum of f over the k smallest of the first n uniforms.
double prophet_pass(const DistributionSpec& dist, const double* u,
                    std::int64_t n, std::int64_t k,
                    std::vector<double>& heap) {
  heap.clear();
  const auto kk = static_cast<std::size_t>(k);
  for (std::int64_t i = 0; i < n; ++i) {
    if (heap.size() < kk) {
      heap.push_back(u[i]);
      std::push_heap(heap.begin(), heap.end());
    } else if (u[i] < heap.front()) {
      std::pop_heap(heap.begin(), heap.end());
      heap.back() = u[i];
      std::push_heap(heap.begin(), heap.end());
    }
  }
  std::sort(heap.begin(), heap.end());
  double sum = 0.0;
  for (const double x : heap) sum += dist.quantile(x);
  return sum;
}

void fill(const TrialStream& s, std::vector<double>& u, std::int64_t count) {
  u.resize(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    u[static_cast<std::size_t>(i)] = s.uniform(static_cast<std::uint64_t>(i));
  }
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

TrialStream::TrialStream(std::uint64_t seed, std::uint64_t trial)
    : key_{static_cast<std::uint32_t>(seed),
           static_cast<std::uint32_t>(seed >> 32)},
      trial_(trial) {}

double TrialStream::uniform(std::uint64_t draw) const {
  const std::uint64_t block = draw >> 1;
  const PhiloxCounter out = philox4x32_10(
      {static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32),
       static_cast<std::uint32_t>(trial_),
       static_cast<std::uint32_t>(trial_ >> 32)},
      key_);
  const std::size_t half = (draw & 1u) * 2;
  const std::uint64_t bits =
      ((static_cast<std::uint64_t>(out[half]) << 32) | out[half + 1]) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

McEstimate simulate_threshold(const DistributionSpec& dist, std::int64_t m,
                              std::int64_t k, Quantile q,
                              const McConfig& cfg) {
  if (k < 1 || m < k) throw std::domain_error("simulate_threshold needs m >= k >= 1");
  const double qv = q.value();
  const double threshold = dist.quantile(qv);
  return run_scalar(cfg, [&](const TrialStream& s) {
    double sum = 0.0;
    std::int64_t taken = 0;
    for (std::int64_t i = 0; i < m && taken < k; ++i) {
      const double u = s.uniform(static_cast<std::uint64_t>(i));
      if (cfg.tie_break == TieBreak::kUniformNoise) {
        if (u > qv) continue;
        sum += dist.quantile(u);
      } else {
        const double x = dist.quantile(u);
        if (x < threshold) continue;
        sum += x;
      }
      ++taken;
    }
    return sum;
  });
}

McEstimate simulate_prophet(const DistributionSpec& dist, std::int64_t n,
                            std::int64_t k, const McConfig& cfg) {
  if (k < 1 || n < k) throw std::domain_error("simulate_prophet needs n >= k >= 1");
  return run_scalar(cfg, [&](const TrialStream& s) {
    thread_local std::vector<double> u;
    thread_local std::vector<double> heap;
    fill(s, u, n);
    return prophet_pass(dist, u.data(), n, k, heap);
  });
}

std::vector<ScanPoint> empirical_ratio_scan(const DistributionSpec& dist,
                                            const SelectionInstance& inst,
                                            std::size_t q_grid,
                                            const McConfig& cfg) {
  if (q_grid < 2) throw std::domain_error("q_grid must be >= 2");
  if (cfg.trials < 2) throw std::domain_error("trials must be >= 2");
  const std::int64_t m = inst.m();
  const std::int64_t n = inst.n();
  const std::int64_t k = inst.k();
  std::vector<double> qs(q_grid);
  std::vector<double> thresholds(q_grid);
  for (std::size_t j = 0; j < q_grid; ++j) {
    qs[j] = static_cast<double>(j) / static_cast<double>(q_grid - 1);
    thresholds[j] = dist.quantile(qs[j]);
  }

  const std::uint64_t chunks = (cfg.trials + kChunk - 1) / kChunk;
  std::vector<std::vector<Moments>> parts(chunks);
  for_each_chunk(chunks, cfg.threads, [&](std::uint64_t c) {
    const std::uint64_t lo = c * kChunk;
    const std::uint64_t hi = std::min(cfg.trials, lo + kChunk);
    std::vector<Moments> acc(q_grid);
    std::vector<double> u;
    std::vector<double> heap;
    for (std::uint64_t t = lo; t < hi; ++t) {
      fill(TrialStream(cfg.seed, t), u, std::max(m, n));
      const double opt = prophet_pass(dist, u.data(), n, k, heap);
      for (std::size_t j = 0; j < q_grid; ++j) {
        const double alg = threshold_pass(dist, u.data(), m, k, qs[j],
                                          thresholds[j], cfg.tie_break);
        acc[j].add(alg, opt);
      }
    }
    parts[c] = std::move(acc);
  });

  std::vector<ScanPoint> out(q_grid);
  const double trials = static_cast<double>(cfg.trials);
  for (std::size_t j = 0; j < q_grid; ++j) {
    Moments total;
    for (const auto& p : parts) total.merge(p[j]);
    const double a = total.mx;
    const double o = total.my;
    const double var_a = total.sxx / (trials - 1.0);
    const double var_o = total.syy / (trials - 1.0);
    const double cov = total.sxy / (trials - 1.0);
    const double r = a / o;
    // Delta method for a ratio of correlated means.
    const double var_r =
        (var_a - 2.0 * r * cov + r * r * var_o) / (o * o * trials);
    out[j] = ScanPoint{qs[j], r, std::sqrt(std::max(0.0, var_r))};
  }
  return out;
}

}  // namespace prophetcomp
