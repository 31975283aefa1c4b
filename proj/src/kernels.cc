//
// Copyright 2026 The cfprobe Authors
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
//

#include "cfprobe/kernels.h"

#include <cmath>
#include <random>

#include "cfprobe/errors.h"
#include "cfprobe/scoring.h"
#include "cfprobe/text_util.h"

namespace cfprobe {

double F1FromCounts(const Confusion& c) {
  const std::size_t denom = 2 * c.tp + c.fp + c.fn;
  if (c.tp == 0 || denom == 0) return 0.0;
  return static_cast<double>(2 * c.tp) / static_cast<double>(denom);
}

namespace kernels {
namespace {

double OneReplicate(std::size_t n, std::uint64_t seed, std::size_t iteration,
                    const ResampleMetric& metric, std::vector<std::size_t>& scratch) {
  std::mt19937_64 rng(BootstrapDrawSeed(seed, iteration));
  scratch.resize(n);
  for (std::size_t j = 0; j < n; ++j) scratch[j] = rng() % n;
  return metric(scratch);
}

void CheckGrid(const GridInput& in) {
  if (in.sensitivity.size() != in.variance.size()) {
    throw LengthMismatch(in.sensitivity.size(), in.variance.size());
  }
  if (in.sensitivity.size() != in.labels.size()) {
    throw LengthMismatch(in.sensitivity.size(), in.labels.size());
  }
}

// F1 at every threshold for one weight column.
void FillColumn(const GridInput& in, std::size_t j, double* out) {
  const double w = GridWeight(j);
  ScoringWeights weights;
  weights.w_sensitivity = w;
  weights.w_variance = 1.0 - w;
  const std::size_t n = in.labels.size();
  std::vector<double> p(n);
  for (std::size_t e = 0; e < n; ++e) {
    p[e] = HallucinationProbability(in.sensitivity[e], in.variance[e], weights);
  }
  for (std::size_t i = 0; i < kThresholdSteps; ++i) {
    const double tau = GridThreshold(i);
    Confusion c;
    for (std::size_t e = 0; e < n; ++e) {
      const bool flagged = p[e] > tau;
      if (in.labels[e]) {
        flagged ? ++c.tp : ++c.fn;
      } else {
        flagged ? ++c.fp : ++c.tn;
      }
    }
    out[i] = F1FromCounts(c);
  }
}

}  // namespace

std::uint64_t BootstrapDrawSeed(std::uint64_t seed, std::size_t iteration) {
  return SplitMix64(SplitMix64(seed) ^ static_cast<std::uint64_t>(iteration));
}

std::vector<double> BootstrapSerial(std::size_t n, std::size_t iterations,
                                    std::uint64_t seed, const ResampleMetric& metric) {
  if (n == 0) throw EmptyInput();
  std::vector<double> out(iterations);
  std::vector<std::size_t> scratch;
  for (std::size_t i = 0; i < iterations; ++i) {
    out[i] = OneReplicate(n, seed, i, metric, scratch);
  }
  return out;
}

std::vector<double> BootstrapParallel(std::size_t n, std::size_t iterations,
                                      std::uint64_t seed, const ResampleMetric& metric) {
  if (n == 0) throw EmptyInput();
  std::vector<double> out(iterations);
  const long long count = static_cast<long long>(iterations);
#pragma omp parallel
  {
    std::vector<std::size_t> scratch;
#pragma omp for schedule(static)
    for (long long i = 0; i < count; ++i) {
      out[i] = OneReplicate(n, seed, static_cast<std::size_t>(i), metric, scratch);
    }
  }
  return out;
}

double Percentile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw EmptyInput();
  const double rank = p * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(rank));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = rank - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double GridThreshold(std::size_t i) { return static_cast<double>(i) / 100.0; }
double GridWeight(std::size_t j) { return static_cast<double>(j) / 10.0; }

std::vector<double> CalibrationGridSerial(const GridInput& input) {
  CheckGrid(input);
  std::vector<double> cells(kWeightSteps * kThresholdSteps);
  for (std::size_t j = 0; j < kWeightSteps; ++j) {
    FillColumn(input, j, cells.data() + j * kThresholdSteps);
  }
  return cells;
}

std::vector<double> CalibrationGridParallel(const GridInput& input) {
  CheckGrid(input);
  std::vector<double> cells(kWeightSteps * kThresholdSteps);
  const long long columns = static_cast<long long>(kWeightSteps);
#pragma omp parallel for schedule(dynamic)
  for (long long j = 0; j < columns; ++j) {
    FillColumn(input, static_cast<std::size_t>(j),
               cells.data() + static_cast<std::size_t>(j) * kThresholdSteps);
  }
  return cells;
}

GridOptimum SelectGridOptimum(std::span<const double> cells) {
  if (cells.size() != kWeightSteps * kThresholdSteps) {
    throw LengthMismatch(cells.size(), kWeightSteps * kThresholdSteps);
  }
  GridOptimum best;
  bool have = false;
  // Thresholds ascending, weights descending: the first strict improvement
  // wins, which realizes the tie-break order.
  for (std::size_t i = 0; i < kThresholdSteps; ++i) {
    for (std::size_t jj = kWeightSteps; jj-- > 0;) {
      const double f1 = cells[jj * kThresholdSteps + i];
      if (!have || f1 > best.f1) {
        best = {GridThreshold(i), GridWeight(jj), f1};
        have = true;
      }
    }
  }
  return best;
}

}  // namespace kernels
}  // namespace cfprobe
