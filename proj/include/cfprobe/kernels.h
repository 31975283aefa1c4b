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

#ifndef CFPROBE_KERNELS_H_
#define CFPROBE_KERNELS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace cfprobe {

struct Confusion {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
};

// 2TP / (2TP + FP + FN), or 0 when there are no positives at all.
double F1FromCounts(const Confusion& c);

namespace kernels {

// A metric evaluated on a resample, given as indices into the examples.
using ResampleMetric = std::function<double(std::span<const std::size_t>)>;

// Draw i uses its own mt19937_64 seeded from (seed, i); index j of the
// resample is rng() % n. Both variants return identical replicate vectors.
std::vector<double> BootstrapSerial(std::size_t n, std::size_t iterations,
                                    std::uint64_t seed, const ResampleMetric& metric);
std::vector<double> BootstrapParallel(std::size_t n, std::size_t iterations,
                                      std::uint64_t seed, const ResampleMetric& metric);

// Seed of the generator for bootstrap draw `iteration`.
std::uint64_t BootstrapDrawSeed(std::uint64_t seed, std::size_t iteration);

// Linearly interpolated percentile at rank p * (n - 1) of sorted values.
double Percentile(std::span<const double> sorted, double p);

inline constexpr std::size_t kThresholdSteps = 101;  // tau = i / 100
inline constexpr std::size_t kWeightSteps = 11;      // w_s = j / 10

struct GridInput {
  std::span<const double> sensitivity;
  std::span<const double> variance;
  std::span<const std::uint8_t> labels;  // 1 = hallucination
};

// F1 for every (w_s, tau) cell, laid out w-major: cell j * 101 + i.
std::vector<double> CalibrationGridSerial(const GridInput& input);
std::vector<double> CalibrationGridParallel(const GridInput& input);

struct GridOptimum {
  double threshold = 0.0;
  double w_sensitivity = 0.0;
  double f1 = 0.0;
};

// Highest F1; ties go to the smaller tau, then the larger w_s.
GridOptimum SelectGridOptimum(std::span<const double> cells);

double GridThreshold(std::size_t i);
double GridWeight(std::size_t j);

}  // namespace kernels
}  // namespace cfprobe

#endif  // CFPROBE_KERNELS_H_
