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

// Brute-force reference implementations. Written independently of the
// library code paths they check: plain loops, no shared helpers.
#ifndef CFPROBE_TESTS_SUPPORT_ORACLES_H_
#define CFPROBE_TESTS_SUPPORT_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

namespace cfprobe::oracle {

inline double Sensitivity(double s, const std::vector<double>& cs) {
  double acc = 0.0;
  for (double c : cs) acc += (s > c) ? (s - c) : (c - s);
  return acc / cs.size();
}

inline double Variance(const std::vector<double>& cs) {
  // Two-pass over pairwise differences: sum_{i<j} (x_i - x_j)^2 / n^2.
  double acc = 0.0;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.size(); ++j) acc += (cs[i] - cs[j]) * (cs[i] - cs[j]);
  }
  const double n = static_cast<double>(cs.size());
  return acc / (n * n);
}

inline double PHall(double sens, double var, double ws, double wv) {
  const double p = ws * (1.0 - sens) + wv * (1.0 - var / 0.25);
  return std::min(1.0, std::max(0.0, p));
}

// ECE by scanning every bin interval explicitly.
inline double Ece(const std::vector<double>& conf, const std::vector<int>& correct,
                  int bins) {
  const double n = static_cast<double>(conf.size());
  double ece = 0.0;
  for (int b = 0; b < bins; ++b) {
    const double lo = static_cast<double>(b) / bins;
    const double hi = static_cast<double>(b + 1) / bins;
    double sc = 0.0;
    double sa = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < conf.size(); ++i) {
      const bool in = (b == 0) ? (conf[i] >= lo && conf[i] <= hi)
                               : (conf[i] > lo && conf[i] <= hi);
      if (!in) continue;
      sc += conf[i];
      sa += correct[i];
      ++count;
    }
    if (count == 0) continue;
    ece += (count / n) * std::fabs(sc / count - sa / count);
  }
  return ece;
}

inline double Brier(const std::vector<double>& conf, const std::vector<int>& outcome) {
  double acc = 0.0;
  for (std::size_t i = 0; i < conf.size(); ++i) {
    acc += std::pow(conf[i] - outcome[i], 2);
  }
  return acc / conf.size();
}

inline double F1(const std::vector<int>& pred, const std::vector<int>& label) {
  int tp = 0;
  int fp = 0;
  int fn = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    tp += pred[i] && label[i];
    fp += pred[i] && !label[i];
    fn += !pred[i] && label[i];
  }
  const double precision = (tp + fp) ? static_cast<double>(tp) / (tp + fp) : 0.0;
  const double recall = (tp + fn) ? static_cast<double>(tp) / (tp + fn) : 0.0;
  return (precision + recall) > 0 ? 2 * precision * recall / (precision + recall) : 0.0;
}

inline std::uint64_t Mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Percentile bootstrap following the documented draw contract: draw i is
// an mt19937_64 seeded with Mix(Mix(seed) ^ i), element j is rng() % n.
inline std::pair<double, double> Bootstrap(
    std::size_t n, std::size_t iterations, std::uint64_t seed, double level,
    const std::function<double(const std::vector<std::size_t>&)>& metric) {
  std::vector<double> reps;
  for (std::size_t i = 0; i < iterations; ++i) {
    std::mt19937_64 rng(Mix(Mix(seed) ^ i));
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < n; ++j) idx.push_back(rng() % n);
    reps.push_back(metric(idx));
  }
  std::sort(reps.begin(), reps.end());
  auto at = [&](double p) {
    const double pos = p * (reps.size() - 1);
    const std::size_t below = static_cast<std::size_t>(pos);
    if (below + 1 >= reps.size()) return reps.back();
    return reps[below] + (pos - below) * (reps[below + 1] - reps[below]);
  };
  const double tail = (1.0 - level) / 2.0;
  return {at(tail), at(1.0 - tail)};
}

struct GridChoice {
  double tau;
  double ws;
  double f1;
};

// Exhaustive (tau, w_s) scan with the documented tie-break.
inline GridChoice Grid(const std::vector<double>& sens, const std::vector<double>& var,
                       const std::vector<int>& labels) {
  GridChoice best{-1.0, -1.0, -1.0};
  for (int wi = 0; wi <= 10; ++wi) {
    const double ws = wi / 10.0;
    for (int ti = 0; ti <= 100; ++ti) {
      const double tau = ti / 100.0;
      std::vector<int> pred;
      for (std::size_t e = 0; e < sens.size(); ++e) {
        pred.push_back(PHall(sens[e], var[e], ws, 1.0 - ws) > tau ? 1 : 0);
      }
      const double f1 = F1(pred, labels);
      const bool better = f1 > best.f1 + 1e-12 ||
                          (std::fabs(f1 - best.f1) <= 1e-12 &&
                           (tau < best.tau || (tau == best.tau && ws > best.ws)));
      if (best.f1 < 0 || better) best = {tau, ws, f1};
    }
  }
  return best;
}

}  // namespace cfprobe::oracle

#endif  // CFPROBE_TESTS_SUPPORT_ORACLES_H_
