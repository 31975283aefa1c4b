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

#include "cfprobe/scoring.h"

#include <algorithm>
#include <cmath>

#include "cfprobe/confidence_backend.h"
#include "cfprobe/errors.h"

namespace cfprobe {
namespace {

// Slack for values that left [0, 1] only through rounding.
constexpr double kRangeSlack = 1e-12;

void CheckUnit(double v, const char* what) {
  if (!(v >= -kRangeSlack && v <= 1.0 + kRangeSlack)) {
    throw InvalidArgument(std::string(what) + " must lie in [0, 1]");
  }
}

}  // namespace

void ScoringWeights::Validate() const {
  if (!(w_sensitivity >= 0.0) || !(w_variance >= 0.0)) {
    throw InvalidArgument("scoring weights must be non-negative");
  }
  if (std::abs(w_sensitivity + w_variance - 1.0) > 1e-9) {
    throw InvalidArgument("scoring weights must sum to 1");
  }
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw InvalidArgument("threshold must lie in [0, 1]");
  }
}

double Sensitivity(double conf_statement, std::span<const double> conf_counterfactuals) {
  if (conf_counterfactuals.empty()) throw EmptyCounterfactualSet();
  CheckUnit(conf_statement, "statement confidence");
  double total = 0.0;
  for (double c : conf_counterfactuals) {
    CheckUnit(c, "counterfactual confidence");
    total += std::abs(conf_statement - c);
  }
  return total / static_cast<double>(conf_counterfactuals.size());
}

double ConfidenceVariance(std::span<const double> conf_counterfactuals) {
  if (conf_counterfactuals.empty()) throw EmptyCounterfactualSet();
  const double n = static_cast<double>(conf_counterfactuals.size());
  double mean = 0.0;
  for (double c : conf_counterfactuals) mean += c;
  mean /= n;
  double sum_sq = 0.0;
  for (double c : conf_counterfactuals) sum_sq += (c - mean) * (c - mean);
  return sum_sq / n;
}

double HallucinationProbability(double sensitivity, double variance,
                                const ScoringWeights& weights) {
  CheckUnit(sensitivity, "sensitivity");
  if (!(variance >= -kRangeSlack && variance <= kMaxVariance + kRangeSlack)) {
    throw InvalidArgument("variance must lie in [0, 0.25]");
  }
  const double p = weights.w_sensitivity * (1.0 - sensitivity) +
                   weights.w_variance * (1.0 - variance / kMaxVariance);
  return std::clamp(p, 0.0, 1.0);
}

SensitivityReport ScoreConfidences(std::string statement_id, double conf_statement,
                                   std::vector<double> conf_counterfactuals,
                                   std::vector<ProbeKind> probe_kinds,
                                   const ScoringWeights& weights) {
  weights.Validate();
  SensitivityReport r;
  r.statement_id = std::move(statement_id);
  r.conf_original = conf_statement;
  r.sensitivity = Sensitivity(conf_statement, conf_counterfactuals);
  r.variance = ConfidenceVariance(conf_counterfactuals);
  r.conf_counterfactuals = std::move(conf_counterfactuals);
  r.probe_kinds = std::move(probe_kinds);
  r.p_hall = HallucinationProbability(r.sensitivity, r.variance, weights);
  r.threshold_used = weights.threshold;
  r.verdict = r.p_hall > weights.threshold;
  return r;
}

SensitivityReport Rescore(const SensitivityReport& report, const ScoringWeights& weights) {
  weights.Validate();
  SensitivityReport r = report;
  r.p_hall = HallucinationProbability(r.sensitivity, r.variance, weights);
  r.threshold_used = weights.threshold;
  r.verdict = r.p_hall > weights.threshold;
  return r;
}

SensitivityReport DetectStatement(const Statement& statement,
                                  std::span<const Counterfactual> probes,
                                  ConfidenceService& service,
                                  const ScoringWeights& weights) {
  if (probes.empty()) throw EmptyCounterfactualSet();
  std::vector<std::string> texts;
  texts.reserve(probes.size() + 1);
  texts.push_back(statement.text);
  for (const Counterfactual& c : probes) texts.push_back(c.text);

  const std::vector<BatchItem> scores = service.EstimateBatch(texts);
  for (const BatchItem& item : scores) {
    if (item.ok()) continue;
    if (item.exception) std::rethrow_exception(item.exception);
    throw TransportError(item.error);
  }
  std::vector<double> conf_cs;
  std::vector<ProbeKind> kinds;
  conf_cs.reserve(probes.size());
  for (std::size_t i = 0; i < probes.size(); ++i) {
    conf_cs.push_back(scores[i + 1].score->value);
    kinds.push_back(probes[i].kind);
  }
  return ScoreConfidences(statement.id(), scores[0].score->value, std::move(conf_cs),
                          std::move(kinds), weights);
}

std::array<std::optional<double>, 4> PerKindSensitivity(const SensitivityReport& report) {
  std::array<double, 4> sums{};
  std::array<int, 4> counts{};
  for (std::size_t i = 0; i < report.conf_counterfactuals.size() &&
                          i < report.probe_kinds.size();
       ++i) {
    const std::size_t k = Index(report.probe_kinds[i]);
    sums[k] += std::abs(report.conf_original - report.conf_counterfactuals[i]);
    ++counts[k];
  }
  std::array<std::optional<double>, 4> out;
  for (std::size_t k = 0; k < 4; ++k) {
    if (counts[k] > 0) out[k] = sums[k] / counts[k];
  }
  return out;
}

}  // namespace cfprobe
