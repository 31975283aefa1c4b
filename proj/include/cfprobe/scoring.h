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

#ifndef CFPROBE_SCORING_H_
#define CFPROBE_SCORING_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cfprobe/probe_generation.h"
#include "cfprobe/probe_kind.h"
#include "cfprobe/statement.h"

namespace cfprobe {

class ConfidenceService;

// Variance of values in [0, 1] never exceeds this.
inline constexpr double kMaxVariance = 0.25;

struct ScoringWeights {
  double w_sensitivity = 0.7;
  double w_variance = 0.3;
  double threshold = 0.5;  // tau

  void Validate() const;
};

struct SensitivityReport {
  std::string statement_id;
  double conf_original = 0.0;
  std::vector<double> conf_counterfactuals;
  std::vector<ProbeKind> probe_kinds;  // parallel to conf_counterfactuals
  double sensitivity = 0.0;
  double variance = 0.0;
  double p_hall = 0.0;
  bool verdict = false;
  double threshold_used = 0.5;
};

// Mean absolute gap between the statement's confidence and each
// counterfactual's. Throws EmptyCounterfactualSet on an empty list.
double Sensitivity(double conf_statement, std::span<const double> conf_counterfactuals);

// Population variance of the counterfactual confidences.
double ConfidenceVariance(std::span<const double> conf_counterfactuals);

// w_s * (1 - sensitivity) + w_v * (1 - variance / 0.25), clamped to [0, 1].
// Low sensitivity and low spread both read as hallucination evidence.
// Throws InvalidArgument on out-of-range inputs.
double HallucinationProbability(double sensitivity, double variance,
                                const ScoringWeights& weights);

// Assembles a report from raw confidences and applies verdict = p_hall > tau.
SensitivityReport ScoreConfidences(std::string statement_id, double conf_statement,
                                   std::vector<double> conf_counterfactuals,
                                   std::vector<ProbeKind> probe_kinds,
                                   const ScoringWeights& weights);

// Re-derives p_hall and the verdict of an existing report under new weights.
SensitivityReport Rescore(const SensitivityReport& report, const ScoringWeights& weights);

// Confidences for the statement and every probe (in probe order), then
// ScoreConfidences. Backend failures propagate.
SensitivityReport DetectStatement(const Statement& statement,
                                  std::span<const Counterfactual> probes,
                                  ConfidenceService& service,
                                  const ScoringWeights& weights);

// Mean |conf_original - conf_c| over the probes of each kind; nullopt for
// kinds without probes.
std::array<std::optional<double>, 4> PerKindSensitivity(const SensitivityReport& report);

}  // namespace cfprobe

#endif  // CFPROBE_SCORING_H_
