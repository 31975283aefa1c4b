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

#ifndef CFPROBE_EVALUATION_H_
#define CFPROBE_EVALUATION_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cfprobe/kernels.h"
#include "cfprobe/pipeline.h"
#include "cfprobe/probe_kind.h"
#include "cfprobe/scoring.h"

namespace cfprobe {

// Boolean vectors are stored one byte per element so they can be viewed as
// spans. 1 means hallucination (or flagged, or correct, per context).
using Flags = std::vector<std::uint8_t>;

struct LabeledExample {
  std::string id;
  std::string text;
  bool label = false;  // true: hallucination / false claim
  std::optional<ProbeKind> kind;
  std::string domain;
  std::string dataset;
};

// Line-delimited {"id", "text", "label": 0|1, "kind"?, "domain"?} records.
// Blank lines are skipped. Throws MalformedRecord with the 1-based line.
std::vector<LabeledExample> ParseDataset(std::istream& in, const std::string& dataset);
std::vector<LabeledExample> LoadDataset(const std::filesystem::path& path);

Flags LabelsOf(std::span<const LabeledExample> examples);

struct ClassificationMetrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  Confusion confusion;
};

// Positive class is hallucination. Throws LengthMismatch / EmptyInput.
ClassificationMetrics ComputeClassificationMetrics(std::span<const std::uint8_t> predictions,
                                                   std::span<const std::uint8_t> labels);

// Harmonic mean; 0 when both are 0.
double F1FromPrecisionRecall(double precision, double recall);

// Equal-width bins over [0, 1]; bin b covers (b/B, (b+1)/B], the first also
// includes 0.
std::size_t CalibrationBin(double confidence, std::size_t bins);

double ExpectedCalibrationError(std::span<const double> confidences,
                                std::span<const std::uint8_t> correct,
                                std::size_t bins = 10);

double BrierScore(std::span<const double> confidences,
                  std::span<const std::uint8_t> outcomes);

struct CalibrationBinStats {
  double bin_center = 0.0;
  double mean_confidence = 0.0;
  double accuracy = 0.0;
  std::size_t count = 0;
};

// Non-empty bins only.
std::vector<CalibrationBinStats> CalibrationCurve(std::span<const double> confidences,
                                                  std::span<const std::uint8_t> correct,
                                                  std::size_t bins = 10);

// bin_center,mean_confidence,accuracy,count
std::string CalibrationCurveCsv(std::span<const CalibrationBinStats> curve);

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

struct BootstrapOptions {
  std::size_t iterations = 1000;
  std::uint64_t seed = 0;
  double level = 0.95;
  bool parallel = true;
};

// Percentile interval of `metric` over resamples of n examples.
Interval BootstrapCi(const kernels::ResampleMetric& metric, std::size_t n,
                     const BootstrapOptions& options = {});

struct MetricsReport {
  std::string method;
  std::size_t n = 0;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double ece = 0.0;
  double brier = 0.0;
  Confusion confusion;
  std::map<std::string, Interval> ci;  // each interval contains its point
};

// Classification metrics on the predictions plus ECE and Brier of `scores`
// read as the probability of hallucination, with bootstrap intervals.
MetricsReport BuildMetricsReport(std::string method, std::span<const std::uint8_t> predictions,
                                 std::span<const double> scores,
                                 std::span<const std::uint8_t> labels, std::size_t bins,
                                 const BootstrapOptions& bootstrap);

// Per-example detection under one configuration.
struct DetectionRun {
  std::vector<StatementRecord> records;
  Flags predictions;      // flagged; failures count as not flagged
  std::vector<double> scores;  // p_hall, 0 on failure
  bool partial = false;
};

DetectionRun DetectExamples(std::span<const LabeledExample> examples, const RunConfig& config,
                            PipelineContext& context);

struct CalibrationResult {
  ScoringWeights weights;
  double f1 = 0.0;
};

// Grid search over tau in {0, 0.01, ..., 1} and w_s in {0, 0.1, ..., 1}.
// Throws SingleClassValidation unless both labels occur.
CalibrationResult Calibrate(std::span<const SensitivityReport> reports,
                            std::span<const std::uint8_t> labels, bool parallel = true);

struct AblationRow {
  ProbeKind disabled_kind = ProbeKind::kFactual;
  double f1 = 0.0;
  double delta = 0.0;  // f1 - full_f1
  Flags predictions;
};

struct AblationResult {
  double full_f1 = 0.0;
  Flags full_predictions;
  std::vector<AblationRow> rows;  // one per kind, enum order
};

// Full run plus one run per disabled kind under otherwise fixed settings.
AblationResult RunAblation(std::span<const LabeledExample> examples, const RunConfig& config,
                           PipelineContext& context);

struct BaselineRun {
  Flags predictions;
  std::vector<double> scores;
};

// Score 1 - Conf(text); flagged when above tau.
BaselineRun BaselineSimpleConfidence(std::span<const LabeledExample> examples,
                                     ConfidenceService& service, double threshold);

struct SelfConsistencyOptions {
  std::size_t samples = 5;
  double temperature = 1.0;
};

// Population std of `samples` uncached confidence draws divided by 0.5;
// flagged when above tau.
BaselineRun BaselineSelfConsistency(std::span<const LabeledExample> examples,
                                    ConfidenceService& service, double threshold,
                                    const SelfConsistencyOptions& options = {});

}  // namespace cfprobe

#endif  // CFPROBE_EVALUATION_H_
