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

#include "cfprobe/evaluation.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "cfprobe/errors.h"
#include "cfprobe/text_util.h"
#include "json.hpp"

namespace cfprobe {
namespace {

using nlohmann::json;

void CheckPair(std::size_t a, std::size_t b) {
  if (a != b) throw LengthMismatch(a, b);
  if (a == 0) throw EmptyInput();
}

Confusion Count(std::span<const std::uint8_t> predictions,
                std::span<const std::uint8_t> labels,
                std::span<const std::size_t> indices) {
  Confusion c;
  for (std::size_t i : indices) {
    if (labels[i]) {
      predictions[i] ? ++c.tp : ++c.fn;
    } else {
      predictions[i] ? ++c.fp : ++c.tn;
    }
  }
  return c;
}

double Ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

ClassificationMetrics FromConfusion(const Confusion& c) {
  ClassificationMetrics m;
  m.confusion = c;
  m.accuracy = Ratio(c.tp + c.tn, c.total());
  m.precision = Ratio(c.tp, c.tp + c.fp);
  m.recall = Ratio(c.tp, c.tp + c.fn);
  m.f1 = F1FromCounts(c);
  return m;
}

std::vector<std::size_t> Iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

double EceOver(std::span<const double> conf, std::span<const std::uint8_t> correct,
               std::span<const std::size_t> indices, std::size_t bins) {
  std::vector<double> conf_sum(bins, 0.0);
  std::vector<double> hit_sum(bins, 0.0);
  std::vector<std::size_t> count(bins, 0);
  for (std::size_t i : indices) {
    const std::size_t b = CalibrationBin(conf[i], bins);
    conf_sum[b] += conf[i];
    hit_sum[b] += correct[i] ? 1.0 : 0.0;
    ++count[b];
  }
  const double total = static_cast<double>(indices.size());
  double ece = 0.0;
  for (std::size_t b = 0; b < bins; ++b) {
    if (count[b] == 0) continue;
    const double nb = static_cast<double>(count[b]);
    ece += (nb / total) * std::abs(conf_sum[b] / nb - hit_sum[b] / nb);
  }
  return ece;
}

double BrierOver(std::span<const double> conf, std::span<const std::uint8_t> outcomes,
                 std::span<const std::size_t> indices) {
  double total = 0.0;
  for (std::size_t i : indices) {
    const double d = conf[i] - (outcomes[i] ? 1.0 : 0.0);
    total += d * d;
  }
  return total / static_cast<double>(indices.size());
}

void CheckConfidences(std::span<const double> conf) {
  for (double c : conf) {
    if (!(c >= 0.0 && c <= 1.0)) throw InvalidArgument("confidence outside [0, 1]");
  }
}

double PopulationStd(std::span<const double> values) {
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return std::sqrt(sq / n);
}

}  // namespace

std::vector<LabeledExample> ParseDataset(std::istream& in, const std::string& dataset) {
  std::vector<LabeledExample> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw MalformedRecord(line_no, e.what());
    }
    if (!record.is_object()) throw MalformedRecord(line_no, "expected an object");
    if (!record.contains("text") || !record["text"].is_string()) {
      throw MalformedRecord(line_no, "missing text");
    }
    if (!record.contains("label") || !record["label"].is_number_integer()) {
      throw MalformedRecord(line_no, "missing integer label");
    }
    const auto label = record["label"].get<long long>();
    if (label != 0 && label != 1) throw MalformedRecord(line_no, "label must be 0 or 1");

    LabeledExample ex;
    ex.text = record["text"].get<std::string>();
    if (Trim(ex.text).empty()) throw MalformedRecord(line_no, "empty text");
    ex.label = label == 1;
    ex.id = record.contains("id") && record["id"].is_string()
                ? record["id"].get<std::string>()
                : dataset + "-" + std::to_string(out.size());
    if (record.contains("kind") && !record["kind"].is_null()) {
      try {
        ex.kind = ParseProbeKind(record["kind"].get<std::string>());
      } catch (const std::exception& e) {
        throw MalformedRecord(line_no, e.what());
      }
    }
    if (record.contains("domain") && record["domain"].is_string()) {
      ex.domain = record["domain"].get<std::string>();
    }
    ex.dataset = dataset;
    out.push_back(std::move(ex));
  }
  return out;
}

std::vector<LabeledExample> LoadDataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingFile("cannot open dataset " + path.string());
  return ParseDataset(in, path.stem().string());
}

Flags LabelsOf(std::span<const LabeledExample> examples) {
  Flags labels;
  labels.reserve(examples.size());
  for (const LabeledExample& e : examples) labels.push_back(e.label ? 1 : 0);
  return labels;
}

ClassificationMetrics ComputeClassificationMetrics(std::span<const std::uint8_t> predictions,
                                                   std::span<const std::uint8_t> labels) {
  CheckPair(predictions.size(), labels.size());
  const std::vector<std::size_t> all = Iota(labels.size());
  return FromConfusion(Count(predictions, labels, all));
}

double F1FromPrecisionRecall(double precision, double recall) {
  if (precision + recall <= 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

std::size_t CalibrationBin(double confidence, std::size_t bins) {
  if (bins == 0) throw InvalidArgument("bins must be >= 1");
  const double width_units = confidence * static_cast<double>(bins);
  long long b = static_cast<long long>(std::ceil(width_units)) - 1;
  b = std::clamp<long long>(b, 0, static_cast<long long>(bins) - 1);
  // Snap to the exact edges b / B so membership matches (lo, hi] literally.
  while (b > 0 && confidence <= static_cast<double>(b) / static_cast<double>(bins)) --b;
  while (b + 1 < static_cast<long long>(bins) &&
         confidence > static_cast<double>(b + 1) / static_cast<double>(bins)) {
    ++b;
  }
  return static_cast<std::size_t>(b);
}

double ExpectedCalibrationError(std::span<const double> confidences,
                                std::span<const std::uint8_t> correct, std::size_t bins) {
  CheckPair(confidences.size(), correct.size());
  if (bins == 0) throw InvalidArgument("bins must be >= 1");
  CheckConfidences(confidences);
  const std::vector<std::size_t> all = Iota(confidences.size());
  return EceOver(confidences, correct, all, bins);
}

double BrierScore(std::span<const double> confidences,
                  std::span<const std::uint8_t> outcomes) {
  CheckPair(confidences.size(), outcomes.size());
  CheckConfidences(confidences);
  const std::vector<std::size_t> all = Iota(confidences.size());
  return BrierOver(confidences, outcomes, all);
}

std::vector<CalibrationBinStats> CalibrationCurve(std::span<const double> confidences,
                                                  std::span<const std::uint8_t> correct,
                                                  std::size_t bins) {
  CheckPair(confidences.size(), correct.size());
  CheckConfidences(confidences);
  std::vector<CalibrationBinStats> stats(bins);
  for (std::size_t i = 0; i < confidences.size(); ++i) {
    CalibrationBinStats& s = stats[CalibrationBin(confidences[i], bins)];
    s.mean_confidence += confidences[i];
    s.accuracy += correct[i] ? 1.0 : 0.0;
    ++s.count;
  }
  std::vector<CalibrationBinStats> out;
  for (std::size_t b = 0; b < bins; ++b) {
    CalibrationBinStats s = stats[b];
    if (s.count == 0) continue;
    s.bin_center = (static_cast<double>(b) + 0.5) / static_cast<double>(bins);
    s.mean_confidence /= static_cast<double>(s.count);
    s.accuracy /= static_cast<double>(s.count);
    out.push_back(s);
  }
  return out;
}

std::string CalibrationCurveCsv(std::span<const CalibrationBinStats> curve) {
  std::string out = "bin_center,mean_confidence,accuracy,count\n";
  char buf[128];
  for (const CalibrationBinStats& s : curve) {
    std::snprintf(buf, sizeof(buf), "%.4f,%.6f,%.6f,%zu\n", s.bin_center,
                  s.mean_confidence, s.accuracy, s.count);
    out += buf;
  }
  return out;
}

Interval BootstrapCi(const kernels::ResampleMetric& metric, std::size_t n,
                     const BootstrapOptions& options) {
  if (n == 0) throw EmptyInput();
  if (options.iterations == 0) throw InvalidArgument("iterations must be >= 1");
  if (!(options.level > 0.0 && options.level < 1.0)) {
    throw InvalidArgument("level must lie in (0, 1)");
  }
  std::vector<double> reps =
      options.parallel
          ? kernels::BootstrapParallel(n, options.iterations, options.seed, metric)
          : kernels::BootstrapSerial(n, options.iterations, options.seed, metric);
  std::sort(reps.begin(), reps.end());
  const double tail = (1.0 - options.level) / 2.0;
  return {kernels::Percentile(reps, tail), kernels::Percentile(reps, 1.0 - tail)};
}

MetricsReport BuildMetricsReport(std::string method, std::span<const std::uint8_t> predictions,
                                 std::span<const double> scores,
                                 std::span<const std::uint8_t> labels, std::size_t bins,
                                 const BootstrapOptions& bootstrap) {
  CheckPair(predictions.size(), labels.size());
  CheckPair(scores.size(), labels.size());
  const ClassificationMetrics m = ComputeClassificationMetrics(predictions, labels);
  MetricsReport r;
  r.method = std::move(method);
  r.n = labels.size();
  r.accuracy = m.accuracy;
  r.precision = m.precision;
  r.recall = m.recall;
  r.f1 = m.f1;
  r.confusion = m.confusion;
  r.ece = ExpectedCalibrationError(scores, labels, bins);
  r.brier = BrierScore(scores, labels);

  const auto classification = [&](double ClassificationMetrics::*field) {
    return [&, field](std::span<const std::size_t> idx) {
      return FromConfusion(Count(predictions, labels, idx)).*field;
    };
  };
  const std::vector<std::pair<std::string, kernels::ResampleMetric>> metrics = {
      {"accuracy", classification(&ClassificationMetrics::accuracy)},
      {"precision", classification(&ClassificationMetrics::precision)},
      {"recall", classification(&ClassificationMetrics::recall)},
      {"f1", classification(&ClassificationMetrics::f1)},
      {"ece", [&](std::span<const std::size_t> idx) { return EceOver(scores, labels, idx, bins); }},
      {"brier", [&](std::span<const std::size_t> idx) { return BrierOver(scores, labels, idx); }},
  };
  const std::map<std::string, double> points = {
      {"accuracy", r.accuracy}, {"precision", r.precision}, {"recall", r.recall},
      {"f1", r.f1},             {"ece", r.ece},             {"brier", r.brier}};
  for (const auto& [name, metric] : metrics) {
    Interval ci = BootstrapCi(metric, labels.size(), bootstrap);
    const double point = points.at(name);
    ci.low = std::min(ci.low, point);
    ci.high = std::max(ci.high, point);
    r.ci[name] = ci;
  }
  return r;
}

DetectionRun DetectExamples(std::span<const LabeledExample> examples, const RunConfig& config,
                            PipelineContext& context) {
  std::vector<Statement> statements;
  statements.reserve(examples.size());
  for (std::size_t i = 0; i < examples.size(); ++i) {
    statements.push_back(MakeStatement(examples[i].text, examples[i].id, 0));
  }
  DetectionRun run;
  run.records = ProcessStatements(statements, config, context, &run.partial);
  for (const StatementRecord& r : run.records) {
    const bool flagged = r.report && r.report->verdict;
    run.predictions.push_back(flagged ? 1 : 0);
    run.scores.push_back(r.report ? r.report->p_hall : 0.0);
  }
  return run;
}

CalibrationResult Calibrate(std::span<const SensitivityReport> reports,
                            std::span<const std::uint8_t> labels, bool parallel) {
  if (reports.size() != labels.size()) throw LengthMismatch(reports.size(), labels.size());
  const bool has_pos = std::any_of(labels.begin(), labels.end(), [](auto l) { return l != 0; });
  const bool has_neg = std::any_of(labels.begin(), labels.end(), [](auto l) { return l == 0; });
  if (!has_pos || !has_neg) throw SingleClassValidation();

  std::vector<double> sens;
  std::vector<double> var;
  for (const SensitivityReport& r : reports) {
    sens.push_back(r.sensitivity);
    var.push_back(r.variance);
  }
  const kernels::GridInput input{sens, var, labels};
  const std::vector<double> cells = parallel ? kernels::CalibrationGridParallel(input)
                                             : kernels::CalibrationGridSerial(input);
  const kernels::GridOptimum best = kernels::SelectGridOptimum(cells);
  CalibrationResult out;
  out.weights.w_sensitivity = best.w_sensitivity;
  out.weights.w_variance = 1.0 - best.w_sensitivity;
  out.weights.threshold = best.threshold;
  out.f1 = best.f1;
  return out;
}

AblationResult RunAblation(std::span<const LabeledExample> examples, const RunConfig& config,
                           PipelineContext& context) {
  if (!config.disabled_kinds.empty()) {
    throw InvalidArgument("the full ablation run needs every probe kind enabled");
  }
  const Flags labels = LabelsOf(examples);
  AblationResult result;
  const DetectionRun full = DetectExamples(examples, config, context);
  if (full.partial) throw TransportError("ablation full run aborted");
  result.full_predictions = full.predictions;
  result.full_f1 = ComputeClassificationMetrics(full.predictions, labels).f1;
  for (ProbeKind kind : kAllProbeKinds) {
    RunConfig ablated = config;
    ablated.disabled_kinds.Insert(kind);
    const DetectionRun run = DetectExamples(examples, ablated, context);
    if (run.partial) throw TransportError("ablation run aborted");
    AblationRow row;
    row.disabled_kind = kind;
    row.predictions = run.predictions;
    row.f1 = ComputeClassificationMetrics(run.predictions, labels).f1;
    row.delta = row.f1 - result.full_f1;
    result.rows.push_back(std::move(row));
  }
  return result;
}

BaselineRun BaselineSimpleConfidence(std::span<const LabeledExample> examples,
                                     ConfidenceService& service, double threshold) {
  std::vector<std::string> texts;
  for (const LabeledExample& e : examples) texts.push_back(e.text);
  const std::vector<BatchItem> items = service.EstimateBatch(texts);
  BaselineRun run;
  for (const BatchItem& item : items) {
    if (!item.ok()) {
      if (item.exception) std::rethrow_exception(item.exception);
      throw TransportError(item.error);
    }
    const double score = 1.0 - item.score->value;
    run.scores.push_back(score);
    run.predictions.push_back(score > threshold ? 1 : 0);
  }
  return run;
}

BaselineRun BaselineSelfConsistency(std::span<const LabeledExample> examples,
                                    ConfidenceService& service, double threshold,
                                    const SelfConsistencyOptions& options) {
  if (options.samples == 0) throw InvalidArgument("samples must be >= 1");
  if (options.samples == 1) {
    std::cerr << "warning: self-consistency with one sample is always 0\n";
  }
  BaselineRun run;
  run.scores.resize(examples.size());
  run.predictions.resize(examples.size());
  std::vector<double> draws(options.samples);
  for (std::size_t i = 0; i < examples.size(); ++i) {
    for (std::size_t r = 0; r < options.samples; ++r) {
      draws[r] = service.Sample(examples[i].text, options.temperature, r + 1).value;
    }
    const double score = std::min(1.0, PopulationStd(draws) / 0.5);
    run.scores[i] = score;
    run.predictions[i] = score > threshold ? 1 : 0;
  }
  return run;
}

}  // namespace cfprobe
