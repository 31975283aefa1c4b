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

// cfprobe: detect, mitigate, evaluate, ablate and calibrate from the shell.
//
// Exit status: 0 success, 1 usage error, 2 runtime error. A partial report
// is still written when a run stops early.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cfprobe/confidence_backend.h"
#include "cfprobe/errors.h"
#include "cfprobe/evaluation.h"
#include "cfprobe/pipeline.h"
#include "cfprobe/probe_generation.h"
#include "cfprobe/remote_backend.h"
#include "cfprobe/report_io.h"
#include "cfprobe/run_config.h"
#include "cfprobe/text_util.h"

namespace {

using cfprobe::Json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string verb;
  std::string input;
  std::string output;
  std::string config;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> backend;
  std::optional<std::size_t> k;
  std::optional<double> tau;
  std::vector<std::string> disabled;
  std::optional<std::string> baseline;
  std::optional<std::string> mock_kb;
  std::optional<std::string> format;
  std::optional<std::string> curve;
  bool dry_run = false;
};

std::string NowUtc() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cfprobe::MissingFile("cannot open input " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool IsDatasetPath(const std::string& path) {
  return path.ends_with(".jsonl") || path.ends_with(".ndjson");
}

// Defaults, then the config file, then --set, then dedicated flags.
cfprobe::Settings ResolveSettings(const Flags& f) {
  cfprobe::Settings s;
  try {
    if (!f.config.empty()) cfprobe::ApplyConfigFile(s, f.config);
    for (const std::string& a : f.sets) cfprobe::ApplyAssignment(s, a);
    if (f.seed) s.run.seed = *f.seed;
    if (f.backend) cfprobe::ApplySetting(s, "backend", *f.backend);
    if (f.k) s.run.k = *f.k;
    if (f.tau) s.run.weights.threshold = *f.tau;
    for (const std::string& kind : f.disabled) {
      s.run.disabled_kinds.Insert(cfprobe::ParseProbeKind(kind));
    }
    if (f.baseline) cfprobe::ApplySetting(s, "baseline", *f.baseline);
    if (f.mock_kb) s.mock_kb = *f.mock_kb;
    if (f.format) cfprobe::ApplySetting(s, "format", *f.format);
    if (f.curve) s.curve = *f.curve;
    s.run.Validate();
  } catch (const cfprobe::MissingFile& e) {
    throw UsageError(e.what());
  } catch (const cfprobe::InvalidArgument& e) {
    throw UsageError(e.what());
  }
  return s;
}

std::shared_ptr<cfprobe::ConfidenceBackend> MakeBackend(const cfprobe::Settings& s) {
  if (s.backend == "remote") {
    return std::make_shared<cfprobe::RemoteBackend>(
        s.run.backend, cfprobe::MakeHttpTransportFromEnv(s.run.backend));
  }
  cfprobe::MockKnowledgeBase kb;
  if (!s.mock_kb.empty()) kb = cfprobe::MockKnowledgeBase::Load(s.mock_kb);
  return std::make_shared<cfprobe::MockBackend>(std::move(kb), s.run.seed);
}

// Owns the collaborators a pipeline run borrows.
struct Runtime {
  explicit Runtime(const cfprobe::Settings& s)
      : service(MakeBackend(s), s.run.backend),
        lexicon(s.lexicon.empty() ? cfprobe::ConfusableLexicon::Default()
                                  : cfprobe::ConfusableLexicon::Load(s.lexicon)),
        templates(s.templates.empty() ? cfprobe::ProbeTemplateSet::Default()
                                      : cfprobe::ProbeTemplateSet::Load(s.templates)),
        context{service, lexicon, templates} {}

  cfprobe::ConfidenceService service;
  cfprobe::ConfusableLexicon lexicon;
  cfprobe::ProbeTemplateSet templates;
  cfprobe::PipelineContext context;
};

void Emit(const Flags& f, const std::string& text) {
  if (f.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(f.output, std::ios::binary);
  if (!out) throw cfprobe::Error("cannot write " + f.output);
  out << text;
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

cfprobe::DocumentReport Detect(const Flags& f, const cfprobe::Settings& s, Runtime& rt) {
  if (IsDatasetPath(f.input)) {
    const std::vector<cfprobe::LabeledExample> examples = cfprobe::LoadDataset(f.input);
    std::vector<cfprobe::Statement> statements;
    for (std::size_t i = 0; i < examples.size(); ++i) {
      statements.push_back(cfprobe::MakeStatement(examples[i].text, examples[i].id, 0));
    }
    return cfprobe::RunDetectStatements(std::move(statements),
                                        std::filesystem::path(f.input).stem().string(), s.run,
                                        rt.context);
  }
  return cfprobe::RunDetect(ReadFile(f.input), std::filesystem::path(f.input).stem().string(),
                            s.run, rt.context);
}

int EmitDocument(const Flags& f, const cfprobe::Settings& s,
                 const cfprobe::DocumentReport& report) {
  if (s.format == "table") {
    std::string text = cfprobe::FormatDetectionTable(report);
    if (!report.summary.mitigation_table.empty()) {
      text += "\n" + cfprobe::FormatMitigationTable(report.summary.mitigation_table);
    }
    Emit(f, text);
  } else {
    Emit(f, Dump(cfprobe::ToJson(report)));
  }
  if (report.partial) {
    std::cerr << "cfprobe: run stopped early after a transport failure; report is partial\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int RunDetectVerb(const Flags& f, const cfprobe::Settings& s) {
  Runtime rt(s);
  cfprobe::DocumentReport report = Detect(f, s, rt);
  if (s.run.mitigation_enabled && !report.partial) {
    report = cfprobe::RunMitigate(std::move(report), s.run, rt.context);
  }
  return EmitDocument(f, s, report);
}

int RunMitigateVerb(const Flags& f, const cfprobe::Settings& s) {
  Runtime rt(s);
  cfprobe::DocumentReport report;
  const std::string content = ReadFile(f.input);
  const std::string_view head = cfprobe::Trim(content);
  if (!head.empty() && head.front() == '{') {
    report = cfprobe::DocumentReportFromJson(Json::parse(content));
  } else {
    report = Detect(f, s, rt);
    if (report.partial) return EmitDocument(f, s, report);
  }
  report = cfprobe::RunMitigate(std::move(report), s.run, rt.context);
  return EmitDocument(f, s, report);
}

Json Metadata(const cfprobe::Settings& s, const Flags& f, const std::string& started) {
  Json meta;
  meta["input"] = f.input;
  meta["seed"] = s.run.seed;
  meta["config_digest"] = cfprobe::ConfigDigest(s.run);
  meta["backend"] = s.backend;
  meta["started_at"] = started;
  meta["finished_at"] = NowUtc();
  return meta;
}

int RunEvaluateVerb(const Flags& f, const cfprobe::Settings& s) {
  const std::string started = NowUtc();
  Runtime rt(s);
  const std::vector<cfprobe::LabeledExample> examples = cfprobe::LoadDataset(f.input);
  const cfprobe::Flags labels = cfprobe::LabelsOf(examples);
  const double tau = s.run.weights.threshold;

  cfprobe::Flags predictions;
  std::vector<double> scores;
  std::string method = "counterfactual-probing";
  bool partial = false;
  if (s.baseline == "simple-confidence") {
    method = s.baseline;
    cfprobe::BaselineRun run = cfprobe::BaselineSimpleConfidence(examples, rt.service, tau);
    predictions = std::move(run.predictions);
    scores = std::move(run.scores);
  } else if (s.baseline == "self-consistency") {
    method = s.baseline;
    cfprobe::SelfConsistencyOptions options;
    options.samples = s.consistency_samples;
    options.temperature = s.consistency_temperature;
    cfprobe::BaselineRun run =
        cfprobe::BaselineSelfConsistency(examples, rt.service, tau, options);
    predictions = std::move(run.predictions);
    scores = std::move(run.scores);
  } else {
    cfprobe::DetectionRun run = cfprobe::DetectExamples(examples, s.run, rt.context);
    predictions = std::move(run.predictions);
    scores = std::move(run.scores);
    partial = run.partial;
  }

  cfprobe::BootstrapOptions bootstrap;
  bootstrap.iterations = s.bootstrap_iterations;
  bootstrap.seed = s.run.seed;
  bootstrap.level = s.confidence_level;
  const cfprobe::MetricsReport report =
      cfprobe::BuildMetricsReport(method, predictions, scores, labels, s.bins, bootstrap);

  if (!s.curve.empty()) {
    std::ofstream csv(s.curve);
    if (!csv) throw cfprobe::Error("cannot write " + s.curve);
    csv << cfprobe::CalibrationCurveCsv(cfprobe::CalibrationCurve(scores, labels, s.bins));
  }
  if (s.format == "table") {
    Emit(f, cfprobe::FormatMetricsTable(std::span(&report, 1)));
  } else {
    Json j = cfprobe::ToJson(report);
    j["partial"] = partial;
    j["metadata"] = Metadata(s, f, started);
    Emit(f, Dump(j));
  }
  return partial ? kExitRuntime : kExitOk;
}

int RunAblateVerb(const Flags& f, const cfprobe::Settings& s) {
  const std::string started = NowUtc();
  Runtime rt(s);
  const std::vector<cfprobe::LabeledExample> examples = cfprobe::LoadDataset(f.input);
  const cfprobe::AblationResult result = cfprobe::RunAblation(examples, s.run, rt.context);
  if (s.format == "table") {
    Emit(f, cfprobe::FormatAblationTable(result));
  } else {
    Json j = cfprobe::ToJson(result);
    j["labels"] = cfprobe::LabelsOf(examples);
    j["metadata"] = Metadata(s, f, started);
    Emit(f, Dump(j));
  }
  return kExitOk;
}

int RunCalibrateVerb(const Flags& f, const cfprobe::Settings& s) {
  const std::string started = NowUtc();
  Runtime rt(s);
  const std::vector<cfprobe::LabeledExample> examples = cfprobe::LoadDataset(f.input);
  const cfprobe::DetectionRun run = cfprobe::DetectExamples(examples, s.run, rt.context);
  std::vector<cfprobe::SensitivityReport> reports;
  cfprobe::Flags labels;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    if (!run.records[i].report) continue;
    reports.push_back(*run.records[i].report);
    labels.push_back(examples[i].label ? 1 : 0);
  }
  const cfprobe::CalibrationResult best = cfprobe::Calibrate(reports, labels);
  if (s.format == "table") {
    std::ostringstream out;
    out << "# calibrated on " << reports.size() << " examples, F1 " << best.f1 << "\n"
        << "tau = " << best.weights.threshold << "\n"
        << "w_sensitivity = " << best.weights.w_sensitivity << "\n";
    Emit(f, out.str());
  } else {
    Json j;
    j["tau"] = best.weights.threshold;
    j["w_sensitivity"] = best.weights.w_sensitivity;
    j["w_variance"] = best.weights.w_variance;
    j["f1"] = best.f1;
    j["n"] = reports.size();
    j["skipped"] = examples.size() - reports.size();
    j["metadata"] = Metadata(s, f, started);
    Emit(f, Dump(j));
  }
  return run.partial ? kExitRuntime : kExitOk;
}

int Dispatch(const Flags& f) {
  const cfprobe::Settings s = ResolveSettings(f);
  if (f.dry_run) {
    Emit(f, cfprobe::RenderSettings(s));
    return kExitOk;
  }
  if (f.input.empty()) throw UsageError("--input is required");
  if (!std::filesystem::exists(f.input)) throw UsageError("input not found: " + f.input);
  if (f.verb == "detect") return RunDetectVerb(f, s);
  if (f.verb == "mitigate") return RunMitigateVerb(f, s);
  if (f.verb == "evaluate") return RunEvaluateVerb(f, s);
  if (f.verb == "ablate") return RunAblateVerb(f, s);
  return RunCalibrateVerb(f, s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counterfactual-probing hallucination detector", "cfprobe"};
  Flags f;
  app.add_option("verb", f.verb, "detect | mitigate | evaluate | ablate | calibrate")
      ->required()
      ->check(CLI::IsMember({"detect", "mitigate", "evaluate", "ablate", "calibrate"}));
  app.add_option("--input,-i", f.input, "Text document, dataset (.jsonl) or detect report");
  app.add_option("--output,-o", f.output, "Report path (default: standard output)");
  app.add_option("--config,-c", f.config, "key = value config file");
  app.add_option("--set", f.sets, "Override a config key (key=value), repeatable");
  app.add_option("--seed", f.seed, "Run seed");
  app.add_option("--backend", f.backend, "mock | remote");
  app.add_option("--k", f.k, "Probes per statement");
  app.add_option("--tau", f.tau, "Detection threshold");
  app.add_option("--disable-kind", f.disabled, "Probe kind to disable, repeatable");
  app.add_option("--baseline", f.baseline, "simple-confidence | self-consistency");
  app.add_option("--mock-kb", f.mock_kb, "Knowledge base for the mock backend");
  app.add_option("--format", f.format, "json | table");
  app.add_option("--curve", f.curve, "Write the calibration curve CSV here (evaluate)");
  app.add_flag("--dry-run", f.dry_run, "Print the resolved configuration and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    return Dispatch(f);
  } catch (const UsageError& e) {
    std::cerr << "cfprobe: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "cfprobe " << f.verb << ": " << e.what() << "\n";
    return kExitRuntime;
  }
}
