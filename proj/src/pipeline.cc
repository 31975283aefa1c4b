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

#include "cfprobe/pipeline.h"

#include <atomic>
#include <exception>
#include <utility>

#include "cfprobe/errors.h"
#include "cfprobe/text_util.h"
#include "json.hpp"

namespace cfprobe {
namespace {

using nlohmann::ordered_json;

// Fills `record` incrementally so probes survive a scoring failure.
void ProcessOne(const Statement& statement, const RunConfig& config, PipelineContext& context,
                StatementRecord& record) {
  record.statement = statement;
  ProbeSet set = GenerateProbes(statement, MakeProbeOptions(config, context, statement),
                                &context.service);
  record.probes = std::move(set.probes);
  record.probes_exhausted = set.exhausted;
  record.report = DetectStatement(statement, record.probes, context.service, config.weights);
}

void MitigateOne(StatementRecord& record, const RunConfig& config,
                 PipelineContext& context) {
  for (ProbeKind kind :
       StrategyCandidates(*record.report, record.statement.claim_kinds)) {
    std::string rewrite;
    try {
      rewrite = Mitigate(record.statement, kind);
    } catch (const NoRewriteSite&) {
      continue;
    }
    const Statement rewritten = MakeStatement(rewrite, record.statement.document_id,
                                              record.statement.index);
    record.mitigation = RescoreMitigation(
        *record.report, record.statement, std::move(rewrite), kind,
        MakeProbeOptions(config, context, rewritten), context.service, config.weights);
    return;
  }
  record.mitigation_error = "no rewrite site for any claim kind";
}

}  // namespace

void RunConfig::Validate() const {
  backend.Validate();
  weights.Validate();
  if (k < 1) throw InvalidArgument("k must be >= 1");
  if (parallel_statements < 1) throw InvalidArgument("parallel_statements must be >= 1");
}

std::string ConfigDigest(const RunConfig& config) {
  ordered_json j;
  j["endpoint"] = config.backend.endpoint;
  j["model"] = config.backend.model_name;
  j["temperature"] = config.backend.temperature;
  j["generation_temperature"] = config.backend.generation_temperature;
  j["k"] = config.k;
  j["strategy"] = ToString(config.strategy);
  j["w_sensitivity"] = config.weights.w_sensitivity;
  j["w_variance"] = config.weights.w_variance;
  j["tau"] = config.weights.threshold;
  j["mitigation"] = config.mitigation_enabled;
  j["seed"] = config.seed;
  ordered_json disabled = ordered_json::array();
  for (ProbeKind kind : config.disabled_kinds.ToVector()) disabled.push_back(ToString(kind));
  j["disabled_kinds"] = disabled;
  return HexU64(Fnv1a64(j.dump()));
}

ProbeOptions MakeProbeOptions(const RunConfig& config, const PipelineContext& context,
                              const Statement& statement) {
  ProbeOptions options;
  options.k = config.k;
  options.strategy = config.strategy;
  options.disabled_kinds = config.disabled_kinds;
  options.seed = SplitMix64(config.seed ^ Fnv1a64(NormalizeText(statement.text)));
  options.lexicon = &context.lexicon;
  options.templates = &context.templates;
  return options;
}

DocumentSummary Summarize(std::span<const StatementRecord> records, bool mitigation_ran) {
  DocumentSummary s;
  s.statements = records.size();
  std::vector<MitigatedStatement> applied;
  for (const StatementRecord& r : records) {
    if (r.report) {
      ++s.scored;
      if (r.report->verdict) ++s.flagged;
    } else {
      ++s.errors;
    }
    if (r.mitigation) {
      ++s.mitigated;
      if (r.mitigation->successful()) ++s.successful;
      applied.push_back(*r.mitigation);
    }
  }
  if (mitigation_ran && s.flagged > 0) {
    s.success_rate = static_cast<double>(s.successful) / static_cast<double>(s.flagged);
  }
  if (!applied.empty()) {
    double total = 0.0;
    for (const MitigatedStatement& m : applied) total += m.improvement;
    s.mean_improvement = total / static_cast<double>(applied.size());
    s.mitigation_table = MitigationTable(applied);
  }
  return s;
}

std::vector<StatementRecord> ProcessStatements(std::span<const Statement> statements,
                                               const RunConfig& config,
                                               PipelineContext& context, bool* partial) {
  config.Validate();
  std::vector<StatementRecord> records(statements.size());
  std::atomic<bool> stop{false};
  const long long n = static_cast<long long>(statements.size());
#pragma omp parallel for schedule(dynamic) num_threads(config.parallel_statements)
  for (long long i = 0; i < n; ++i) {
    StatementRecord& record = records[i];
    if (stop.load()) {
      record.statement = statements[i];
      record.error = "skipped: run aborted after a transport failure";
      continue;
    }
    try {
      ProcessOne(statements[i], config, context, record);
    } catch (const TransportError& e) {
      stop.store(true);
      record.statement = statements[i];
      record.error = std::string("transport: ") + e.what();
    } catch (const std::exception& e) {
      record.statement = statements[i];
      record.report.reset();
      record.error = e.what();
    }
  }
  if (partial != nullptr) *partial = stop.load();
  return records;
}

DocumentReport RunDetectStatements(std::vector<Statement> statements,
                                   std::string_view document_id,
                                   const RunConfig& config, PipelineContext& context) {
  DocumentReport report;
  report.document_id = std::string(document_id);
  report.config_digest = ConfigDigest(config);
  report.records = ProcessStatements(statements, config, context, &report.partial);
  report.summary = Summarize(report.records, false);
  return report;
}

DocumentReport RunDetect(std::string_view document, std::string_view document_id,
                         const RunConfig& config, PipelineContext& context) {
  return RunDetectStatements(ExtractStatements(document, document_id), document_id,
                             config, context);
}

DocumentReport RunMitigate(DocumentReport report, const RunConfig& config,
                           PipelineContext& context) {
  config.Validate();
  if (report.config_digest != ConfigDigest(config)) {
    throw ConfigMismatch("report digest " + report.config_digest +
                         " does not match the configuration digest " +
                         ConfigDigest(config));
  }
  std::atomic<bool> stop{false};
  const long long n = static_cast<long long>(report.records.size());
#pragma omp parallel for schedule(dynamic) num_threads(config.parallel_statements)
  for (long long i = 0; i < n; ++i) {
    StatementRecord& record = report.records[i];
    if (!record.report || !record.report->verdict) continue;
    if (stop.load()) {
      record.mitigation_error = "skipped: run aborted after a transport failure";
      continue;
    }
    try {
      MitigateOne(record, config, context);
    } catch (const TransportError& e) {
      stop.store(true);
      record.mitigation_error = std::string("transport: ") + e.what();
    } catch (const std::exception& e) {
      record.mitigation.reset();
      record.mitigation_error = e.what();
    }
  }
  report.partial = report.partial || stop.load();
  report.summary = Summarize(report.records, true);
  return report;
}

}  // namespace cfprobe
