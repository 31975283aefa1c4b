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

#ifndef CFPROBE_PIPELINE_H_
#define CFPROBE_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cfprobe/confidence_backend.h"
#include "cfprobe/mitigation.h"
#include "cfprobe/probe_generation.h"
#include "cfprobe/scoring.h"
#include "cfprobe/statement.h"

namespace cfprobe {

struct RunConfig {
  BackendConfig backend;
  std::size_t k = 4;
  ProbeStrategy strategy = ProbeStrategy::kRuleThenModel;
  ScoringWeights weights;
  bool mitigation_enabled = false;
  std::uint64_t seed = 0;
  int parallel_statements = 4;
  KindSet disabled_kinds;

  void Validate() const;
};

// Stable hex digest over the fields that can change a prediction. Throughput
// knobs (parallelism, retries, timeout, cache location) are left out.
std::string ConfigDigest(const RunConfig& config);

// Shared collaborators of a run. All must outlive it and tolerate
// concurrent use.
struct PipelineContext {
  ConfidenceService& service;
  const ConfusableLexicon& lexicon;
  const ProbeTemplateSet& templates;
};

// Probe options a run uses for one statement. The perturbation seed depends
// on the run seed and the statement text only.
ProbeOptions MakeProbeOptions(const RunConfig& config, const PipelineContext& context,
                              const Statement& statement);

struct StatementRecord {
  Statement statement;
  std::vector<Counterfactual> probes;
  bool probes_exhausted = false;
  std::optional<SensitivityReport> report;
  std::string error;  // non-empty when scoring failed
  std::optional<MitigatedStatement> mitigation;
  std::string mitigation_error;
};

struct DocumentSummary {
  std::size_t statements = 0;
  std::size_t scored = 0;
  std::size_t errors = 0;
  std::size_t flagged = 0;
  std::size_t mitigated = 0;
  std::size_t successful = 0;
  std::optional<double> mean_improvement;  // over applied mitigations
  std::optional<double> success_rate;      // successful / flagged
  std::vector<MitigationTableRow> mitigation_table;
};

inline constexpr int kReportSchemaVersion = 1;

struct DocumentReport {
  int schema_version = kReportSchemaVersion;
  std::string document_id;
  std::string config_digest;
  std::vector<StatementRecord> records;
  DocumentSummary summary;
  bool partial = false;  // a transport failure stopped the run early
};

// Recounts the summary from the records.
DocumentSummary Summarize(std::span<const StatementRecord> records,
                          bool mitigation_ran);

// Probes and scores statements with at most parallel_statements in flight.
// Records keep input order. Per-statement failures land in the record; a
// TransportError stops the remaining work and sets *partial.
std::vector<StatementRecord> ProcessStatements(std::span<const Statement> statements,
                                               const RunConfig& config,
                                               PipelineContext& context, bool* partial);

DocumentReport RunDetect(std::string_view document, std::string_view document_id,
                         const RunConfig& config, PipelineContext& context);

// As RunDetect over statements prepared by the caller.
DocumentReport RunDetectStatements(std::vector<Statement> statements,
                                   std::string_view document_id,
                                   const RunConfig& config, PipelineContext& context);

// Rewrites every flagged statement with the first candidate strategy that
// has a rewrite site and rescores it. Throws ConfigMismatch when the report
// was produced under a different configuration.
DocumentReport RunMitigate(DocumentReport report, const RunConfig& config,
                           PipelineContext& context);

}  // namespace cfprobe

#endif  // CFPROBE_PIPELINE_H_
