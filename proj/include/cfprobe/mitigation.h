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

#ifndef CFPROBE_MITIGATION_H_
#define CFPROBE_MITIGATION_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cfprobe/probe_generation.h"
#include "cfprobe/probe_kind.h"
#include "cfprobe/scoring.h"
#include "cfprobe/statement.h"

namespace cfprobe {

class ConfidenceService;

struct MitigatedStatement {
  std::string statement_id;
  std::string original_text;
  std::string mitigated_text;
  ProbeKind strategy = ProbeKind::kFactual;
  double score_before = 0.0;  // p_hall of the original
  double score_after = 0.0;   // p_hall of the rewrite
  double improvement = 0.0;   // score_before - score_after
  SensitivityReport report_after;

  bool successful() const { return improvement > 0.0; }
};

// Hedging rewrite for one claim kind. Asserted values are never changed.
//   Factual: "reportedly" after the first copula, else "likely" before the
//     main verb, else a "Reportedly," prefix.
//   Temporal: "in 1945" -> "around 1945"; bare years gain "around".
//   Quantitative: n -> "approximately n"; "exactly"/"precisely" dropped.
//   Logical: "X causes Y" -> "X is associated with Y" (likewise "leads to",
//     "results in", "because", "due to").
// Already-hedged text comes back unchanged. Throws NoRewriteSite when the
// text has neither a site nor a hedge for the kind.
std::string Mitigate(std::string_view text, ProbeKind kind);

// As above; additionally requires kind to be among the statement's claim
// kinds (InvalidArgument otherwise).
std::string Mitigate(const Statement& statement, ProbeKind kind);

// Claim kinds ordered by how flat the model's confidence was for their
// probes (lowest per-kind sensitivity first, ties in enum order); kinds
// without probes come last.
std::vector<ProbeKind> StrategyCandidates(const SensitivityReport& report,
                                          KindSet claim_kinds);

// Probes and scores the rewrite, and records the change in p_hall.
MitigatedStatement RescoreMitigation(const SensitivityReport& original_report,
                                     const Statement& statement,
                                     std::string mitigated_text, ProbeKind strategy,
                                     const ProbeOptions& probe_options,
                                     ConfidenceService& service,
                                     const ScoringWeights& weights);

// One row per strategy kind that occurs, then an overall row (kind empty).
struct MitigationTableRow {
  std::optional<ProbeKind> kind;
  std::size_t count = 0;
  double mean_before = 0.0;
  double mean_after = 0.0;
  double mean_improvement = 0.0;
  double success_rate = 0.0;
};

std::vector<MitigationTableRow> MitigationTable(
    std::span<const MitigatedStatement> records);

}  // namespace cfprobe

#endif  // CFPROBE_MITIGATION_H_
