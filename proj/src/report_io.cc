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

#include "cfprobe/report_io.h"

#include <cstdio>

#include "cfprobe/errors.h"

namespace cfprobe {
namespace {

Json KindList(std::span<const ProbeKind> kinds) {
  Json out = Json::array();
  for (ProbeKind k : kinds) out.push_back(ToString(k));
  return out;
}

std::vector<ProbeKind> KindsFrom(const Json& j) {
  std::vector<ProbeKind> out;
  for (const Json& k : j) out.push_back(ParseProbeKind(k.get<std::string>()));
  return out;
}

Json ToJson(const Statement& s) {
  Json j;
  j["id"] = s.id();
  j["document_id"] = s.document_id;
  j["index"] = s.index;
  j["text"] = s.text;
  j["span"] = {s.source_span.begin, s.source_span.end};
  j["claim_kinds"] = KindList(s.claim_kinds.ToVector());
  return j;
}

Statement StatementFrom(const Json& j) {
  Statement s;
  s.document_id = j.at("document_id").get<std::string>();
  s.index = j.at("index").get<std::size_t>();
  s.text = j.at("text").get<std::string>();
  s.source_span = {j.at("span").at(0).get<std::size_t>(), j.at("span").at(1).get<std::size_t>()};
  for (ProbeKind k : KindsFrom(j.at("claim_kinds"))) s.claim_kinds.Insert(k);
  return s;
}

Counterfactual ProbeFrom(const Json& j) {
  Counterfactual c;
  c.id = j.at("id").get<std::string>();
  c.statement_id = j.at("statement_id").get<std::string>();
  c.kind = ParseProbeKind(j.at("kind").get<std::string>());
  c.text = j.at("text").get<std::string>();
  c.perturbation = j.at("perturbation").get<std::string>();
  c.origin = j.at("origin").get<std::string>() == ToString(ProbeOrigin::kModelGenerated)
                 ? ProbeOrigin::kModelGenerated
                 : ProbeOrigin::kRuleBased;
  return c;
}

SensitivityReport SensitivityFrom(const Json& j) {
  SensitivityReport r;
  r.statement_id = j.at("statement_id").get<std::string>();
  r.conf_original = j.at("conf_original").get<double>();
  r.conf_counterfactuals = j.at("conf_counterfactuals").get<std::vector<double>>();
  r.probe_kinds = KindsFrom(j.at("probe_kinds"));
  r.sensitivity = j.at("sensitivity").get<double>();
  r.variance = j.at("variance").get<double>();
  r.p_hall = j.at("p_hall").get<double>();
  r.verdict = j.at("verdict").get<bool>();
  r.threshold_used = j.at("threshold_used").get<double>();
  return r;
}

MitigatedStatement MitigationFrom(const Json& j) {
  MitigatedStatement m;
  m.statement_id = j.at("statement_id").get<std::string>();
  m.original_text = j.at("original_text").get<std::string>();
  m.mitigated_text = j.at("mitigated_text").get<std::string>();
  m.strategy = ParseProbeKind(j.at("strategy").get<std::string>());
  m.score_before = j.at("score_before").get<double>();
  m.score_after = j.at("score_after").get<double>();
  m.improvement = j.at("improvement").get<double>();
  m.report_after = SensitivityFrom(j.at("report_after"));
  return m;
}

std::string Fixed(double v, int decimals = 3) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string Signed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%+.3f", v);
  return buf;
}

std::string Pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string KindLabel(ProbeKind kind) {
  std::string s(ToString(kind));
  s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

}  // namespace

Json ToJson(const SensitivityReport& r) {
  Json j;
  j["statement_id"] = r.statement_id;
  j["conf_original"] = r.conf_original;
  j["conf_counterfactuals"] = r.conf_counterfactuals;
  j["probe_kinds"] = KindList(r.probe_kinds);
  j["sensitivity"] = r.sensitivity;
  j["variance"] = r.variance;
  j["p_hall"] = r.p_hall;
  j["verdict"] = r.verdict;
  j["threshold_used"] = r.threshold_used;
  return j;
}

Json ToJson(const Counterfactual& c) {
  Json j;
  j["id"] = c.id;
  j["statement_id"] = c.statement_id;
  j["kind"] = ToString(c.kind);
  j["text"] = c.text;
  j["perturbation"] = c.perturbation;
  j["origin"] = ToString(c.origin);
  return j;
}

Json ToJson(const MitigatedStatement& m) {
  Json j;
  j["statement_id"] = m.statement_id;
  j["original_text"] = m.original_text;
  j["mitigated_text"] = m.mitigated_text;
  j["strategy"] = ToString(m.strategy);
  j["score_before"] = m.score_before;
  j["score_after"] = m.score_after;
  j["improvement"] = m.improvement;
  j["successful"] = m.successful();
  j["report_after"] = ToJson(m.report_after);
  return j;
}

Json ToJson(const MitigationTableRow& row) {
  Json j;
  j["kind"] = row.kind ? Json(ToString(*row.kind)) : Json("overall");
  j["count"] = row.count;
  j["mean_before"] = row.mean_before;
  j["mean_after"] = row.mean_after;
  j["mean_improvement"] = row.mean_improvement;
  j["success_rate"] = row.success_rate;
  return j;
}

Json ToJson(const DocumentReport& report) {
  Json j;
  j["schema_version"] = report.schema_version;
  j["document_id"] = report.document_id;
  j["config_digest"] = report.config_digest;
  j["partial"] = report.partial;
  Json records = Json::array();
  for (const StatementRecord& r : report.records) {
    Json rec;
    rec["statement"] = ToJson(r.statement);
    Json probes = Json::array();
    for (const Counterfactual& c : r.probes) probes.push_back(ToJson(c));
    rec["probes"] = probes;
    rec["probes_exhausted"] = r.probes_exhausted;
    rec["report"] = r.report ? ToJson(*r.report) : Json(nullptr);
    if (!r.error.empty()) rec["error"] = r.error;
    if (r.mitigation) rec["mitigation"] = ToJson(*r.mitigation);
    if (!r.mitigation_error.empty()) rec["mitigation_error"] = r.mitigation_error;
    records.push_back(std::move(rec));
  }
  j["records"] = records;

  const DocumentSummary& s = report.summary;
  Json summary;
  summary["statements"] = s.statements;
  summary["scored"] = s.scored;
  summary["errors"] = s.errors;
  summary["flagged"] = s.flagged;
  summary["mitigated"] = s.mitigated;
  summary["successful"] = s.successful;
  if (s.mean_improvement) summary["mean_improvement"] = *s.mean_improvement;
  if (s.success_rate) summary["success_rate"] = *s.success_rate;
  if (!s.mitigation_table.empty()) {
    Json rows = Json::array();
    for (const MitigationTableRow& row : s.mitigation_table) rows.push_back(ToJson(row));
    summary["mitigation_table"] = rows;
  }
  j["summary"] = summary;
  return j;
}

DocumentReport DocumentReportFromJson(const Json& j) {
  try {
    DocumentReport report;
    report.schema_version = j.at("schema_version").get<int>();
    if (report.schema_version != kReportSchemaVersion) {
      throw InvalidArgument("unsupported report schema_version " +
                            std::to_string(report.schema_version));
    }
    report.document_id = j.at("document_id").get<std::string>();
    report.config_digest = j.at("config_digest").get<std::string>();
    report.partial = j.at("partial").get<bool>();
    bool mitigation_ran = false;
    for (const Json& rec : j.at("records")) {
      StatementRecord r;
      r.statement = StatementFrom(rec.at("statement"));
      for (const Json& p : rec.at("probes")) r.probes.push_back(ProbeFrom(p));
      r.probes_exhausted = rec.at("probes_exhausted").get<bool>();
      if (!rec.at("report").is_null()) r.report = SensitivityFrom(rec.at("report"));
      if (rec.contains("error")) r.error = rec["error"].get<std::string>();
      if (rec.contains("mitigation")) {
        r.mitigation = MitigationFrom(rec["mitigation"]);
        mitigation_ran = true;
      }
      if (rec.contains("mitigation_error")) {
        r.mitigation_error = rec["mitigation_error"].get<std::string>();
        mitigation_ran = true;
      }
      report.records.push_back(std::move(r));
    }
    report.summary = Summarize(report.records, mitigation_ran);
    return report;
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed report: ") + e.what());
  }
}

Json ToJson(const MetricsReport& r) {
  Json j;
  j["method"] = r.method;
  j["n"] = r.n;
  j["accuracy"] = r.accuracy;
  j["precision"] = r.precision;
  j["recall"] = r.recall;
  j["f1"] = r.f1;
  j["ece"] = r.ece;
  j["brier"] = r.brier;
  j["confusion"] = {{"tp", r.confusion.tp},
                    {"fp", r.confusion.fp},
                    {"fn", r.confusion.fn},
                    {"tn", r.confusion.tn}};
  Json ci;
  for (const auto& [name, interval] : r.ci) ci[name] = {interval.low, interval.high};
  j["ci"] = ci;
  return j;
}

Json ToJson(const AblationResult& result) {
  Json j;
  j["full_f1"] = result.full_f1;
  j["full_predictions"] = result.full_predictions;
  Json rows = Json::array();
  for (const AblationRow& row : result.rows) {
    Json r;
    r["disabled_kind"] = ToString(row.disabled_kind);
    r["f1"] = row.f1;
    r["delta"] = row.delta;
    r["predictions"] = row.predictions;
    rows.push_back(std::move(r));
  }
  j["rows"] = rows;
  return j;
}

std::string FormatDetectionTable(const DocumentReport& report) {
  std::string out = Pad("Statement", 12) + Pad("p_hall", 9) + Pad("Flagged", 9) + "Text\n";
  for (const StatementRecord& r : report.records) {
    out += Pad(r.statement.id(), 12);
    if (r.report) {
      out += Pad(Fixed(r.report->p_hall), 9) + Pad(r.report->verdict ? "yes" : "no", 9);
    } else {
      out += Pad("-", 9) + Pad("error", 9);
    }
    out += r.statement.text + "\n";
  }
  out += "flagged " + std::to_string(report.summary.flagged) + " of " +
         std::to_string(report.summary.statements) + "\n";
  return out;
}

std::string FormatMitigationTable(std::span<const MitigationTableRow> rows) {
  std::string out = Pad("Type", 14) + Pad("Original Score", 16) + Pad("Mitigated Score", 17) +
                    "Improvement\n";
  for (const MitigationTableRow& row : rows) {
    out += Pad(row.kind ? KindLabel(*row.kind) : "Overall", 14) + Pad(Fixed(row.mean_before), 16) +
           Pad(Fixed(row.mean_after), 17) + Fixed(row.mean_improvement) + "\n";
  }
  return out;
}

std::string FormatAblationTable(const AblationResult& result) {
  std::string out = Pad("Probe Type", 24) + Pad("F1 Score", 10) + "Delta\n";
  for (const AblationRow& row : result.rows) {
    out += Pad("No " + KindLabel(row.disabled_kind) + " Probe", 24) + Pad(Fixed(row.f1), 10) +
           Signed(row.delta) + "\n";
  }
  out += Pad("Full Model", 24) + Pad(Fixed(result.full_f1), 10) + "--\n";
  return out;
}

std::string FormatMetricsTable(std::span<const MetricsReport> reports) {
  std::string out = Pad("Method", 26) + Pad("Accuracy", 10) + Pad("Precision", 11) +
                    Pad("Recall", 8) + Pad("F1", 7) + Pad("ECE", 7) + "Brier\n";
  for (const MetricsReport& r : reports) {
    out += Pad(r.method, 26) + Pad(Fixed(r.accuracy), 10) + Pad(Fixed(r.precision), 11) +
           Pad(Fixed(r.recall), 8) + Pad(Fixed(r.f1), 7) + Pad(Fixed(r.ece), 7) +
           Fixed(r.brier) + "\n";
  }
  return out;
}

}  // namespace cfprobe
