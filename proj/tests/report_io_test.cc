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

#include <gtest/gtest.h>

#include <memory>

#include "cfprobe/errors.h"

namespace cfprobe {
namespace {

DocumentReport SampleReport(bool with_mitigation) {
  MockKnowledgeBase kb;
  kb.jitter = 0.02;
  ConfidenceService service(std::make_shared<MockBackend>(kb, 4), BackendConfig{});
  PipelineContext context{service, ConfusableLexicon::Default(), ProbeTemplateSet::Default()};
  RunConfig config;
  config.seed = 4;
  DocumentReport r = RunDetect(
      "World War II ended in 1945. Rain causes wet streets. Zorblax is a quiet town.", "doc",
      config, context);
  if (with_mitigation) r = RunMitigate(r, config, context);
  return r;
}

TEST(DocumentReportJsonTest, Shape) {
  const Json j = ToJson(SampleReport(false));
  EXPECT_EQ(j["schema_version"], kReportSchemaVersion);
  EXPECT_EQ(j["document_id"], "doc");
  EXPECT_EQ(j["records"].size(), 3u);
  const Json& rec = j["records"][0];
  EXPECT_EQ(rec["statement"]["id"], "doc:0");
  EXPECT_EQ(rec["statement"]["claim_kinds"], Json::array({"factual", "temporal"}));
  EXPECT_TRUE(rec["report"].is_object());
  EXPECT_EQ(rec["report"]["probe_kinds"].size(), rec["probes"].size());
  EXPECT_TRUE(j["records"][2]["report"].is_null());
  EXPECT_TRUE(j["records"][2].contains("error"));
  EXPECT_FALSE(j["summary"].contains("success_rate"));
  // Reports carry no timestamps or cache state.
  const std::string text = j.dump();
  EXPECT_EQ(text.find("cached"), std::string::npos);
  EXPECT_EQ(text.find("_at\""), std::string::npos);
}

TEST(DocumentReportJsonTest, RoundTrips) {
  for (bool mitigated : {false, true}) {
    const Json original = ToJson(SampleReport(mitigated));
    const Json again = ToJson(DocumentReportFromJson(Json::parse(original.dump())));
    EXPECT_EQ(again.dump(), original.dump()) << "mitigated=" << mitigated;
  }
}

TEST(DocumentReportJsonTest, RejectsBadInput) {
  Json j = ToJson(SampleReport(false));
  j["schema_version"] = 99;
  EXPECT_THROW(DocumentReportFromJson(j), InvalidArgument);
  EXPECT_THROW(DocumentReportFromJson(Json::parse(R"({"schema_version": 1})")), InvalidArgument);
  EXPECT_THROW(DocumentReportFromJson(Json::array()), InvalidArgument);
}

TEST(MetricsJsonTest, Fields) {
  MetricsReport r;
  r.method = "m";
  r.n = 4;
  r.f1 = 0.5;
  r.confusion = {1, 1, 1, 1};
  r.ci["f1"] = {0.25, 0.75};
  const Json j = ToJson(r);
  EXPECT_EQ(j["method"], "m");
  EXPECT_EQ(j["confusion"]["tp"], 1);
  EXPECT_EQ(j["ci"]["f1"], Json::array({0.25, 0.75}));
}

TEST(TablesTest, MitigationTableLayout) {
  std::vector<MitigationTableRow> rows(2);
  rows[0].kind = ProbeKind::kTemporal;
  rows[0].mean_before = 0.8;
  rows[0].mean_after = 0.5;
  rows[0].mean_improvement = 0.3;
  rows[1].mean_before = 0.734;
  rows[1].mean_after = 0.489;
  rows[1].mean_improvement = 0.245;
  const std::string table = FormatMitigationTable(rows);
  EXPECT_TRUE(table.starts_with("Type"));
  EXPECT_NE(table.find("Original Score"), std::string::npos);
  EXPECT_NE(table.find("Mitigated Score"), std::string::npos);
  EXPECT_NE(table.find("Improvement"), std::string::npos);
  EXPECT_NE(table.find("Temporal"), std::string::npos);
  EXPECT_NE(table.find("Overall       0.734           0.489            0.245"), std::string::npos)
      << table;
}

TEST(TablesTest, AblationTableLayout) {
  AblationResult r;
  r.full_f1 = 0.816;
  for (ProbeKind kind : kAllProbeKinds) {
    AblationRow row;
    row.disabled_kind = kind;
    row.f1 = 0.774;
    row.delta = row.f1 - r.full_f1;
    r.rows.push_back(row);
  }
  r.rows[3].f1 = 0.816;
  r.rows[3].delta = 0.0;
  const std::string table = FormatAblationTable(r);
  EXPECT_NE(table.find("No Factual Probe"), std::string::npos);
  EXPECT_NE(table.find("-0.042"), std::string::npos);
  EXPECT_NE(table.find("+0.000"), std::string::npos);
  EXPECT_NE(table.find("Full Model"), std::string::npos);
  EXPECT_LT(table.find("No Logical Probe"), table.find("Full Model"));
}

TEST(TablesTest, DetectionAndMetricsTables) {
  const std::string detection = FormatDetectionTable(SampleReport(false));
  EXPECT_NE(detection.find("doc:2"), std::string::npos);
  EXPECT_NE(detection.find("error"), std::string::npos);
  MetricsReport m;
  m.method = "counterfactual-probing";
  m.f1 = 0.8165;
  const std::string metrics = FormatMetricsTable(std::span(&m, 1));
  EXPECT_NE(metrics.find("counterfactual-probing"), std::string::npos);
  EXPECT_NE(metrics.find("0.817"), std::string::npos);
}

}  // namespace
}  // namespace cfprobe
