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

#include "designed_mock.h"

#include <algorithm>
#include <memory>
#include <unordered_set>

#include "cfprobe/text_util.h"
#include "json.hpp"

namespace cfprobe::testing {

std::vector<std::vector<Counterfactual>> ProbesFor(std::span<const std::string> texts,
                                                   const RunConfig& config) {
  BackendConfig backend = config.backend;
  backend.cache_path.clear();
  ConfidenceService service(std::make_shared<MockBackend>(MockKnowledgeBase{}, config.seed),
                            backend);
  PipelineContext context{service, ConfusableLexicon::Default(), ProbeTemplateSet::Default()};
  std::vector<std::vector<Counterfactual>> out;
  for (const std::string& text : texts) {
    const Statement s = MakeStatement(text, "synth", 0);
    out.push_back(GenerateProbes(s, MakeProbeOptions(config, context, s), &service).probes);
  }
  return out;
}

MockKnowledgeBase BuildDesignedKb(std::span<const LabeledExample> examples,
                                  const RunConfig& config,
                                  const DesignedMockOptions& options) {
  MockKnowledgeBase kb;
  kb.default_confidence = options.default_confidence;
  kb.jitter = options.jitter;
  std::vector<std::string> truths;
  std::unordered_set<std::string> corpus;
  for (const LabeledExample& e : examples) {
    corpus.insert(NormalizeText(e.text));
    if (!e.label) truths.push_back(e.text);
  }
  for (const std::string& t : truths) kb.Add(t, options.truth_confidence);
  const auto probes = ProbesFor(truths, config);
  for (const auto& set : probes) {
    for (const Counterfactual& c : set) {
      // A probe that happens to be another record keeps that record's score.
      if (!corpus.contains(NormalizeText(c.text))) kb.Add(c.text, options.probe_confidence);
    }
  }
  return kb;
}

std::string SerializeKb(const MockKnowledgeBase& kb) {
  nlohmann::ordered_json settings;
  settings["default_confidence"] = kb.default_confidence;
  settings["jitter"] = kb.jitter;
  std::string out = settings.dump() + "\n";
  std::vector<std::pair<std::string, double>> entries(kb.entries.begin(), kb.entries.end());
  std::sort(entries.begin(), entries.end());
  for (const auto& [text, conf] : entries) {
    nlohmann::ordered_json rec;
    rec["text"] = text;
    rec["confidence"] = conf;
    out += rec.dump() + "\n";
  }
  return out;
}

}  // namespace cfprobe::testing
