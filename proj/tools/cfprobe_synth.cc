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

// cfprobe_synth: writes a designed mock knowledge base for a dataset.
//
// Truthful records score --truth and every probe the pipeline would
// generate for them scores --probe; hallucinations are left at --default.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cfprobe/evaluation.h"
#include "cfprobe/run_config.h"
#include "designed_mock.h"

int main(int argc, char** argv) {
  CLI::App app{"Designed mock knowledge base for a dataset", "cfprobe_synth"};
  std::string input;
  std::string output;
  std::string config;
  std::vector<std::string> sets;
  cfprobe::testing::DesignedMockOptions options;
  app.add_option("--input,-i", input, "Dataset (.jsonl)")->required();
  app.add_option("--output,-o", output, "Knowledge base path (default: standard output)");
  app.add_option("--config,-c", config, "Run configuration the knowledge base targets");
  app.add_option("--set", sets, "Override a config key (key=value)");
  app.add_option("--truth", options.truth_confidence, "Confidence of truthful records");
  app.add_option("--probe", options.probe_confidence, "Confidence of their probes");
  app.add_option("--default", options.default_confidence, "Default confidence");
  app.add_option("--jitter", options.jitter, "Mock jitter half-width");
  CLI11_PARSE(app, argc, argv);

  try {
    cfprobe::Settings settings;
    if (!config.empty()) cfprobe::ApplyConfigFile(settings, config);
    for (const std::string& s : sets) cfprobe::ApplyAssignment(settings, s);
    const auto examples = cfprobe::LoadDataset(input);
    const auto kb = cfprobe::testing::BuildDesignedKb(examples, settings.run, options);
    const std::string text = cfprobe::testing::SerializeKb(kb);
    if (output.empty()) {
      std::cout << text;
    } else {
      std::ofstream(output) << text;
    }
  } catch (const std::exception& e) {
    std::cerr << "cfprobe_synth: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
