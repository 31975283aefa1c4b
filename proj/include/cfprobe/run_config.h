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

#ifndef CFPROBE_RUN_CONFIG_H_
#define CFPROBE_RUN_CONFIG_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "cfprobe/pipeline.h"

namespace cfprobe {

// Everything a CLI invocation can set, by flag or by config file.
struct Settings {
  RunConfig run;
  std::string backend = "mock";  // mock | remote
  std::string mock_kb;           // knowledge-base path for the mock backend
  std::string lexicon;           // empty: compiled-in lexicon
  std::string templates;         // empty: built-in probe templates
  std::string baseline;          // empty: counterfactual probing
  std::string format = "json";   // json | table
  std::string curve;             // calibration-curve CSV output path
  std::size_t bins = 10;
  std::size_t bootstrap_iterations = 1000;
  double confidence_level = 0.95;
  std::size_t consistency_samples = 5;
  double consistency_temperature = 1.0;
};

// Sets one field by its config key; setting either weight also sets the
// other to its complement. Throws InvalidArgument on an unknown key or a bad
// value. The API key has no config key on purpose.
void ApplySetting(Settings& settings, std::string_view key, std::string_view value);

// "key=value" with the value possibly empty.
void ApplyAssignment(Settings& settings, std::string_view assignment);

// key = value lines; '#' starts a comment line. Errors name the line.
void ApplyConfigText(Settings& settings, std::istream& in);
void ApplyConfigFile(Settings& settings, const std::filesystem::path& path);

// Every key with its resolved value, one "key = value" line each, in a fixed
// order. The output parses back through ApplyConfigText.
std::string RenderSettings(const Settings& settings);

}  // namespace cfprobe

#endif  // CFPROBE_RUN_CONFIG_H_
