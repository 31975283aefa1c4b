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

#include "cfprobe/run_config.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cfprobe/errors.h"
#include "cfprobe/text_util.h"

namespace cfprobe {
namespace {

template <typename T>
T ParseInteger(std::string_view key, std::string_view value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw InvalidArgument(std::string(key) + ": expected an integer, got '" +
                          std::string(value) + "'");
  }
  return out;
}

double ParseDouble(std::string_view key, std::string_view value) {
  const std::string s(value);
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) {
    throw InvalidArgument(std::string(key) + ": expected a number, got '" + s + "'");
  }
  return out;
}

bool ParseBool(std::string_view key, std::string_view value) {
  const std::string v = ToLower(value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw InvalidArgument(std::string(key) + ": expected a boolean, got '" +
                        std::string(value) + "'");
}

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string KindCsv(KindSet kinds) {
  std::string out;
  for (ProbeKind k : kinds.ToVector()) {
    if (!out.empty()) out += ',';
    out += ToString(k);
  }
  return out;
}

}  // namespace

void ApplySetting(Settings& s, std::string_view key_in, std::string_view value_in) {
  const std::string key(Trim(key_in));
  const std::string_view value = Trim(value_in);
  RunConfig& run = s.run;
  BackendConfig& b = run.backend;
  if (key == "backend") {
    if (value != "mock" && value != "remote") {
      throw InvalidArgument("backend must be mock or remote");
    }
    s.backend = std::string(value);
  } else if (key == "mock_kb") {
    s.mock_kb = std::string(value);
  } else if (key == "lexicon") {
    s.lexicon = std::string(value);
  } else if (key == "templates") {
    s.templates = std::string(value);
  } else if (key == "baseline") {
    if (!value.empty() && value != "simple-confidence" && value != "self-consistency") {
      throw InvalidArgument("baseline must be simple-confidence or self-consistency");
    }
    s.baseline = std::string(value);
  } else if (key == "format") {
    if (value != "json" && value != "table") throw InvalidArgument("format must be json or table");
    s.format = std::string(value);
  } else if (key == "curve") {
    s.curve = std::string(value);
  } else if (key == "bins") {
    s.bins = ParseInteger<std::size_t>(key, value);
  } else if (key == "bootstrap_iterations") {
    s.bootstrap_iterations = ParseInteger<std::size_t>(key, value);
  } else if (key == "confidence_level") {
    s.confidence_level = ParseDouble(key, value);
  } else if (key == "consistency_samples") {
    s.consistency_samples = ParseInteger<std::size_t>(key, value);
  } else if (key == "consistency_temperature") {
    s.consistency_temperature = ParseDouble(key, value);
  } else if (key == "k") {
    run.k = ParseInteger<std::size_t>(key, value);
  } else if (key == "strategy") {
    run.strategy = ParseProbeStrategy(value);
  } else if (key == "tau") {
    run.weights.threshold = ParseDouble(key, value);
  } else if (key == "w_sensitivity") {
    run.weights.w_sensitivity = ParseDouble(key, value);
    run.weights.w_variance = 1.0 - run.weights.w_sensitivity;
  } else if (key == "w_variance") {
    run.weights.w_variance = ParseDouble(key, value);
    run.weights.w_sensitivity = 1.0 - run.weights.w_variance;
  } else if (key == "mitigation") {
    run.mitigation_enabled = ParseBool(key, value);
  } else if (key == "seed") {
    run.seed = ParseInteger<std::uint64_t>(key, value);
  } else if (key == "parallel_statements") {
    run.parallel_statements = ParseInteger<int>(key, value);
  } else if (key == "disable_kinds") {
    run.disabled_kinds = ParseKindList(value);
  } else if (key == "endpoint") {
    b.endpoint = std::string(value);
  } else if (key == "model") {
    b.model_name = std::string(value);
  } else if (key == "temperature") {
    b.temperature = ParseDouble(key, value);
  } else if (key == "generation_temperature") {
    b.generation_temperature = ParseDouble(key, value);
  } else if (key == "max_parallel") {
    b.max_parallel = ParseInteger<int>(key, value);
  } else if (key == "retries") {
    b.retries = ParseInteger<int>(key, value);
  } else if (key == "timeout") {
    b.timeout_seconds = ParseDouble(key, value);
  } else if (key == "backoff_initial") {
    b.backoff_initial_seconds = ParseDouble(key, value);
  } else if (key == "cache_path") {
    b.cache_path = std::string(value);
  } else {
    throw InvalidArgument("unknown setting '" + key + "'");
  }
}

void ApplyAssignment(Settings& settings, std::string_view assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw InvalidArgument("expected key=value, got '" + std::string(assignment) + "'");
  }
  ApplySetting(settings, assignment.substr(0, eq), assignment.substr(eq + 1));
}

void ApplyConfigText(Settings& settings, std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view t = Trim(line);
    if (t.empty() || t.front() == '#') continue;
    try {
      ApplyAssignment(settings, t);
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void ApplyConfigFile(Settings& settings, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingFile("cannot open config " + path.string());
  ApplyConfigText(settings, in);
}

std::string RenderSettings(const Settings& s) {
  const RunConfig& r = s.run;
  const BackendConfig& b = r.backend;
  std::ostringstream out;
  out << "backend = " << s.backend << "\n"
      << "mock_kb = " << s.mock_kb << "\n"
      << "lexicon = " << s.lexicon << "\n"
      << "templates = " << s.templates << "\n"
      << "endpoint = " << b.endpoint << "\n"
      << "model = " << b.model_name << "\n"
      << "temperature = " << Num(b.temperature) << "\n"
      << "generation_temperature = " << Num(b.generation_temperature) << "\n"
      << "max_parallel = " << b.max_parallel << "\n"
      << "retries = " << b.retries << "\n"
      << "timeout = " << Num(b.timeout_seconds) << "\n"
      << "backoff_initial = " << Num(b.backoff_initial_seconds) << "\n"
      << "cache_path = " << b.cache_path << "\n"
      << "k = " << r.k << "\n"
      << "strategy = " << ToString(r.strategy) << "\n"
      << "tau = " << Num(r.weights.threshold) << "\n"
      << "w_variance = " << Num(r.weights.w_variance) << "\n"
      << "w_sensitivity = " << Num(r.weights.w_sensitivity) << "\n"
      << "mitigation = " << (r.mitigation_enabled ? "true" : "false") << "\n"
      << "seed = " << r.seed << "\n"
      << "parallel_statements = " << r.parallel_statements << "\n"
      << "disable_kinds = " << KindCsv(r.disabled_kinds) << "\n"
      << "baseline = " << s.baseline << "\n"
      << "format = " << s.format << "\n"
      << "curve = " << s.curve << "\n"
      << "bins = " << s.bins << "\n"
      << "bootstrap_iterations = " << s.bootstrap_iterations << "\n"
      << "confidence_level = " << Num(s.confidence_level) << "\n"
      << "consistency_samples = " << s.consistency_samples << "\n"
      << "consistency_temperature = " << Num(s.consistency_temperature) << "\n";
  return out.str();
}

}  // namespace cfprobe
