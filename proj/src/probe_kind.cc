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

#include "cfprobe/probe_kind.h"

#include <string>

#include "cfprobe/errors.h"
#include "cfprobe/text_util.h"

namespace cfprobe {

std::string_view ToString(ProbeKind kind) {
  switch (kind) {
    case ProbeKind::kFactual:
      return "factual";
    case ProbeKind::kTemporal:
      return "temporal";
    case ProbeKind::kQuantitative:
      return "quantitative";
    case ProbeKind::kLogical:
      return "logical";
  }
  return "unknown";
}

ProbeKind ParseProbeKind(std::string_view name) {
  const std::string lowered = ToLower(Trim(name));
  for (ProbeKind kind : kAllProbeKinds) {
    if (lowered == ToString(kind)) return kind;
  }
  throw InvalidArgument("unknown probe kind '" + std::string(name) + "'");
}

std::vector<ProbeKind> KindSet::ToVector() const {
  std::vector<ProbeKind> out;
  for (ProbeKind kind : kAllProbeKinds) {
    if (Contains(kind)) out.push_back(kind);
  }
  return out;
}

KindSet ParseKindList(std::string_view csv) {
  KindSet set;
  for (const std::string& part : Split(csv, ',')) {
    if (Trim(part).empty()) continue;
    set.Insert(ParseProbeKind(part));
  }
  return set;
}

}  // namespace cfprobe
