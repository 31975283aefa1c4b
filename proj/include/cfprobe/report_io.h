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

#ifndef CFPROBE_REPORT_IO_H_
#define CFPROBE_REPORT_IO_H_

#include <span>
#include <string>

#include "cfprobe/evaluation.h"
#include "cfprobe/pipeline.h"
#include "json.hpp"

namespace cfprobe {

using Json = nlohmann::ordered_json;

Json ToJson(const SensitivityReport& report);
Json ToJson(const Counterfactual& probe);
Json ToJson(const MitigatedStatement& mitigation);
Json ToJson(const MitigationTableRow& row);
Json ToJson(const DocumentReport& report);
Json ToJson(const MetricsReport& report);
Json ToJson(const AblationResult& result);

// Inverse of ToJson(DocumentReport). Throws InvalidArgument on a schema
// violation or an unknown schema_version.
DocumentReport DocumentReportFromJson(const Json& j);

// Plain-text tables.
std::string FormatDetectionTable(const DocumentReport& report);
std::string FormatMitigationTable(std::span<const MitigationTableRow> rows);
std::string FormatAblationTable(const AblationResult& result);
std::string FormatMetricsTable(std::span<const MetricsReport> reports);

}  // namespace cfprobe

#endif  // CFPROBE_REPORT_IO_H_
