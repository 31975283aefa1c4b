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

#ifndef CFPROBE_STATEMENT_H_
#define CFPROBE_STATEMENT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cfprobe/probe_kind.h"

namespace cfprobe {

// Byte offsets [begin, end) into the source document.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

// An atomic declarative claim taken from model output.
struct Statement {
  std::string document_id;
  std::size_t index = 0;  // ordinal among the document's kept statements
  std::string text;       // trimmed; equals the source slice at source_span
  Span source_span;
  KindSet claim_kinds;    // always contains kFactual

  // "<document_id>:<index>"
  std::string id() const;
};

// Splits a document into declarative sentences in document order.
// Questions, imperatives (recognized by their leading verb) and fragments
// under three tokens are dropped; the kept sentences are numbered from 0.
std::vector<Statement> ExtractStatements(std::string_view document,
                                         std::string_view document_id = "doc");

// Which probe kinds apply to the statement text. Always includes kFactual.
// Throws InvalidArgument on empty text.
KindSet ClassifyClaim(std::string_view text);

// Wraps a whole text (for example one dataset record) as a single statement
// without segmentation.
Statement MakeStatement(std::string_view text, std::string_view document_id,
                        std::size_t index);

}  // namespace cfprobe

#endif  // CFPROBE_STATEMENT_H_
