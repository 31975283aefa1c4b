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

#include <algorithm>
#include <array>
#include <cctype>
#include <string>

#include "cfprobe/errors.h"
#include "cfprobe/statement.h"
#include "cfprobe/text_util.h"

namespace cfprobe {
namespace {

// Tokens ending in '.' that do not end a sentence.
constexpr std::array<std::string_view, 24> kAbbreviations = {
    "dr.",  "mr.",   "mrs.", "ms.",   "prof.", "st.",   "jr.",     "sr.",
    "vs.",  "etc.",  "e.g.", "i.e.",  "u.s.",  "u.k.",  "u.n.",    "inc.",
    "ltd.", "co.",   "no.",  "mt.",   "fig.",  "approx.", "ca.",   "gen."};

// Leading words that mark a sentence as an instruction rather than a claim.
constexpr std::array<std::string_view, 30> kImperativeLeads = {
    "please", "let",      "let's",   "consider", "note",   "remember",
    "imagine", "suppose", "tell",    "list",     "explain", "describe",
    "give",   "find",     "show",    "make",     "take",   "do",
    "don't",  "try",      "write",   "use",      "go",     "read",
    "check",  "ensure",   "keep",    "ask",      "answer", "summarize"};

constexpr std::array<std::string_view, 7> kTemporalKeywords = {
    "century", "centuries", "era", "eras", "decade", "decades", "millennium"};

bool IsTerminator(char c) { return c == '.' || c == '!' || c == '?'; }

bool IsCloser(char c) {
  return c == '"' || c == '\'' || c == ')' || c == ']';
}

bool IsAbbreviation(std::string_view doc, std::size_t dot) {
  std::size_t b = dot;
  while (b > 0 && !std::isspace(static_cast<unsigned char>(doc[b - 1]))) --b;
  const std::string_view word = doc.substr(b, dot + 1 - b);
  // Single-letter initial such as "J."
  if (word.size() == 2 && std::isupper(static_cast<unsigned char>(word[0]))) {
    return true;
  }
  const std::string lowered = ToLower(word);
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), lowered) !=
         kAbbreviations.end();
}

std::size_t WhitespaceTokenCount(std::string_view s) {
  std::size_t count = 0;
  bool in_token = false;
  for (char c : s) {
    const bool space = std::isspace(static_cast<unsigned char>(c));
    if (!space && !in_token) ++count;
    in_token = !space;
  }
  return count;
}

bool IsImperative(std::string_view sentence) {
  const std::vector<Token> tokens = ScanTokens(sentence);
  if (tokens.empty()) return false;
  const std::string lead = ToLower(tokens.front().text);
  return std::find(kImperativeLeads.begin(), kImperativeLeads.end(), lead) !=
         kImperativeLeads.end();
}

bool HasCausalConnective(const std::vector<Token>& tokens) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string w = ToLower(tokens[i].text);
    if (w == "causes" || w == "cause" || w == "caused" || w == "because") {
      return true;
    }
    if (i + 1 < tokens.size()) {
      const std::string next = ToLower(tokens[i + 1].text);
      if ((w == "leads" || w == "lead" || w == "led") && next == "to") return true;
      if ((w == "results" || w == "result" || w == "resulted") && next == "in") {
        return true;
      }
      if (w == "due" && next == "to") return true;
    }
  }
  return false;
}

}  // namespace

std::string Statement::id() const {
  return document_id + ":" + std::to_string(index);
}

KindSet ClassifyClaim(std::string_view text) {
  if (Trim(text).empty()) throw InvalidArgument("cannot classify empty text");
  KindSet kinds{ProbeKind::kFactual};
  const std::vector<Token> tokens = ScanTokens(text);
  for (const Token& token : tokens) {
    if (token.type == TokenType::kNumber) {
      // Years resolve to Temporal only.
      if (IsYear(token)) {
        kinds.Insert(ProbeKind::kTemporal);
      } else {
        kinds.Insert(ProbeKind::kQuantitative);
      }
      continue;
    }
    if (MonthIndex(token.text) || OrdinalValue(token.text)) {
      kinds.Insert(ProbeKind::kTemporal);
    }
    const std::string lowered = ToLower(token.text);
    if (std::find(kTemporalKeywords.begin(), kTemporalKeywords.end(), lowered) !=
        kTemporalKeywords.end()) {
      kinds.Insert(ProbeKind::kTemporal);
    }
    if (NumberWordValue(token.text)) kinds.Insert(ProbeKind::kQuantitative);
  }
  if (HasCausalConnective(tokens)) kinds.Insert(ProbeKind::kLogical);
  return kinds;
}

Statement MakeStatement(std::string_view text, std::string_view document_id,
                        std::size_t index) {
  const std::string_view trimmed = Trim(text);
  Statement s;
  s.document_id = std::string(document_id);
  s.index = index;
  s.text = std::string(trimmed);
  const std::size_t offset =
      trimmed.empty() ? 0 : static_cast<std::size_t>(trimmed.data() - text.data());
  s.source_span = {offset, offset + trimmed.size()};
  s.claim_kinds = ClassifyClaim(trimmed);
  return s;
}

std::vector<Statement> ExtractStatements(std::string_view document,
                                         std::string_view document_id) {
  std::vector<Statement> out;
  const std::size_t n = document.size();
  std::size_t start = 0;
  std::size_t i = 0;

  auto emit = [&](std::size_t begin, std::size_t end, bool question) {
    std::string_view raw = document.substr(begin, end - begin);
    const std::string_view trimmed = Trim(raw);
    if (trimmed.empty() || question) return;
    if (WhitespaceTokenCount(trimmed) < 3) return;
    if (IsImperative(trimmed)) return;
    Statement s;
    s.document_id = std::string(document_id);
    s.index = out.size();
    s.text = std::string(trimmed);
    const std::size_t offset = static_cast<std::size_t>(trimmed.data() - document.data());
    s.source_span = {offset, offset + trimmed.size()};
    s.claim_kinds = ClassifyClaim(trimmed);
    out.push_back(std::move(s));
  };

  while (i < n) {
    if (!IsTerminator(document[i])) {
      ++i;
      continue;
    }
    std::size_t end = i;
    bool question = false;
    while (end < n && IsTerminator(document[end])) {
      question = question || document[end] == '?';
      ++end;
    }
    const std::size_t run = end - i;
    while (end < n && IsCloser(document[end])) ++end;
    const bool at_break =
        end == n || std::isspace(static_cast<unsigned char>(document[end]));
    const bool single_dot = run == 1 && document[i] == '.';
    if (!at_break || (single_dot && end < n && IsAbbreviation(document, i))) {
      i = end;
      continue;
    }
    emit(start, end, question);
    start = end;
    i = end;
  }
  if (start < n) emit(start, n, false);
  return out;
}

}  // namespace cfprobe
