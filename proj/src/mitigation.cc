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

#include "cfprobe/mitigation.h"

#include <algorithm>
#include <unordered_set>

#include "cfprobe/confidence_backend.h"
#include "cfprobe/errors.h"
#include "cfprobe/text_util.h"

namespace cfprobe {
namespace {

struct Edit {
  std::size_t begin;
  std::size_t end;
  std::string replacement;
};

struct Body {
  std::string text;
  std::string terminator;
};

Body SplitTerminator(std::string_view text) {
  const std::string_view trimmed = Trim(text);
  if (const char t = TrailingTerminator(trimmed)) {
    return {std::string(Trim(trimmed.substr(0, trimmed.size() - 1))), std::string(1, t)};
  }
  return {std::string(trimmed), ""};
}

std::string ApplyEdits(std::string text, std::vector<Edit> edits) {
  std::sort(edits.begin(), edits.end(),
            [](const Edit& a, const Edit& b) { return a.begin > b.begin; });
  for (const Edit& e : edits) text.replace(e.begin, e.end - e.begin, e.replacement);
  return text;
}

bool In(const std::unordered_set<std::string>& set, std::string_view word) {
  return set.contains(ToLower(word));
}

const std::unordered_set<std::string> kFactualHedges = {
    "reportedly", "likely", "apparently", "allegedly", "possibly", "probably"};
const std::unordered_set<std::string> kCopulas = {"is", "are", "was", "were"};
const std::unordered_set<std::string> kCommonVerbs = {
    "has",      "have",     "had",      "contains", "contain",  "won",
    "wrote",    "became",   "made",     "built",    "lies",     "flows",
    "orbits",   "runs",     "covers",   "holds",    "produces", "produce",
    "remains",  "includes", "consists", "requires", "reaches",  "spans",
    "equals",   "borders",  "fell",     "began",    "led",      "ran",
    "took",     "gave",     "found",    "grew",     "sank",     "rose",
    "causes",   "cause",    "leads",    "lead",     "results",  "result",
    "weighs",   "measures", "takes",    "boils",    "freezes",  "lives"};
const std::unordered_set<std::string> kSentenceOpeners = {
    "the", "a", "an", "this", "these", "those", "it", "there", "its"};

const std::unordered_set<std::string> kApproximators = {
    "around", "circa", "about", "approximately", "roughly", "nearly",
    "almost", "some",  "approx"};
const std::unordered_set<std::string> kPrecisionQualifiers = {"exactly", "precisely",
                                                              "just"};
const std::unordered_set<std::string> kCausalIntensifiers = {"directly", "always",
                                                             "necessarily", "solely"};
const std::vector<std::string_view> kCorrelationalMarkers = {
    "associated with", "in association with", "in connection with", "correlated with"};

bool IsVerbLike(const Token& t) {
  if (t.type != TokenType::kWord) return false;
  const std::string w = ToLower(t.text);
  if (std::isupper(static_cast<unsigned char>(t.text[0]))) return false;
  return kCommonVerbs.contains(w) || (w.size() > 3 && w.ends_with("ed"));
}

std::string MitigateFactual(const Body& body) {
  const std::vector<Token> tokens = ScanTokens(body.text);
  for (const Token& t : tokens) {
    if (In(kFactualHedges, t.text)) return body.text + body.terminator;
  }
  if (tokens.empty()) throw NoRewriteSite("no clause to qualify");
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    if (In(kCopulas, tokens[i].text)) {
      return ApplyEdits(body.text, {{tokens[i].end, tokens[i].end, " reportedly"}}) +
             body.terminator;
    }
  }
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    if (IsVerbLike(tokens[i])) {
      return ApplyEdits(body.text, {{tokens[i].begin, tokens[i].begin, "likely "}}) +
             body.terminator;
    }
  }
  const std::string rest = In(kSentenceOpeners, tokens.front().text)
                               ? LowercaseFirst(body.text)
                               : body.text;
  return "Reportedly, " + rest + body.terminator;
}

std::string MitigateTemporal(const Body& body) {
  const std::vector<Token> tokens = ScanTokens(body.text);
  std::vector<Edit> edits;
  bool hedged = false;
  std::vector<bool> covered(tokens.size(), false);

  // Hedges the expression starting at token `start`.
  auto hedge_at = [&](std::size_t start) {
    if (start > 0) {
      const std::string prev = ToLower(tokens[start - 1].text);
      if (kApproximators.contains(prev)) {
        hedged = true;
        return;
      }
      if (prev == "in") {
        edits.push_back({tokens[start - 1].begin, tokens[start - 1].end, "around"});
        return;
      }
    }
    const bool sentence_start = tokens[start].begin == 0;
    if (sentence_start) {
      edits.push_back({0, 0, "Around "});
    } else {
      edits.push_back({tokens[start].begin, tokens[start].begin, "around "});
    }
  };

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (covered[i]) continue;
    if (IsYear(tokens[i])) {
      const bool after_month = i > 0 && MonthIndex(tokens[i - 1].text);
      if (after_month) continue;  // handled with its month
      hedge_at(i);
      covered[i] = true;
    } else if (MonthIndex(tokens[i].text)) {
      const bool has_year = i + 1 < tokens.size() && IsYear(tokens[i + 1]);
      const bool after_in = i > 0 && ToLower(tokens[i - 1].text) == "in";
      const bool after_hedge = i > 0 && kApproximators.contains(ToLower(tokens[i - 1].text));
      if (has_year || after_in || after_hedge) {
        hedge_at(i);
        if (has_year) covered[i + 1] = true;
      }
    } else if (i + 2 < tokens.size() && ToLower(tokens[i].text) == "in" &&
               ToLower(tokens[i + 1].text) == "the" && OrdinalValue(tokens[i + 2].text)) {
      edits.push_back({tokens[i].begin, tokens[i].end, "around"});
    } else if (i + 1 < tokens.size() && ToLower(tokens[i].text) == "around" &&
               ToLower(tokens[i + 1].text) == "the") {
      hedged = true;
    }
  }
  if (edits.empty()) {
    if (hedged) return body.text + body.terminator;
    throw NoRewriteSite("no date to approximate");
  }
  std::string out = ApplyEdits(body.text, edits);
  if (out.starts_with("Around ") && body.text.size() > 0) {
    out = "Around " + LowercaseFirst(out.substr(7));
  }
  return out + body.terminator;
}

std::string MitigateQuantitative(const Body& body) {
  const std::vector<Token> tokens = ScanTokens(body.text);
  std::vector<Edit> edits;
  bool hedged = false;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    const bool numeral = t.type == TokenType::kNumber && !IsYear(t);
    const bool word = t.type == TokenType::kWord && NumberWordValue(t.text).has_value();
    if (!numeral && !word) continue;
    // Multi-word numbers ("two hundred") are hedged once, at their start.
    if (i > 0 && NumberWordValue(tokens[i - 1].text) &&
        tokens[i].begin - tokens[i - 1].end <= 1) {
      continue;
    }
    if (i > 0 && kApproximators.contains(ToLower(tokens[i - 1].text))) {
      hedged = true;
      continue;
    }
    if (i > 0 && kPrecisionQualifiers.contains(ToLower(tokens[i - 1].text))) {
      edits.push_back({tokens[i - 1].begin, tokens[i - 1].end, "approximately"});
    } else if (t.begin == 0) {
      edits.push_back({0, t.end, "Approximately " + LowercaseFirst(t.text)});
    } else {
      edits.push_back({t.begin, t.begin, "approximately "});
    }
  }
  if (edits.empty()) {
    if (hedged) return body.text + body.terminator;
    throw NoRewriteSite("no number to approximate");
  }
  return ApplyEdits(body.text, edits) + body.terminator;
}

// Correlational replacement for a causal connective, keeping its number and
// tense.
std::optional<std::string> CorrelationalForm(const std::string& connective) {
  if (connective == "causes" || connective == "leads to" || connective == "results in") {
    return "is associated with";
  }
  if (connective == "cause" || connective == "lead to" || connective == "result in") {
    return "are associated with";
  }
  if (connective == "caused" || connective == "led to" || connective == "resulted in") {
    return "was associated with";
  }
  if (connective == "because") return "in connection with the fact that";
  if (connective == "due to") return "in association with";
  return std::nullopt;
}

std::string MitigateLogical(const Body& body) {
  const std::vector<Token> tokens = ScanTokens(body.text);
  std::vector<Edit> edits;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string w = ToLower(tokens[i].text);
    std::string connective;
    std::size_t last = i;
    if (w == "causes" || w == "cause" || w == "caused" || w == "because") {
      connective = w;
    } else if (i + 1 < tokens.size()) {
      const std::string next = ToLower(tokens[i + 1].text);
      if (((w == "leads" || w == "lead" || w == "led") && next == "to") ||
          ((w == "results" || w == "result" || w == "resulted") && next == "in") ||
          (w == "due" && next == "to")) {
        connective = w + " " + next;
        last = i + 1;
      }
    }
    if (connective.empty()) continue;
    std::size_t begin = tokens[i].begin;
    if (i > 0 && kCausalIntensifiers.contains(ToLower(tokens[i - 1].text))) {
      begin = tokens[i - 1].begin;
    }
    edits.push_back({begin, tokens[last].end, *CorrelationalForm(connective)});
    i = last;
  }
  if (edits.empty()) {
    const std::string lowered = ToLower(body.text);
    for (std::string_view marker : kCorrelationalMarkers) {
      if (lowered.find(marker) != std::string::npos) return body.text + body.terminator;
    }
    throw NoRewriteSite("no causal claim to soften");
  }
  return ApplyEdits(body.text, edits) + body.terminator;
}

}  // namespace

std::string Mitigate(std::string_view text, ProbeKind kind) {
  const Body body = SplitTerminator(text);
  if (body.text.empty()) throw NoRewriteSite("empty statement");
  switch (kind) {
    case ProbeKind::kFactual:
      return MitigateFactual(body);
    case ProbeKind::kTemporal:
      return MitigateTemporal(body);
    case ProbeKind::kQuantitative:
      return MitigateQuantitative(body);
    case ProbeKind::kLogical:
      return MitigateLogical(body);
  }
  throw InvalidArgument("unknown probe kind");
}

std::string Mitigate(const Statement& statement, ProbeKind kind) {
  if (!statement.claim_kinds.Contains(kind)) {
    throw InvalidArgument(std::string("mitigation kind ") + std::string(ToString(kind)) +
                          " does not apply to: " + statement.text);
  }
  return Mitigate(statement.text, kind);
}

std::vector<ProbeKind> StrategyCandidates(const SensitivityReport& report,
                                          KindSet claim_kinds) {
  const auto per_kind = PerKindSensitivity(report);
  std::vector<ProbeKind> probed;
  std::vector<ProbeKind> unprobed;
  for (ProbeKind kind : claim_kinds.ToVector()) {
    (per_kind[Index(kind)] ? probed : unprobed).push_back(kind);
  }
  std::stable_sort(probed.begin(), probed.end(), [&](ProbeKind a, ProbeKind b) {
    return *per_kind[Index(a)] < *per_kind[Index(b)];
  });
  probed.insert(probed.end(), unprobed.begin(), unprobed.end());
  return probed;
}

MitigatedStatement RescoreMitigation(const SensitivityReport& original_report,
                                     const Statement& statement,
                                     std::string mitigated_text, ProbeKind strategy,
                                     const ProbeOptions& probe_options,
                                     ConfidenceService& service,
                                     const ScoringWeights& weights) {
  if (!original_report.verdict) {
    throw InvalidArgument("only flagged statements are mitigated");
  }
  const Statement rewritten =
      MakeStatement(mitigated_text, statement.document_id, statement.index);
  const ProbeSet probes = GenerateProbes(rewritten, probe_options, &service);
  if (probes.probes.empty()) throw EmptyCounterfactualSet();

  MitigatedStatement out;
  out.statement_id = statement.id();
  out.original_text = statement.text;
  out.mitigated_text = std::move(mitigated_text);
  out.strategy = strategy;
  out.report_after = DetectStatement(rewritten, probes.probes, service, weights);
  out.score_before = original_report.p_hall;
  out.score_after = out.report_after.p_hall;
  out.improvement = out.score_before - out.score_after;
  return out;
}

std::vector<MitigationTableRow> MitigationTable(
    std::span<const MitigatedStatement> records) {
  auto summarize = [](std::optional<ProbeKind> kind, auto&& selected) {
    MitigationTableRow row;
    row.kind = kind;
    std::size_t successes = 0;
    for (const MitigatedStatement* m : selected) {
      row.mean_before += m->score_before;
      row.mean_after += m->score_after;
      row.mean_improvement += m->improvement;
      successes += m->successful() ? 1 : 0;
    }
    row.count = selected.size();
    if (row.count > 0) {
      const double n = static_cast<double>(row.count);
      row.mean_before /= n;
      row.mean_after /= n;
      row.mean_improvement /= n;
      row.success_rate = static_cast<double>(successes) / n;
    }
    return row;
  };

  std::vector<MitigationTableRow> rows;
  for (ProbeKind kind : kAllProbeKinds) {
    std::vector<const MitigatedStatement*> selected;
    for (const MitigatedStatement& m : records) {
      if (m.strategy == kind) selected.push_back(&m);
    }
    if (!selected.empty()) rows.push_back(summarize(kind, selected));
  }
  std::vector<const MitigatedStatement*> all;
  for (const MitigatedStatement& m : records) all.push_back(&m);
  rows.push_back(summarize(std::nullopt, all));
  return rows;
}

}  // namespace cfprobe
