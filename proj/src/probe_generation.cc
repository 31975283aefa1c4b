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

#include "cfprobe/probe_generation.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "cfprobe/confidence_backend.h"
#include "cfprobe/errors.h"
#include "cfprobe/text_util.h"
#include "json.hpp"

namespace cfprobe {
namespace {

using nlohmann::json;

constexpr std::array<int, 4> kYearShifts = {-1, +1, -2, +2};
constexpr std::array<double, 4> kScaleFactors = {0.5, 0.9, 1.1, 2.0};
constexpr int kMaxRuleAttemptsPerKind = 8;
constexpr int kMaxModelAttemptsPerSlot = 3;

const char kDefaultLexiconTsv[] =
#include "default_lexicon.inc"
    ;

// Statement text without its sentence terminator, and the terminator.
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

std::string Splice(std::string_view body, std::size_t begin, std::size_t end,
                   std::string_view replacement) {
  std::string out(body.substr(0, begin));
  out += replacement;
  out += body.substr(end);
  return out;
}

bool IsUpper(char c) { return std::isupper(static_cast<unsigned char>(c)); }

// Carries the casing of `original`'s first letter onto `replacement`.
std::string MatchCase(std::string_view original, std::string_view lexicon_form,
                      std::string_view replacement) {
  if (original.empty() || replacement.empty()) return std::string(replacement);
  if (!lexicon_form.empty() && original[0] == lexicon_form[0]) {
    return std::string(replacement);
  }
  return IsUpper(original[0]) ? CapitalizeFirst(replacement) : LowercaseFirst(replacement);
}

Counterfactual MakeProbe(const Statement& s, ProbeKind kind, std::string text,
                         std::string perturbation) {
  Counterfactual c;
  c.statement_id = s.id();
  c.kind = kind;
  c.text = std::move(text);
  c.perturbation = std::move(perturbation);
  c.origin = ProbeOrigin::kRuleBased;
  return c;
}

Counterfactual PerturbFactual(const Statement& s, const ConfusableLexicon& lexicon,
                              std::uint64_t seed) {
  const Body body = SplitTerminator(s.text);
  const std::optional<ConfusableLexicon::Match> match = lexicon.FindFirst(body.text);
  if (!match) throw NoPerturbationSite("no confusable entity in: " + s.text);
  const auto& members = lexicon.categories()[match->category].members;
  std::vector<std::string_view> others;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i != match->member) others.push_back(members[i]);
  }
  if (others.empty()) throw NoPerturbationSite("entity has no confusable peers");
  const std::string_view matched =
      std::string_view(body.text).substr(match->begin, match->end - match->begin);
  const std::string replacement =
      MatchCase(matched, members[match->member], others[seed % others.size()]);
  return MakeProbe(s, ProbeKind::kFactual,
                   Splice(body.text, match->begin, match->end, replacement) + body.terminator,
                   "entity: " + std::string(matched) + "→" + replacement);
}

Counterfactual PerturbTemporal(const Statement& s, std::uint64_t seed) {
  const Body body = SplitTerminator(s.text);
  const std::vector<Token> tokens = ScanTokens(body.text);
  for (const Token& t : tokens) {
    if (!IsYear(t)) continue;
    const int year = std::stoi(std::string(t.text));
    const int shifted = year + kYearShifts[seed % kYearShifts.size()];
    const std::string rendered = std::to_string(shifted);
    return MakeProbe(s, ProbeKind::kTemporal,
                     Splice(body.text, t.begin, t.end, rendered) + body.terminator,
                     "year: " + std::string(t.text) + "→" + rendered);
  }
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    const std::optional<int> ordinal = OrdinalValue(tokens[i].text);
    const std::string next = ToLower(tokens[i + 1].text);
    if (!ordinal || (next != "century" && next != "centuries")) continue;
    for (std::size_t t = 0; t < kYearShifts.size(); ++t) {
      const int shifted = *ordinal + kYearShifts[(seed + t) % kYearShifts.size()];
      if (shifted < 1) continue;
      const std::string rendered = OrdinalFor(shifted);
      return MakeProbe(s, ProbeKind::kTemporal,
                       Splice(body.text, tokens[i].begin, tokens[i].end, rendered) +
                           body.terminator,
                       "century: " + std::string(tokens[i].text) + "→" + rendered);
    }
  }
  for (const Token& t : tokens) {
    const std::optional<int> month = MonthIndex(t.text);
    if (!month) continue;
    const std::string rendered(
        MonthName(*month + kYearShifts[seed % kYearShifts.size()]));
    return MakeProbe(s, ProbeKind::kTemporal,
                     Splice(body.text, t.begin, t.end, rendered) + body.terminator,
                     "month: " + std::string(t.text) + "→" + rendered);
  }
  throw NoPerturbationSite("no date or time expression in: " + s.text);
}

double RoundTo(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(value * scale) / scale;
}

Counterfactual PerturbQuantitative(const Statement& s, std::uint64_t seed) {
  const Body body = SplitTerminator(s.text);
  for (const Token& t : ScanTokens(body.text)) {
    if (IsYear(t)) continue;
    double value = 0.0;
    Numeral numeral;
    bool is_word = false;
    if (t.type == TokenType::kNumber) {
      const std::optional<Numeral> parsed = ParseNumeral(t.text);
      if (!parsed) continue;
      numeral = *parsed;
      value = numeral.value;
    } else if (const std::optional<int> w = NumberWordValue(t.text)) {
      is_word = true;
      value = *w;
    } else {
      continue;
    }

    const bool integral = numeral.decimals == 0 && value == std::floor(value);
    double replacement = value;
    if (integral && value <= 10.0) {
      replacement = value + ((seed % 2 == 0) ? -1.0 : 1.0);
      if (replacement < 0.0) replacement = value + 1.0;
    } else {
      for (std::size_t f = 0; f < kScaleFactors.size(); ++f) {
        const double candidate =
            RoundTo(value * kScaleFactors[(seed + f) % kScaleFactors.size()],
                    numeral.decimals);
        if (candidate != value && candidate > 0.0) {
          replacement = candidate;
          break;
        }
      }
      if (replacement == value) continue;
    }

    std::string rendered;
    if (is_word) {
      const std::optional<std::string> word =
          NumberWordFor(static_cast<int>(replacement));
      rendered = word ? MatchCase(t.text, "", *word)
                      : FormatNumeral(replacement, 0, false);
    } else {
      rendered = FormatNumeral(replacement, numeral.decimals, numeral.grouped);
    }
    return MakeProbe(s, ProbeKind::kQuantitative,
                     Splice(body.text, t.begin, t.end, rendered) + body.terminator,
                     "number: " + std::string(t.text) + "→" + rendered);
  }
  throw NoPerturbationSite("no number in: " + s.text);
}

struct Connective {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string lowered;  // as matched, lowercase, single-spaced
};

std::optional<Connective> FindConnective(const std::vector<Token>& tokens) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string w = ToLower(tokens[i].text);
    if (w == "causes" || w == "cause" || w == "caused" || w == "because") {
      return Connective{tokens[i].begin, tokens[i].end, w};
    }
    if (i + 1 >= tokens.size()) continue;
    const std::string next = ToLower(tokens[i + 1].text);
    const bool pair = ((w == "leads" || w == "lead" || w == "led") && next == "to") ||
                      ((w == "results" || w == "result" || w == "resulted") && next == "in") ||
                      (w == "due" && next == "to");
    if (pair) {
      return Connective{tokens[i].begin, tokens[i + 1].end, w + " " + next};
    }
  }
  return std::nullopt;
}

bool LooksPlural(std::string_view phrase) {
  const std::vector<Token> tokens = ScanTokens(phrase);
  if (tokens.empty()) return false;
  const std::string last = ToLower(tokens.back().text);
  static const std::unordered_set<std::string> kIrregular = {
      "people", "children", "men", "women", "data", "mice", "teeth", "feet"};
  if (kIrregular.contains(last)) return true;
  if (last.size() < 3 || last.back() != 's') return false;
  return !(last.ends_with("ss") || last.ends_with("us") || last.ends_with("is"));
}

// Connective form agreeing with a subject of the given number.
std::string AgreeingConnective(const std::string& lowered, bool plural) {
  if (lowered == "causes" || lowered == "cause") return plural ? "cause" : "causes";
  if (lowered == "leads to" || lowered == "lead to") return plural ? "lead to" : "leads to";
  if (lowered == "results in" || lowered == "result in") {
    return plural ? "result in" : "results in";
  }
  return lowered;
}

// Lowercases a sentence-initial word unless it looks like a proper noun.
std::string DemoteSubject(std::string_view phrase, const ConfusableLexicon& lexicon) {
  const std::vector<Token> tokens = ScanTokens(phrase);
  if (tokens.empty()) return std::string(phrase);
  const std::string_view first = tokens.front().text;
  bool all_caps = first.size() > 1;
  for (char c : first) all_caps = all_caps && !std::islower(static_cast<unsigned char>(c));
  if (all_caps || first == "I") return std::string(phrase);
  if (const auto m = lexicon.FindFirst(phrase); m && m->begin == tokens.front().begin) {
    const std::string& member = lexicon.categories()[m->category].members[m->member];
    if (!member.empty() && IsUpper(member[0])) {
      return std::string(phrase);
    }
  }
  return LowercaseFirst(phrase);
}

std::string TrimPunctuation(std::string_view s) {
  s = Trim(s);
  while (!s.empty() && (s.back() == ',' || s.back() == ';')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ',' || s.front() == ';')) s.remove_prefix(1);
  return std::string(Trim(s));
}

Counterfactual PerturbLogical(const Statement& s, const ConfusableLexicon& lexicon) {
  const Body body = SplitTerminator(s.text);
  const std::vector<Token> tokens = ScanTokens(body.text);
  const std::optional<Connective> conn = FindConnective(tokens);
  if (!conn) throw NoPerturbationSite("no causal connective in: " + s.text);
  const std::string cause = TrimPunctuation(std::string_view(body.text).substr(0, conn->begin));
  const std::string effect = TrimPunctuation(std::string_view(body.text).substr(conn->end));
  if (cause.empty() || effect.empty()) {
    throw NoPerturbationSite("causal clause missing a side in: " + s.text);
  }
  const std::string connective = AgreeingConnective(conn->lowered, LooksPlural(effect));
  const std::string text = CapitalizeFirst(effect) + " " + connective + " " +
                           DemoteSubject(cause, lexicon) + body.terminator;
  return MakeProbe(s, ProbeKind::kLogical, text,
                   "causal: swapped around '" + conn->lowered + "'");
}

ProbeTemplate MakeTemplate(ProbeKind kind, std::string_view task,
                           std::vector<std::pair<std::string, std::string>> shots) {
  ProbeTemplate t;
  t.kind = kind;
  t.instruction = std::string(task) +
                  "\nReply with the rewritten sentence only.\nStatement: {s}";
  t.few_shots = std::move(shots);
  t.constraints = {"Change exactly one fact.",
                   "Keep the sentence grammatical and believable.",
                   "Do not add explanations, hedges or quotation marks."};
  return t;
}

ProbeTemplateSet BuildDefaultTemplates() {
  ProbeTemplateSet set;
  set.Set(MakeTemplate(
      ProbeKind::kFactual,
      "Change one named person, place, object or property in the statement so "
      "that it becomes false but still sounds believable.",
      {{"Marie Curie won two Nobel Prizes.", "Rosalind Franklin won two Nobel Prizes."},
       {"Canberra is the capital of Australia.", "Sydney is the capital of Australia."}}));
  set.Set(MakeTemplate(
      ProbeKind::kTemporal,
      "Change one date, year, duration or ordering of events in the statement so "
      "that it becomes false but still sounds believable.",
      {{"The Titanic sank in 1912.", "The Titanic sank in 1915."},
       {"The printing press appeared in the 15th century.",
        "The printing press appeared in the 13th century."}}));
  set.Set(MakeTemplate(
      ProbeKind::kQuantitative,
      "Change one number, count or measurement in the statement so that it "
      "becomes false but still sounds believable.",
      {{"A spider has eight legs.", "A spider has six legs."},
       {"Water boils at 100 degrees Celsius at sea level.",
        "Water boils at 90 degrees Celsius at sea level."}}));
  set.Set(MakeTemplate(
      ProbeKind::kLogical,
      "Reverse or break the cause-and-effect relation in the statement so that it "
      "becomes false but still sounds believable.",
      {{"Smoking causes lung cancer.", "Lung cancer causes smoking."},
       {"Friction produces heat.", "Heat produces friction."}}));
  return set;
}

}  // namespace

std::string_view ToString(ProbeOrigin origin) {
  return origin == ProbeOrigin::kRuleBased ? "rule" : "model";
}

std::string_view ToString(ProbeStrategy strategy) {
  switch (strategy) {
    case ProbeStrategy::kRuleOnly:
      return "rule-only";
    case ProbeStrategy::kModelOnly:
      return "model-only";
    case ProbeStrategy::kRuleThenModel:
      return "rule-then-model";
  }
  return "unknown";
}

ProbeStrategy ParseProbeStrategy(std::string_view name) {
  const std::string lowered = ToLower(Trim(name));
  for (ProbeStrategy s : {ProbeStrategy::kRuleOnly, ProbeStrategy::kModelOnly,
                          ProbeStrategy::kRuleThenModel}) {
    if (lowered == ToString(s)) return s;
  }
  throw InvalidArgument("unknown probe strategy '" + std::string(name) + "'");
}

// ---- Lexicon ----------------------------------------------------------------

ConfusableLexicon ConfusableLexicon::Parse(std::string_view tsv) {
  ConfusableLexicon lexicon;
  std::size_t line_no = 0;
  for (const std::string& raw_line : Split(tsv, '\n')) {
    ++line_no;
    const std::string_view line = Trim(raw_line);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw MalformedRecord(line_no, "expected category<TAB>members");
    }
    Category category;
    category.name = std::string(Trim(line.substr(0, tab)));
    for (const std::string& member : Split(line.substr(tab + 1), ',')) {
      const std::string_view m = Trim(member);
      if (!m.empty()) category.members.emplace_back(m);
    }
    if (category.name.empty() || category.members.size() < 2) {
      throw MalformedRecord(line_no, "a category needs a name and two members");
    }
    lexicon.categories_.push_back(std::move(category));
  }
  return lexicon;
}

ConfusableLexicon ConfusableLexicon::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingFile("cannot open lexicon " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str());
}

const ConfusableLexicon& ConfusableLexicon::Default() {
  static const ConfusableLexicon lexicon = Parse(kDefaultLexiconTsv);
  return lexicon;
}

std::optional<ConfusableLexicon::Match> ConfusableLexicon::FindFirst(
    std::string_view text) const {
  const std::string lowered = ToLower(text);
  std::optional<Match> best;
  for (std::size_t c = 0; c < categories_.size(); ++c) {
    const auto& members = categories_[c].members;
    for (std::size_t m = 0; m < members.size(); ++m) {
      const std::string needle = ToLower(members[m]);
      std::size_t pos = lowered.find(needle);
      while (pos != std::string::npos) {
        const std::size_t end = pos + needle.size();
        const bool left_ok = pos == 0 || !IsWordChar(lowered[pos - 1]);
        const bool right_ok = end == lowered.size() || !IsWordChar(lowered[end]);
        if (left_ok && right_ok) {
          const bool better = !best || pos < best->begin ||
                              (pos == best->begin && end > best->end);
          if (better) best = Match{pos, end, c, m};
          break;
        }
        pos = lowered.find(needle, pos + 1);
      }
    }
  }
  return best;
}

// ---- Templates ----------------------------------------------------------------

std::string RenderProbePrompt(const ProbeTemplate& probe_template,
                              std::string_view statement_text) {
  const std::string& instruction = probe_template.instruction;
  const std::size_t first = instruction.find(kStatementPlaceholder);
  if (first == std::string::npos) {
    throw InvalidArgument("probe template has no statement placeholder");
  }
  if (instruction.find(kStatementPlaceholder, first + 1) != std::string::npos) {
    throw InvalidArgument("probe template has more than one statement placeholder");
  }
  std::string prompt = instruction.substr(0, first);
  prompt += Trim(statement_text);
  prompt += instruction.substr(first + kStatementPlaceholder.size());
  if (!probe_template.few_shots.empty()) {
    prompt += "\nExamples:";
    for (const auto& [original, counterfactual] : probe_template.few_shots) {
      prompt += "\n" + original + " -> " + counterfactual;
    }
  }
  if (!probe_template.constraints.empty()) {
    prompt += "\nConstraints:";
    for (const std::string& c : probe_template.constraints) prompt += "\n- " + c;
  }
  return prompt;
}

const ProbeTemplateSet& ProbeTemplateSet::Default() {
  static const ProbeTemplateSet set = BuildDefaultTemplates();
  return set;
}

ProbeTemplateSet ProbeTemplateSet::FromJsonText(std::string_view text) {
  ProbeTemplateSet set = Default();
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("probe templates: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidArgument("probe templates must be a JSON object");
  for (const auto& [name, entry] : doc.items()) {
    ProbeTemplate t;
    t.kind = ParseProbeKind(name);
    t.instruction = entry.at("instruction").get<std::string>();
    for (const auto& shot : entry.value("few_shots", json::array())) {
      t.few_shots.emplace_back(shot.at(0).get<std::string>(), shot.at(1).get<std::string>());
    }
    t.constraints = entry.value("constraints", std::vector<std::string>{});
    // Validates the placeholder contract up front.
    (void)RenderProbePrompt(t, "x");
    if (t.few_shots.empty()) {
      throw InvalidArgument("template '" + name + "' needs at least one few-shot pair");
    }
    set.Set(std::move(t));
  }
  return set;
}

ProbeTemplateSet ProbeTemplateSet::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingFile("cannot open probe templates " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return FromJsonText(buffer.str());
}

std::optional<std::string> ParseGeneratedProbe(std::string_view reply) {
  for (const std::string& raw_line : Split(reply, '\n')) {
    std::string_view line = Trim(raw_line);
    if (line.empty()) continue;
    for (std::string_view prefix : {"Counterfactual:", "counterfactual:", "- ", "* "}) {
      if (line.starts_with(prefix)) line = Trim(line.substr(prefix.size()));
    }
    while (line.size() >= 2 && (line.front() == '"' || line.front() == '\'') &&
           line.back() == line.front()) {
      line = Trim(line.substr(1, line.size() - 2));
    }
    if (line.empty() || ToLower(line) == "none") return std::nullopt;
    return std::string(line);
  }
  return std::nullopt;
}

// ---- Generation ----------------------------------------------------------------

Counterfactual PerturbRuleBased(const Statement& statement, ProbeKind kind,
                                const ConfusableLexicon& lexicon, std::uint64_t seed) {
  if (!statement.claim_kinds.Contains(kind)) {
    throw InvalidArgument(std::string("probe kind ") + std::string(ToString(kind)) +
                          " does not apply to: " + statement.text);
  }
  Counterfactual c;
  switch (kind) {
    case ProbeKind::kFactual:
      c = PerturbFactual(statement, lexicon, seed);
      break;
    case ProbeKind::kTemporal:
      c = PerturbTemporal(statement, seed);
      break;
    case ProbeKind::kQuantitative:
      c = PerturbQuantitative(statement, seed);
      break;
    case ProbeKind::kLogical:
      c = PerturbLogical(statement, lexicon);
      break;
  }
  if (NormalizeText(c.text) == NormalizeText(statement.text)) {
    throw NoPerturbationSite("rule produced an unchanged statement: " + statement.text);
  }
  return c;
}

ProbeSet GenerateProbes(const Statement& statement, const ProbeOptions& options,
                        ConfidenceService* service) {
  if (options.k < 1) throw InvalidArgument("k must be at least 1");
  const ConfusableLexicon& lexicon =
      options.lexicon ? *options.lexicon : ConfusableLexicon::Default();
  const ProbeTemplateSet& templates =
      options.templates ? *options.templates : ProbeTemplateSet::Default();

  std::vector<ProbeKind> kinds;
  for (ProbeKind kind : statement.claim_kinds.ToVector()) {
    if (!options.disabled_kinds.Contains(kind)) kinds.push_back(kind);
  }

  ProbeSet result;
  std::unordered_set<std::string> seen = {NormalizeText(statement.text)};
  auto accept = [&](Counterfactual c) {
    if (!seen.insert(NormalizeText(c.text)).second) return false;
    c.id = statement.id() + "/p" + std::to_string(result.probes.size());
    result.probes.push_back(std::move(c));
    return true;
  };

  if (options.strategy != ProbeStrategy::kModelOnly) {
    std::array<int, 4> attempts{};
    std::vector<ProbeKind> active = kinds;
    while (result.probes.size() < options.k && !active.empty()) {
      std::vector<ProbeKind> still_active;
      for (ProbeKind kind : active) {
        if (result.probes.size() >= options.k) {
          still_active.push_back(kind);
          continue;
        }
        bool produced = false;
        while (attempts[Index(kind)] < kMaxRuleAttemptsPerKind) {
          const int j = attempts[Index(kind)]++;
          try {
            if (accept(PerturbRuleBased(statement, kind, lexicon,
                                        options.seed + static_cast<std::uint64_t>(j)))) {
              produced = true;
              break;
            }
          } catch (const NoPerturbationSite&) {
            break;
          }
        }
        if (produced) still_active.push_back(kind);
      }
      active = std::move(still_active);
    }
  }

  if (options.strategy != ProbeStrategy::kRuleOnly && result.probes.size() < options.k &&
      !kinds.empty()) {
    if (service == nullptr) {
      throw InvalidArgument("model-generated probes need a backend");
    }
    std::array<std::uint64_t, 4> attempts{};
    std::vector<ProbeKind> active = kinds;
    while (result.probes.size() < options.k && !active.empty()) {
      std::vector<ProbeKind> still_active;
      for (ProbeKind kind : active) {
        if (result.probes.size() >= options.k) {
          still_active.push_back(kind);
          continue;
        }
        const std::string prompt = RenderProbePrompt(templates.at(kind), statement.text);
        bool produced = false;
        for (int tries = 0; tries < kMaxModelAttemptsPerSlot; ++tries) {
          const std::uint64_t attempt = attempts[Index(kind)]++;
          const std::optional<std::string> text =
              ParseGeneratedProbe(service->Generate(prompt, options.seed + attempt));
          if (!text) continue;
          Counterfactual c;
          c.statement_id = statement.id();
          c.kind = kind;
          c.text = *text;
          c.perturbation = "model: " + std::string(ToString(kind));
          c.origin = ProbeOrigin::kModelGenerated;
          if (accept(std::move(c))) {
            produced = true;
            break;
          }
        }
        if (produced) still_active.push_back(kind);
      }
      active = std::move(still_active);
    }
  }

  result.exhausted = result.probes.size() < options.k;
  return result;
}

}  // namespace cfprobe
