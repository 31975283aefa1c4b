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

#ifndef CFPROBE_PROBE_GENERATION_H_
#define CFPROBE_PROBE_GENERATION_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cfprobe/probe_kind.h"
#include "cfprobe/statement.h"

namespace cfprobe {

class ConfidenceService;

enum class ProbeOrigin { kRuleBased, kModelGenerated };

std::string_view ToString(ProbeOrigin origin);

// A perturbed variant of a statement: similar surface, one fact changed.
struct Counterfactual {
  std::string id;
  std::string statement_id;
  ProbeKind kind = ProbeKind::kFactual;
  std::string text;
  std::string perturbation;  // e.g. "entity: Einstein→Newton"
  ProbeOrigin origin = ProbeOrigin::kRuleBased;
};

// Category -> interchangeable entities. Backs the entity-swap rule.
class ConfusableLexicon {
 public:
  struct Category {
    std::string name;
    std::vector<std::string> members;
  };

  struct Match {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t category = 0;
    std::size_t member = 0;
  };

  // One record per line: category, tab, comma-separated members. Lines
  // starting with '#' are comments. Throws MalformedRecord.
  static ConfusableLexicon Parse(std::string_view tsv);
  static ConfusableLexicon Load(const std::filesystem::path& path);
  // The lexicon shipped in data/lexicon.tsv, compiled in.
  static const ConfusableLexicon& Default();

  // Earliest whole-word, case-insensitive occurrence of any member; the
  // longest member wins at equal positions.
  std::optional<Match> FindFirst(std::string_view text) const;

  const std::vector<Category>& categories() const { return categories_; }

 private:
  std::vector<Category> categories_;
};

inline constexpr std::string_view kStatementPlaceholder = "{s}";

struct ProbeTemplate {
  ProbeKind kind = ProbeKind::kFactual;
  std::string instruction;  // contains kStatementPlaceholder exactly once
  std::vector<std::pair<std::string, std::string>> few_shots;
  std::vector<std::string> constraints;
};

// Instruction with the statement substituted, then an "Examples:" block of
// "original -> counterfactual" lines, then a "Constraints:" block of "- c"
// lines in declared order. Throws InvalidArgument unless the placeholder
// occurs exactly once.
std::string RenderProbePrompt(const ProbeTemplate& probe_template,
                              std::string_view statement_text);

// One template per probe kind.
class ProbeTemplateSet {
 public:
  static const ProbeTemplateSet& Default();
  // JSON object keyed by kind name: {"factual": {"instruction": ...,
  // "few_shots": [[orig, cf], ...], "constraints": [...]}, ...}. Kinds
  // missing from the file keep their default template.
  static ProbeTemplateSet Load(const std::filesystem::path& path);
  static ProbeTemplateSet FromJsonText(std::string_view text);

  const ProbeTemplate& at(ProbeKind kind) const { return templates_[Index(kind)]; }
  void Set(ProbeTemplate t) { templates_[Index(t.kind)] = std::move(t); }

 private:
  std::array<ProbeTemplate, 4> templates_;
};

// First non-empty reply line with "Counterfactual:" labels, bullets and
// quotes stripped. "NONE" or an empty reply yields nullopt.
std::optional<std::string> ParseGeneratedProbe(std::string_view reply);

// Deterministic single perturbation. Throws InvalidArgument if `kind` is not
// among the statement's claim kinds and NoPerturbationSite if the rule finds
// nothing to alter.
//   Factual: first lexicon entity -> same-category member chosen by seed.
//   Temporal: first year shifted by one of {-1, +1, -2, +2} (seed), else an
//     "Nth century" ordinal, else a month name.
//   Quantitative: first non-year number n -> n-1 or n+1 (seed) for integers
//     up to 10; otherwise n scaled by one of {0.5, 0.9, 1.1, 2.0} (seed) at
//     the original precision.
//   Logical: cause and effect swapped around the causal connective.
Counterfactual PerturbRuleBased(const Statement& statement, ProbeKind kind,
                                const ConfusableLexicon& lexicon,
                                std::uint64_t seed);

enum class ProbeStrategy { kRuleOnly, kModelOnly, kRuleThenModel };

std::string_view ToString(ProbeStrategy strategy);
ProbeStrategy ParseProbeStrategy(std::string_view name);

struct ProbeOptions {
  std::size_t k = 4;
  ProbeStrategy strategy = ProbeStrategy::kRuleThenModel;
  KindSet disabled_kinds;
  std::uint64_t seed = 0;
  const ConfusableLexicon* lexicon = nullptr;    // null: Default()
  const ProbeTemplateSet* templates = nullptr;   // null: Default()
};

struct ProbeSet {
  std::vector<Counterfactual> probes;
  bool exhausted = false;  // fewer than k probes could be produced
};

// Up to k distinct probes cycling over the statement's enabled claim kinds
// in enum order. Rule output comes first under kRuleThenModel; model
// generation fills the remaining slots. `service` may be null for
// kRuleOnly.
ProbeSet GenerateProbes(const Statement& statement, const ProbeOptions& options,
                        ConfidenceService* service);

}  // namespace cfprobe

#endif  // CFPROBE_PROBE_GENERATION_H_
