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

#include <gtest/gtest.h>

#include <memory>
#include <set>

#include "cfprobe/confidence_backend.h"
#include "cfprobe/errors.h"
#include "cfprobe/statement.h"
#include "cfprobe/text_util.h"

namespace cfprobe {
namespace {

const ConfusableLexicon& Lex() { return ConfusableLexicon::Default(); }

Statement S(std::string_view text) { return MakeStatement(text, "t", 0); }

TEST(PerturbRuleBasedTest, SpecExamples) {
  EXPECT_EQ(PerturbRuleBased(S("Einstein developed the theory of relativity"),
                             ProbeKind::kFactual, Lex(), 0)
                .text,
            "Newton developed the theory of relativity");
  // Seed 0 selects the -1 year shift.
  EXPECT_EQ(PerturbRuleBased(S("World War II ended in 1945"), ProbeKind::kTemporal, Lex(), 0).text,
            "World War II ended in 1944");
  // Even seeds step small integers down.
  EXPECT_EQ(PerturbRuleBased(S("The human heart has four chambers"), ProbeKind::kQuantitative,
                             Lex(), 0)
                .text,
            "The human heart has three chambers");
  EXPECT_EQ(PerturbRuleBased(S("Rain causes wet streets"), ProbeKind::kLogical, Lex(), 0).text,
            "Wet streets cause rain");
}

TEST(PerturbRuleBasedTest, KeepsTerminatorAndRecordsChange) {
  const Counterfactual c =
      PerturbRuleBased(S("World War II ended in 1945."), ProbeKind::kTemporal, Lex(), 1);
  EXPECT_EQ(c.text, "World War II ended in 1946.");
  EXPECT_EQ(c.perturbation, "year: 1945→1946");
  EXPECT_EQ(c.origin, ProbeOrigin::kRuleBased);
  EXPECT_EQ(c.statement_id, "t:0");
}

TEST(PerturbRuleBasedTest, YearShiftIsNeverZero) {
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    const Counterfactual c =
        PerturbRuleBased(S("Mozart was born in 1756."), ProbeKind::kTemporal, Lex(), seed);
    EXPECT_NE(c.text, "Mozart was born in 1756.");
    const int year = std::stoi(c.text.substr(c.text.size() - 5, 4));
    EXPECT_LE(std::abs(year - 1756), 2);
  }
}

TEST(PerturbRuleBasedTest, LargeNumbersScaleAtOriginalPrecision) {
  const Statement s = S("The Nile is the longest river at 7,000 km.");
  std::set<std::string> seen;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    seen.insert(PerturbRuleBased(s, ProbeKind::kQuantitative, Lex(), seed).text);
  }
  EXPECT_EQ(seen, (std::set<std::string>{"The Nile is the longest river at 3,500 km.",
                                         "The Nile is the longest river at 6,300 km.",
                                         "The Nile is the longest river at 7,700 km.",
                                         "The Nile is the longest river at 14,000 km."}));
}

TEST(PerturbRuleBasedTest, Preconditions) {
  EXPECT_THROW(PerturbRuleBased(S("Paris is the capital of France"), ProbeKind::kTemporal,
                                Lex(), 0),
               InvalidArgument);
  EXPECT_THROW(PerturbRuleBased(S("Zorblax is a quiet town"), ProbeKind::kFactual, Lex(), 0),
               NoPerturbationSite);
}

TEST(ConfusableLexiconTest, ParsesAndMatchesWholeWords) {
  const ConfusableLexicon lex =
      ConfusableLexicon::Parse("# c\nwars\tWorld War I,World War II\nx\tAnt,Bee\n");
  ASSERT_EQ(lex.categories().size(), 2u);
  const auto m = lex.FindFirst("After World War II ended");
  ASSERT_TRUE(m);
  EXPECT_EQ(m->member, 1u);  // the longer member wins
  EXPECT_FALSE(lex.FindFirst("Antelope herds"));
  EXPECT_THROW(ConfusableLexicon::Parse("no tab here\n"), MalformedRecord);
}

TEST(RenderProbePromptTest, SubstitutesOnce) {
  ProbeTemplate t;
  t.instruction = "Rewrite: {s}";
  const std::string prompt = RenderProbePrompt(t, "X");
  EXPECT_EQ(prompt, "Rewrite: X");
  t.instruction = "{s} and {s}";
  EXPECT_THROW(RenderProbePrompt(t, "X"), InvalidArgument);
  t.instruction = "nothing";
  EXPECT_THROW(RenderProbePrompt(t, "X"), InvalidArgument);
}

TEST(RenderProbePromptTest, ConstraintsCloseThePrompt) {
  const ProbeTemplate& t = ProbeTemplateSet::Default().at(ProbeKind::kFactual);
  const std::string prompt =
      RenderProbePrompt(t, "The Nile is the longest river at 7,000 km.");
  std::string tail;
  for (const std::string& c : t.constraints) tail += "\n- " + c;
  ASSERT_GE(prompt.size(), tail.size());
  EXPECT_EQ(prompt.substr(prompt.size() - tail.size()), tail);
  EXPECT_NE(prompt.find("Statement: The Nile is the longest river at 7,000 km."),
            std::string::npos);
  EXPECT_NE(prompt.find("Examples:\n"), std::string::npos);
}

TEST(ProbeTemplateSetTest, LoadsOverrides) {
  const ProbeTemplateSet set = ProbeTemplateSet::FromJsonText(
      R"({"logical": {"instruction": "Flip {s}", "few_shots": [["a", "b"]],
          "constraints": ["One change."]}})");
  EXPECT_EQ(set.at(ProbeKind::kLogical).instruction, "Flip {s}");
  EXPECT_EQ(set.at(ProbeKind::kFactual).instruction,
            ProbeTemplateSet::Default().at(ProbeKind::kFactual).instruction);
  EXPECT_THROW(ProbeTemplateSet::FromJsonText(R"({"logical": {"instruction": "no slot",
               "few_shots": [["a", "b"]]}})"),
               InvalidArgument);
  EXPECT_THROW(ProbeTemplateSet::FromJsonText("[1"), InvalidArgument);
}

TEST(ParseGeneratedProbeTest, StripsDecorations) {
  EXPECT_EQ(ParseGeneratedProbe("\nCounterfactual: \"Newton wrote it.\"\nmore"),
            "Newton wrote it.");
  EXPECT_EQ(ParseGeneratedProbe("- Bohr wrote it."), "Bohr wrote it.");
  EXPECT_FALSE(ParseGeneratedProbe("NONE"));
  EXPECT_FALSE(ParseGeneratedProbe("  \n "));
}

TEST(GenerateProbesTest, RuleOnlyCoversClaimKinds) {
  ProbeOptions options;
  options.strategy = ProbeStrategy::kRuleOnly;
  options.seed = 3;
  const ProbeSet set = GenerateProbes(S("World War II ended in 1945."), options, nullptr);
  ASSERT_EQ(set.probes.size(), 4u);
  EXPECT_FALSE(set.exhausted);
  std::set<std::string> texts;
  std::set<ProbeKind> kinds;
  for (const Counterfactual& c : set.probes) {
    texts.insert(NormalizeText(c.text));
    kinds.insert(c.kind);
  }
  EXPECT_EQ(texts.size(), 4u);
  EXPECT_EQ(kinds, (std::set<ProbeKind>{ProbeKind::kFactual, ProbeKind::kTemporal}));
  // Kinds alternate in enum order.
  EXPECT_EQ(set.probes[0].kind, ProbeKind::kFactual);
  EXPECT_EQ(set.probes[1].kind, ProbeKind::kTemporal);
  EXPECT_EQ(set.probes[0].id, "t:0/p0");
}

TEST(GenerateProbesTest, SingleKindAndBoundary) {
  ProbeOptions options;
  options.strategy = ProbeStrategy::kRuleOnly;
  const ProbeSet set = GenerateProbes(S("Paris is the capital of France."), options, nullptr);
  for (const Counterfactual& c : set.probes) EXPECT_EQ(c.kind, ProbeKind::kFactual);
  EXPECT_LE(set.probes.size(), 4u);
  options.k = 1;
  EXPECT_EQ(GenerateProbes(S("World War II ended in 1945."), options, nullptr).probes.size(), 1u);
  options.k = 0;
  EXPECT_THROW(GenerateProbes(S("World War II ended in 1945."), options, nullptr),
               InvalidArgument);
}

TEST(GenerateProbesTest, NoSiteMeansExhausted) {
  ProbeOptions options;
  options.strategy = ProbeStrategy::kRuleOnly;
  const ProbeSet set = GenerateProbes(S("Zorblax is a quiet town."), options, nullptr);
  EXPECT_TRUE(set.probes.empty());
  EXPECT_TRUE(set.exhausted);
}

TEST(GenerateProbesTest, DisabledKindsAreSkipped) {
  ProbeOptions options;
  options.strategy = ProbeStrategy::kRuleOnly;
  options.disabled_kinds.Insert(ProbeKind::kFactual);
  const ProbeSet set = GenerateProbes(S("World War II ended in 1945."), options, nullptr);
  ASSERT_FALSE(set.probes.empty());
  for (const Counterfactual& c : set.probes) EXPECT_EQ(c.kind, ProbeKind::kTemporal);
}

TEST(GenerateProbesTest, ModelFillsRemainingSlots) {
  MockKnowledgeBase kb;
  kb.AddGenerations("Zorblax is a quiet town.",
                    {"Zorblax is a noisy town.", "Zorblax is a quiet city."});
  ConfidenceService service(std::make_shared<MockBackend>(kb, 1), BackendConfig{});
  ProbeOptions options;
  options.k = 2;
  const ProbeSet set = GenerateProbes(S("Zorblax is a quiet town."), options, &service);
  ASSERT_EQ(set.probes.size(), 2u);
  for (const Counterfactual& c : set.probes) {
    EXPECT_EQ(c.origin, ProbeOrigin::kModelGenerated);
    EXPECT_EQ(c.kind, ProbeKind::kFactual);
  }
  EXPECT_NE(set.probes[0].text, set.probes[1].text);
  EXPECT_THROW(GenerateProbes(S("Zorblax is a quiet town."), options, nullptr),
               InvalidArgument);
}

TEST(ProbeStrategyTest, NamesRoundTrip) {
  for (ProbeStrategy s :
       {ProbeStrategy::kRuleOnly, ProbeStrategy::kModelOnly, ProbeStrategy::kRuleThenModel}) {
    EXPECT_EQ(ParseProbeStrategy(ToString(s)), s);
  }
  EXPECT_THROW(ParseProbeStrategy("random"), InvalidArgument);
}

}  // namespace
}  // namespace cfprobe
