// Copyright 2026 The Timescope Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "test_util.h"
#include "timescope/corpus/corpus_io.h"
#include "timescope/corpus/parses.h"
#include "timescope/corpus/tokenizer.h"
#include "timescope/error.h"
#include "timescope/negation/cues.h"
#include "timescope/negation/detector.h"
#include "timescope/negation/scope.h"

namespace timescope::negation {
namespace {

using timescope::testing::Fixture;

struct Loaded {
  corpus::AnnotatedDocument doc;
  corpus::ParseBundle parses;
  std::vector<corpus::EntitySpan> spans;
};

const std::map<std::string, Loaded>& FixtureDocs() {
  static const auto* docs = [] {
    auto* out = new std::map<std::string, Loaded>;
    const auto corpus = corpus::ReadCorpus(Fixture("negation/negation.jsonl"),
                                           corpus::CorpusFormat::kJsonl);
    const auto index = corpus::ParseIndex::LoadFiles(Fixture("negation/negation.conllu"),
                                                     Fixture("negation/negation.ptb"));
    for (const auto& ad : corpus) {
      Loaded l{ad, index.ForDocument(ad.doc), {}};
      corpus::ApplyPos(l.parses, &l.doc.doc);
      for (const auto& e : ad.entities) l.spans.push_back(e.span);
      (*out)[ad.doc.id()] = std::move(l);
    }
    return out;
  }();
  return *docs;
}

DetectionResult DetectFixture(const std::string& id, const CueLexicon& lex = CueLexicon::Default()) {
  const Loaded& l = FixtureDocs().at(id);
  return Detect(l.doc.doc, l.spans, l.parses, lex);
}

std::string Words(const std::string& id, const CueAnalysis& a, const Scope& s) {
  const auto& doc = FixtureDocs().at(id).doc.doc;
  const int base = doc.sentences()[a.cue.sentence].first_token;
  std::string out;
  for (int t : s.tokens) out += (out.empty() ? "" : " ") + doc.tokens()[base + t].text;
  return out;
}

TEST(CueLexicon, DefaultInventory) {
  const auto& lex = CueLexicon::Default();
  EXPECT_EQ(lex.CountOf(CueKind::kExplicit), 18);
  EXPECT_EQ(lex.CountOf(CueKind::kImplied), 8);
  EXPECT_EQ(lex.max_length(), 3);
  CueLexicon copy = lex;
  EXPECT_THROW(copy.Add("not", CueKind::kImplied), ConfigError);
}

TEST(CueLexicon, ParseFileEntries) {
  std::istringstream in("# extra cues\nimplied slammed\nexplicit hardly\n\n");
  const CueLexicon lex = CueLexicon::Parse(in);
  EXPECT_EQ(lex.CountOf(CueKind::kImplied), 9);
  EXPECT_EQ(lex.CountOf(CueKind::kExplicit), 19);
  std::istringstream only("implied slammed\n");
  EXPECT_EQ(CueLexicon::Parse(only, false).entries().size(), 1u);
  std::istringstream bad("sometimes slammed\n");
  EXPECT_THROW(CueLexicon::Parse(bad), FormatError);
  EXPECT_THROW(CueLexicon::Load("/nonexistent/cues.txt"), ConfigError);
  EXPECT_EQ(CueLexicon::Load("").entries().size(), CueLexicon::Default().entries().size());
}

TEST(FindCues, ExceptIsExplicit) {
  const auto cues = FindCues({"I", "am", "flexible", "next", "week", "any", "day", "except",
                              "Wednesday", "."});
  ASSERT_EQ(cues.size(), 1u);
  EXPECT_EQ(cues[0].text, "except");
  EXPECT_EQ(cues[0].first, 7);
  EXPECT_EQ(cues[0].kind, CueKind::kExplicit);
}

TEST(FindCues, MultiWordImpliedCueAfterAbbreviation) {
  const auto doc = corpus::Tokenize("Dr. John out of office on Monday.");
  ASSERT_EQ(doc.sentences().size(), 1u);
  const auto cues = FindCues(doc, 0);
  ASSERT_EQ(cues.size(), 1u);
  EXPECT_EQ(cues[0].kind, CueKind::kImplied);
  EXPECT_EQ(cues[0].text, "out of office");
  EXPECT_EQ(cues[0].first, 2);
  EXPECT_EQ(cues[0].last, 4);
}

TEST(FindCues, AdjacentCuesAreSeparate) {
  const auto cues = FindCues({"not", "nothing"});
  ASSERT_EQ(cues.size(), 2u);
  EXPECT_EQ(cues[0].text, "not");
  EXPECT_EQ(cues[1].text, "nothing");
}

TEST(FindCues, CaseInsensitiveAndContractions) {
  const auto doc = corpus::Tokenize("NEVER on Monday. I can't do Tuesday.");
  EXPECT_EQ(FindCues(doc, 0).at(0).text, "NEVER");
  EXPECT_EQ(FindCues(doc, 1).at(0).text, "n't");
  EXPECT_TRUE(FindCues({"Monday", "works"}).empty());
}

TEST(Scope, ExceptAttachesToObject) {
  const auto r = DetectFixture("neg-01");
  ASSERT_EQ(r.cues.size(), 1u);
  const auto& a = r.cues[0];
  EXPECT_TRUE(a.parsed);
  EXPECT_EQ(a.governor, 6);  // "day"
  EXPECT_EQ(Words("neg-01", a, a.narrow), "Wednesday");
  EXPECT_TRUE(a.wide.tokens.empty());
}

TEST(Scope, NotFallsBackToWide) {
  const auto r = DetectFixture("neg-02");
  ASSERT_EQ(r.cues.size(), 1u);
  const auto& a = r.cues[0];
  EXPECT_EQ(a.governor, 4);  // "work"
  EXPECT_EQ(Words("neg-02", a, a.narrow), "work Watson");
  EXPECT_EQ(Words("neg-02", a, a.wide), "Next week does");
  EXPECT_FALSE(a.narrow_hit);
}

TEST(Scope, WatsonSentence) {
  const auto r = DetectFixture("neg-04");
  ASSERT_EQ(r.cues.size(), 1u);
  const auto& a = r.cues[0];
  EXPECT_EQ(Words("neg-04", a, a.narrow), "amused by Sherlock 's antics");
  EXPECT_EQ(Words("neg-04", a, a.wide), "Watson was");
  for (int t : a.narrow.tokens) EXPECT_FALSE(a.wide.Contains(t));
}

TEST(Scope, SubjectsFallInWideScope) {
  const auto r3 = DetectFixture("neg-05");
  EXPECT_EQ(Words("neg-05", r3.cues[0], r3.cues[0].narrow), "work");
  EXPECT_EQ(Words("neg-05", r3.cues[0], r3.cues[0].wide), "Before Wednesday does");
  const auto r4 = DetectFixture("neg-06");
  EXPECT_EQ(r4.cues[0].cue.text, "n't");
  EXPECT_EQ(Words("neg-06", r4.cues[0], r4.cues[0].wide), "This wo");
}

TEST(Scope, DirectFunctionsOnHandTree) {
  // "Next week does not work" with "work" as root.
  const corpus::DependencyTree dep({"Next", "week", "does", "not", "work"},
                                   {"JJ", "NN", "VBZ", "RB", "VB"}, {1, 4, 4, 4, -1},
                                   {"amod", "nsubj", "aux", "neg", "root"});
  const Cue cue{0, 3, 3, CueKind::kExplicit, "not", "RB"};
  EXPECT_EQ(CueHead(cue, dep), 3);
  EXPECT_EQ(Governor(cue, dep), 4);
  const auto tree = corpus::ConstituencyTree::Parse(
      "(S (NP (JJ Next) (NN week)) (VP (VBZ does) (RB not) (VP (VB work))))");
  const Scope narrow = NarrowScope(cue, 4, &tree, dep);
  EXPECT_EQ(narrow.tokens, (std::vector<int>{4}));
  const Scope wide = WideScope(4, dep);
  EXPECT_EQ(wide.tokens, (std::vector<int>{0, 1, 2}));
}

struct Expected {
  bool negated;
  Via via;
  std::string cue;
  std::string part;
};

void ExpectDecisions(const std::string& id, const std::vector<Expected>& want) {
  const auto r = DetectFixture(id);
  ASSERT_EQ(r.decisions.size(), want.size()) << id;
  for (size_t i = 0; i < want.size(); ++i) {
    const auto& d = r.decisions[i];
    EXPECT_EQ(d.negated, want[i].negated) << id << " #" << i;
    EXPECT_EQ(d.via, want[i].via) << id << " #" << i;
    EXPECT_EQ(d.cue ? d.cue->text : "", want[i].cue) << id << " #" << i;
    EXPECT_EQ(d.negated_part, want[i].part) << id << " #" << i;
  }
}

TEST(Detect, ExceptAndNot) {
  ExpectDecisions("neg-01", {{false, Via::kNone, "", ""},
                             {true, Via::kNarrow, "except", "Wednesday"}});
  ExpectDecisions("neg-02", {{true, Via::kWide, "not", "Next week"}});
}

TEST(Detect, WideFallback) {
  ExpectDecisions("neg-03", {{true, Via::kWide, "not", "Next week"}});
  ExpectDecisions("neg-04", {});
  ExpectDecisions("neg-05", {{true, Via::kWide, "not", "Wednesday"}});
  ExpectDecisions("neg-06", {{false, Via::kNone, "", ""}});
}

TEST(Detect, MixedCueOutputs) {
  ExpectDecisions("neg-07", {{true, Via::kNarrow, "not", "Monday"},
                               {false, Via::kNone, "", ""}});
  ExpectDecisions("neg-08", {{false, Via::kNone, "", ""}});
  ExpectDecisions("neg-09", {{false, Via::kNone, "", ""}});
  ExpectDecisions("neg-10", {{false, Via::kNone, "", ""}, {false, Via::kNone, "", ""}});
  ExpectDecisions("neg-11", {{false, Via::kNone, "", ""}});
  ExpectDecisions("neg-12", {{false, Via::kNone, "", ""}});
  ExpectDecisions("neg-13", {{false, Via::kNone, "", ""},
                               {true, Via::kNarrow, "except", "Thursday"}});
  ExpectDecisions("neg-14", {{true, Via::kWide, "not", "Next week"},
                               {true, Via::kNarrow, "except", "Friday"}});
}

TEST(Detect, ImpliedCueInsideExplicitScopeIsCancelled) {
  const auto r = DetectFixture("neg-08");
  ASSERT_EQ(r.cues.size(), 2u);
  EXPECT_EQ(r.cues[1].cue.text, "busy");
  EXPECT_TRUE(r.cues[1].cancelled);
  EXPECT_FALSE(r.decisions[0].negated);
}

TEST(Detect, PartialEntityPart) {
  const auto r = DetectFixture("neg-13");
  const auto& d = r.decisions[1];
  EXPECT_EQ(d.entity.surface, "Thursday at 10:00 am");
  EXPECT_EQ(d.part_first, d.entity.first_token);
  EXPECT_EQ(d.part_last, d.entity.first_token);
}

TEST(Detect, InvariantsOnAllFixtures) {
  for (const auto& [id, l] : FixtureDocs()) {
    const auto r = Detect(l.doc.doc, l.spans, l.parses);
    ASSERT_EQ(r.decisions.size(), l.spans.size());
    for (size_t i = 0; i < r.decisions.size(); ++i) {
      const auto& d = r.decisions[i];
      EXPECT_EQ(d.entity, l.spans[i]) << id;
      EXPECT_EQ(d.negated, d.cue.has_value()) << id;
      EXPECT_EQ(d.negated, d.via != Via::kNone) << id;
      if (d.negated) {
        EXPECT_GE(d.part_first, d.entity.first_token) << id;
        EXPECT_LE(d.part_last, d.entity.last_token) << id;
        EXPECT_LE(d.part_first, d.part_last) << id;
        EXPECT_FALSE(d.negated_part.empty()) << id;
      } else {
        EXPECT_EQ(d.part_first, -1) << id;
        EXPECT_TRUE(d.negated_part.empty()) << id;
      }
    }
    EXPECT_TRUE(r.warnings.empty()) << id;
  }
}

TEST(Detect, MissingParseFallsBackWithWarning) {
  const Loaded& l = FixtureDocs().at("neg-01");
  const auto r = Detect(l.doc.doc, l.spans, corpus::ParseBundle{});
  ASSERT_FALSE(r.warnings.empty());
  EXPECT_FALSE(r.cues[0].parsed);
  for (const auto& d : r.decisions) {
    EXPECT_TRUE(d.negated);
    EXPECT_EQ(d.via, Via::kImplied);
  }
}

TEST(Detect, SentencesWithoutCuesNeedNoParse) {
  const auto doc = corpus::Tokenize("Monday works for me.", "plain");
  const auto r = Detect(doc, {corpus::MakeSpan(doc, 0, 0)}, corpus::ParseBundle{});
  EXPECT_TRUE(r.warnings.empty());
  EXPECT_FALSE(r.decisions[0].negated);
}

TEST(Detect, CustomImpliedCue) {
  std::istringstream in("implied slammed\n");
  const CueLexicon lex = CueLexicon::Parse(in);
  const auto r = DetectFixture("neg-09", lex);
  ASSERT_EQ(r.decisions.size(), 1u);
  EXPECT_TRUE(r.decisions[0].negated);
  EXPECT_EQ(r.decisions[0].via, Via::kImplied);
  EXPECT_EQ(r.decisions[0].negated_part, "Thursday");
}

TEST(Detect, ImpliedCueNegatesWholeSentence) {
  const auto doc = corpus::Tokenize("I am on vacation Monday and Tuesday.", "v");
  const auto r = Detect(doc, {corpus::MakeSpan(doc, 4, 4), corpus::MakeSpan(doc, 6, 6)},
                        corpus::ParseBundle{});
  ASSERT_EQ(r.cues.size(), 1u);
  EXPECT_EQ(r.cues[0].cue.kind, CueKind::kImplied);
  for (const auto& d : r.decisions) {
    EXPECT_TRUE(d.negated);
    EXPECT_EQ(d.via, Via::kImplied);
  }
}

TEST(Names, ViaAndKind) {
  EXPECT_STREQ(ViaName(Via::kNarrow), "narrow");
  EXPECT_STREQ(ViaName(Via::kNone), "none");
  EXPECT_STREQ(CueKindName(CueKind::kImplied), "implied");
}

}  // namespace
}  // namespace timescope::negation
