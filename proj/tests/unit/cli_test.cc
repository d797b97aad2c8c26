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

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "cli/commands.h"
#include "cli/config.h"
#include "json.hpp"
#include "test_util.h"
#include "timescope/corpus/corpus_io.h"
#include "timescope/corpus/synthetic.h"
#include "timescope/error.h"
#include "timescope/eval/compare.h"
#include "timescope/ruletag/extractor.h"
#include "timescope/scorer/model.h"

namespace timescope::cli {
namespace {

using nlohmann::json;
using timescope::testing::Fixture;
using timescope::testing::ReadFile;
using timescope::testing::TempDir;
using timescope::testing::WriteFile;

struct Outcome {
  int code = 0;
  std::string out;
  std::string log;
};

Outcome Exec(const std::string& command, const PipelineConfig& cfg) {
  std::ostringstream out, log;
  const int code = RunCommand(command, cfg, out, log);
  return {code, out.str(), log.str()};
}

std::vector<json> Lines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(json::parse(line));
  return out;
}

int Shell(const std::string& args) {
  const std::string cmd = std::string(TIMESCOPE_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

PipelineConfig MeetingConfig() {
  PipelineConfig cfg;
  cfg.corpus = Fixture("meeting/meeting.jsonl");
  cfg.dependency_parses = Fixture("meeting/meeting.conllu");
  cfg.constituency_parses = Fixture("meeting/meeting.ptb");
  return cfg;
}

PipelineConfig NegationConfig() {
  PipelineConfig cfg;
  cfg.corpus = Fixture("negation/negation.jsonl");
  cfg.dependency_parses = Fixture("negation/negation.conllu");
  cfg.constituency_parses = Fixture("negation/negation.ptb");
  return cfg;
}

void SmallHyper(PipelineConfig* cfg) {
  cfg->hyper.word_emb_dim = 8;
  cfg->hyper.rnn_hidden = 8;
  cfg->hyper.char_emb_dim = 4;
  cfg->hyper.char_filters = 8;
  cfg->hyper.epochs = 2;
  cfg->hyper.learning_rate = 3e-3;
}

TEST(Config, ParsesKeysAndHyper) {
  std::istringstream in(
      "# run\ncorpus = a.jsonl\nseed=5\nhyper.gamma = 0.5\nsynthetic_docs=10 # trailing\n");
  const PipelineConfig cfg = ParseConfig(in);
  EXPECT_EQ(cfg.corpus, "a.jsonl");
  EXPECT_EQ(cfg.seed, 5u);
  EXPECT_EQ(cfg.hyper.gamma, 0.5);
  EXPECT_EQ(cfg.synthetic_docs, 10);
}

TEST(Config, RejectsBadInput) {
  PipelineConfig cfg;
  EXPECT_THROW(SetConfigValue(&cfg, "colour", "red"), ConfigError);
  EXPECT_THROW(SetConfigValue(&cfg, "seed", "x"), ConfigError);
  EXPECT_THROW(SetConfigValue(&cfg, "val_fraction", "1.5"), ConfigError);
  EXPECT_THROW(SetConfigValue(&cfg, "hyper.depth", "3"), ConfigError);
  std::istringstream in("corpus\n");
  EXPECT_THROW(ParseConfig(in), ConfigError);
  EXPECT_THROW(LoadConfig("/nonexistent/run.cfg"), ConfigError);
}

TEST(Extract, MeetingEmailHasFourCandidates) {
  const Outcome r = Exec("extract", MeetingConfig());
  ASSERT_EQ(r.code, kExitOk) << r.log;
  const auto lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 4u);
  std::vector<std::string> texts;
  for (const auto& l : lines) texts.push_back(l["text"]);
  EXPECT_EQ(texts, (std::vector<std::string>{"May", "today", "next week", "Wednesday"}));
  EXPECT_EQ(lines[2]["entity"], json::array({60, 69}));
  EXPECT_EQ(lines[0]["doc"], "meeting");
}

TEST(Extract, EmptyCorpusGivesEmptyOutput) {
  TempDir dir("cli-empty");
  WriteFile(dir.File("empty.jsonl"), "");
  PipelineConfig cfg;
  cfg.corpus = dir.File("empty.jsonl");
  const Outcome r = Exec("extract", cfg);
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "");
}

TEST(Extract, CustomLexicon) {
  TempDir dir("cli-lex");
  WriteFile(dir.File("c.jsonl"),
            "{\"id\":\"x\",\"text\":\"Tea at teatime?\",\"entities\":[]}\n");
  PipelineConfig cfg;
  cfg.corpus = dir.File("c.jsonl");
  EXPECT_EQ(Lines(Exec("extract", cfg).out).size(), 0u);
  cfg.lexicon = Fixture("ruletag/extra_lexicon.txt");
  const auto lines = Lines(Exec("extract", cfg).out);
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0]["text"], "teatime");
}

TEST(ExitCodes, MissingInputsAreConfigErrors) {
  PipelineConfig cfg = MeetingConfig();
  cfg.lexicon = "/nonexistent/lexicon.txt";
  EXPECT_EQ(Exec("extract", cfg).code, kExitConfig);
  PipelineConfig none;
  EXPECT_EQ(Exec("extract", none).code, kExitConfig);
  EXPECT_EQ(Exec("pipeline", MeetingConfig()).code, kExitConfig);  // no model
  cfg = MeetingConfig();
  cfg.format = "xml";
  EXPECT_EQ(Exec("extract", cfg).code, kExitConfig);
}

TEST(ExitCodes, Binary) {
  EXPECT_EQ(Shell("--help"), 0);
  EXPECT_EQ(Shell(""), kExitConfig);
  EXPECT_EQ(Shell("extract --bogus"), kExitConfig);
  EXPECT_EQ(Shell("extract --corpus " + Fixture("meeting/meeting.jsonl")), kExitOk);
  EXPECT_EQ(Shell("extract --corpus /nonexistent.jsonl"), kExitConfig);
  EXPECT_EQ(Shell("extract --config /nonexistent.cfg"), kExitConfig);
}

TEST(Negate, GoldEntitiesOfMeetingEmail) {
  const Outcome r = Exec("negate", MeetingConfig());
  ASSERT_EQ(r.code, kExitOk) << r.log;
  const auto lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0]["text"], "next week");
  EXPECT_EQ(lines[0]["negated"], false);
  EXPECT_EQ(lines[1]["text"], "Wednesday");
  EXPECT_EQ(lines[1]["negated"], true);
  EXPECT_EQ(lines[1]["via"], "narrow");
  EXPECT_EQ(lines[1]["cue"], "except");
  EXPECT_TRUE(r.log.empty()) << r.log;
}

TEST(Negate, MissingParseWarnsAndFallsBack) {
  PipelineConfig cfg = MeetingConfig();
  cfg.dependency_parses.clear();
  cfg.constituency_parses.clear();
  const Outcome r = Exec("negate", cfg);
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NE(r.log.find("warning"), std::string::npos);
  for (const auto& l : Lines(r.out)) {
    EXPECT_EQ(l["negated"], true);
    EXPECT_EQ(l["via"], "implied");
  }
}

TEST(Negate, BadSidecarIsPartialFailure) {
  TempDir dir("cli-partial");
  std::string dep = ReadFile(Fixture("negation/negation.conllu"));
  const auto at = dep.find("\n1\t", dep.find("# doc_id = neg-02"));
  ASSERT_NE(at, std::string::npos);
  dep.replace(at + 3, 4, "Nope");  // form no longer matches the token
  WriteFile(dir.File("bad.conllu"), dep);
  PipelineConfig cfg = NegationConfig();
  cfg.dependency_parses = dir.File("bad.conllu");
  const Outcome r = Exec("negate", cfg);
  EXPECT_EQ(r.code, kExitPartial);
  EXPECT_NE(r.log.find("neg-02"), std::string::npos);
  EXPECT_EQ(Exec("negate", NegationConfig()).code, kExitOk);
}

TEST(Eval, PerfectPredictionsScoreOne) {
  TempDir dir("cli-eval");
  PipelineConfig cfg = NegationConfig();
  cfg.out = dir.File("pred.jsonl");
  ASSERT_EQ(Exec("negate", cfg).code, kExitOk);
  // Gold negation flags replace the system's.
  const auto gold = corpus::ReadCorpus(cfg.corpus, corpus::CorpusFormat::kJsonl);
  std::string perfect;
  for (const auto& ad : gold) {
    for (const auto& e : ad.entities) {
      if (!e.relevant) continue;
      json rec;
      rec["doc"] = ad.doc.id();
      const int s = ad.doc.tokens()[e.span.first_token].char_start;
      const int t = ad.doc.tokens()[e.span.last_token].char_end;
      rec["entity"] = json::array({s, t});
      rec["negated"] = e.negated;
      perfect += rec.dump() + "\n";
    }
  }
  WriteFile(dir.File("perfect.jsonl"), perfect);
  PipelineConfig ev;
  ev.corpus = cfg.corpus;
  ev.predictions = dir.File("perfect.jsonl");
  const Outcome r = Exec("eval", ev);
  ASSERT_EQ(r.code, kExitOk) << r.log;
  std::istringstream kv(r.out);
  const auto m = eval::ParseKeyValues(kv);
  EXPECT_EQ(m.at("detection.strict.f1"), 1.0);
  EXPECT_EQ(m.at("negation.f1"), 1.0);

  ev.predictions = cfg.out;
  std::istringstream sys_kv(Exec("eval", ev).out);
  const auto s = eval::ParseKeyValues(sys_kv);
  EXPECT_EQ(s.at("detection.strict.f1"), 1.0);
  EXPECT_LT(s.at("negation.f1"), 1.0);
}

class TrainedModel : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new TempDir("cli-model");
    PipelineConfig cfg;
    cfg.synthetic_docs = 120;
    cfg.seed = 4;
    SmallHyper(&cfg);
    cfg.model = dir_->File("model.bin");
    std::ostringstream out, log;
    code_ = RunCommand("train", cfg, out, log);
    train_out_ = out.str();
  }
  static void TearDownTestSuite() { delete dir_; }
  static TempDir* dir_;
  static int code_;
  static std::string train_out_;
};
TempDir* TrainedModel::dir_ = nullptr;
int TrainedModel::code_ = 0;
std::string TrainedModel::train_out_;

TEST_F(TrainedModel, TrainWritesContainerAndLog) {
  ASSERT_EQ(code_, kExitOk);
  EXPECT_NE(train_out_.find("epoch 1 loss"), std::string::npos);
  EXPECT_NE(train_out_.find("best_epoch"), std::string::npos);
  EXPECT_EQ(ReadFile(dir_->File("model.bin")).substr(0, 7), "TSMODEL");
}

TEST_F(TrainedModel, SameSeedSameBytes) {
  PipelineConfig cfg;
  cfg.synthetic_docs = 120;
  cfg.seed = 4;
  SmallHyper(&cfg);
  cfg.model = dir_->File("again.bin");
  ASSERT_EQ(Exec("train", cfg).code, kExitOk);
  EXPECT_EQ(ReadFile(dir_->File("again.bin")), ReadFile(dir_->File("model.bin")));
}

TEST_F(TrainedModel, PipelineMatchesModelAndNegation) {
  PipelineConfig cfg = MeetingConfig();
  cfg.model = dir_->File("model.bin");
  const Outcome r = Exec("pipeline", cfg);
  ASSERT_EQ(r.code, kExitOk) << r.log;
  const auto lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 1u);
  const auto model = scorer::RelevanceModel::Load(cfg.model);
  const auto ad = corpus::ReadCorpus(cfg.corpus, corpus::CorpusFormat::kJsonl)[0];
  const auto scored = model.Predict(ad.doc, ruletag::ExtractCandidates(ad.doc).entities);
  size_t k = 0;
  for (const auto& s : scored) {
    if (!s.relevant) continue;
    ASSERT_LT(k, lines[0]["entities"].size());
    const auto& e = lines[0]["entities"][k++];
    EXPECT_EQ(e["text"], s.span.surface);
    EXPECT_NEAR(e["probability"].get<double>(), s.probability, 1e-12);
    EXPECT_GT(s.probability, model.threshold());
    if (s.span.surface == "Wednesday") {
      EXPECT_EQ(e["negated"], true);
      EXPECT_EQ(e["via"], "narrow");
    }
    if (s.span.surface == "next week") {
      EXPECT_EQ(e["negated"], false);
    }
  }
  EXPECT_EQ(k, lines[0]["entities"].size());
  EXPECT_GE(k, 2u);
  EXPECT_EQ(Exec("pipeline", cfg).out, r.out);
}

TEST_F(TrainedModel, EvalWritesHistogram) {
  TempDir dir("cli-hist");
  PipelineConfig cfg = MeetingConfig();
  cfg.model = dir_->File("model.bin");
  cfg.out = dir.File("pred.jsonl");
  ASSERT_EQ(Exec("pipeline", cfg).code, kExitOk);
  PipelineConfig ev;
  ev.corpus = cfg.corpus;
  ev.predictions = cfg.out;
  ev.model = cfg.model;
  ev.histogram = dir.File("hist.txt");
  const Outcome r = Exec("eval", ev);
  ASSERT_EQ(r.code, kExitOk) << r.log;
  const auto hist = ReadFile(ev.histogram);
  EXPECT_EQ(std::count(hist.begin(), hist.end(), '\n'), 10);
  EXPECT_EQ(hist.rfind("0.0 0.1 ", 0), 0u);
  std::istringstream kv(r.out);
  const auto m = eval::ParseKeyValues(kv);
  EXPECT_EQ(m.at("localization.count"), 2.0);
}

TEST(Train, DivergenceIsNumericExit) {
  PipelineConfig cfg;
  cfg.synthetic_docs = 20;
  SmallHyper(&cfg);
  cfg.hyper.learning_rate = 1e38;
  cfg.hyper.grad_clip = 0;
  TempDir dir("cli-diverge");
  cfg.model = dir.File("m.bin");
  const Outcome r = Exec("train", cfg);
  EXPECT_EQ(r.code, kExitNumeric) << r.log;
}

TEST(Generate, WritesCorpusAndSidecars) {
  TempDir dir("cli-gen");
  PipelineConfig cfg;
  cfg.synthetic_docs = 30;
  cfg.seed = 9;
  cfg.out = dir.File("syn.jsonl");
  ASSERT_EQ(Exec("generate", cfg).code, kExitOk);
  const auto c = corpus::ReadCorpus(cfg.out, corpus::CorpusFormat::kJsonl);
  EXPECT_EQ(c.size(), 30u);
  EXPECT_EQ(c, corpus::GenerateSynthetic(9, 30).corpus);
  EXPECT_FALSE(ReadFile(cfg.out + ".conllu").empty());
  EXPECT_FALSE(ReadFile(cfg.out + ".ptb").empty());
  const std::string first = ReadFile(cfg.out);
  ASSERT_EQ(Exec("generate", cfg).code, kExitOk);
  EXPECT_EQ(ReadFile(cfg.out), first);

  PipelineConfig neg;
  neg.corpus = cfg.out;
  neg.dependency_parses = cfg.out + ".conllu";
  neg.constituency_parses = cfg.out + ".ptb";
  const Outcome r = Exec("negate", neg);
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.log.empty()) << r.log;

  PipelineConfig missing;
  missing.out = dir.File("x.jsonl");
  EXPECT_EQ(Exec("generate", missing).code, kExitConfig);
}

TEST(Determinism, RepeatedRunsAreIdentical) {
  for (const char* command : {"extract", "negate"}) {
    EXPECT_EQ(Exec(command, NegationConfig()).out, Exec(command, NegationConfig()).out)
        << command;
  }
}

}  // namespace
}  // namespace timescope::cli
