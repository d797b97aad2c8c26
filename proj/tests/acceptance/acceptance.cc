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

// Acceptance checks, one PASS/FAIL line per criterion.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "timescope/corpus/corpus_io.h"
#include "timescope/corpus/parses.h"
#include "timescope/corpus/synthetic.h"
#include "timescope/corpus/tokenizer.h"
#include "timescope/eval/localization.h"
#include "timescope/eval/metrics.h"
#include "timescope/negation/detector.h"
#include "timescope/nn/grad_check.h"
#include "timescope/nn/model_params.h"
#include "timescope/rng.h"
#include "timescope/ruletag/extractor.h"
#include "timescope/scorer/crf.h"
#include "timescope/scorer/network.h"
#include "timescope/scorer/threshold.h"
#include "timescope/scorer/trainer.h"

namespace ts = timescope;
using ts::nn::ParamSet;
using ts::nn::Tensor;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

double Seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string Fixture(const std::string& rel) {
  return std::string(TIMESCOPE_FIXTURE_DIR) + "/" + rel;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Tensor<double> RandomTensor(std::vector<int> shape, ts::Rng* rng, double scale) {
  Tensor<double> t(std::move(shape));
  for (size_t i = 0; i < t.size(); ++i) t[i] = rng->Uniform(-scale, scale);
  return t;
}

// 1 ------------------------------------------------------------------------

Verdict GradientCorrectness() {
  const auto t0 = std::chrono::steady_clock::now();
  ts::corpus::AnnotatedDocument ad;
  ad.doc = ts::corpus::Tokenize("See you Friday or tomorrow .", "toy");
  ad.entities = {{ts::corpus::MakeSpan(ad.doc, 2, 2, "gold"), true, false},
                 {ts::corpus::MakeSpan(ad.doc, 4, 4, "gold"), false, false}};
  ts::nn::Hyper h;
  h.word_emb_dim = 8;
  h.rnn_hidden = 4;
  h.char_emb_dim = 4;
  h.char_filters = 8;
  h.dropout = 0;
  const auto vocab = ts::scorer::Vocab::Build({ad}, 1);
  const auto ex = ts::scorer::MakeExample(
      ad, ts::ruletag::ExtractCandidates(ad.doc).entities, vocab);
  if (ex.ids.size() != 6 || ex.candidates.size() != 2) return {false, "toy email setup"};
  ts::Rng rng(21);
  auto params = ts::nn::ModelParamShapes<double>(h, vocab.num_words(), vocab.num_chars());
  for (size_t i = 0; i < params.size(); ++i) {
    for (auto& v : params.tensor(i).values()) v = rng.Uniform(-0.5, 0.5);
  }
  const ts::nn::LossFn loss = [&](const ParamSet<double>& q, ParamSet<double>* g) {
    return ts::scorer::JointLoss<double>(q, h, ex, h.gamma, g).total;
  };
  const auto res = ts::nn::GradCheck(loss, params);
  const double secs = Seconds(t0);
  return {res.max_rel_error < 1e-4 && secs < 60,
          Fmt("max rel error %.3g over %zu coordinates, %.2fs", res.max_rel_error,
              res.coordinates, secs)};
}

// 2 ------------------------------------------------------------------------

Verdict CrfOracle() {
  ts::Rng rng(22);
  double worst = 0;
  for (int n = 1; n <= 8; ++n) {
    for (int draw = 0; draw < 20; ++draw) {
      const auto e = RandomTensor({n, 2}, &rng, 3.0);
      const auto tr = RandomTensor({2, 2}, &rng, 3.0);
      double z = 0;
      for (int mask = 0; mask < (1 << n); ++mask) {
        double s = 0;
        for (int i = 0; i < n; ++i) {
          const int y = (mask >> i) & 1;
          s += e.at(i, y);
          if (i > 0) s += tr.at(y, (mask >> (i - 1)) & 1);
        }
        z += std::exp(s);
      }
      worst = std::max(worst, std::abs(ts::scorer::CrfLogPartition(e, tr) - std::log(z)));
    }
  }
  return {worst < 1e-6, Fmt("max |delta log Z| %.3g over 160 draws", worst)};
}

// 3 ------------------------------------------------------------------------

Verdict AttentionProperties() {
  ts::Rng rng(23);
  int bad = 0;
  double worst_sum = 0;
  for (int inst = 0; inst < 100; ++inst) {
    const int n = 1 + inst % 12, de = 2 + inst % 5, dw = 2 + inst % 4;
    ParamSet<double> p;
    p.Add("attn_A", {de, dw}) = RandomTensor({de, dw}, &rng, 1.5);
    p.Add("attn_b", {de}) = RandomTensor({de}, &rng, 0.5);
    p.Add("attn_B", {de}) = RandomTensor({de}, &rng, 3.0);
    p.Add("attn_d", {1}) = RandomTensor({1}, &rng, 0.5);
    const auto states = RandomTensor({n, dw}, &rng, 2.0);
    const auto u = RandomTensor({de}, &rng, 1.0);
    const auto res = ts::scorer::Attend<double>(p, u.values(), states);
    double sum = 0;
    for (double a : res.alpha) {
      if (a < 0) ++bad;
      sum += a;
    }
    worst_sum = std::max(worst_sum, std::abs(sum - 1));
    for (int m = 0; m < dw; ++m) {
      double lo = states.at(0, m), hi = lo;
      for (int j = 1; j < n; ++j) {
        lo = std::min(lo, states.at(j, m));
        hi = std::max(hi, states.at(j, m));
      }
      if (res.context[m] < lo - 1e-12 || res.context[m] > hi + 1e-12) ++bad;
    }
  }
  return {bad == 0 && worst_sum < 1e-6,
          Fmt("%d violations, max |sum alpha - 1| %.3g", bad, worst_sum)};
}

// 4 ------------------------------------------------------------------------

Verdict ThresholdOracle() {
  ts::Rng rng(24);
  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 30;
    std::vector<double> s(n);
    std::vector<int> g(n);
    for (int i = 0; i < n; ++i) {
      s[i] = trial % 2 ? std::round(rng.Uniform(0, 1) * 10) / 10 : rng.Uniform(0, 1);
      g[i] = rng.Uniform(0, 1) < 0.4;
    }
    g[0] = 1;
    g[1] = 0;
    double best = -1;
    for (double t : std::set<double>(s.begin(), s.end())) {
      int tp = 0, fp = 0, fn = 0;
      for (int i = 0; i < n; ++i) {
        const bool pred = s[i] > t;
        tp += pred && g[i];
        fp += pred && !g[i];
        fn += !pred && g[i];
      }
      const double f1 = tp == 0 ? 0.0 : 2.0 * tp / (2.0 * tp + fp + fn);
      best = std::max(best, f1);
    }
    const auto c = ts::scorer::SelectThreshold(s, g);
    if (std::abs(c.f1 - best) > 1e-12 ||
        std::abs(ts::scorer::F1AtThreshold(s, g, c.threshold) - best) > 1e-12) {
      ++mismatches;
    }
  }
  return {mismatches == 0, Fmt("%d of 200 sets differ from exhaustive search", mismatches)};
}

// Shared synthetic split ----------------------------------------------------

struct Split {
  ts::corpus::Corpus train, val, test;
};

const Split& SyntheticSplit() {
  static const Split split = [] {
    const auto all = ts::corpus::GenerateSynthetic(7, 1000).corpus;
    return Split{{all.begin(), all.begin() + 700},
                 {all.begin() + 700, all.begin() + 850},
                 {all.begin() + 850, all.end()}};
  }();
  return split;
}

ts::nn::Hyper DeskHyper() {
  ts::nn::Hyper h;
  h.word_emb_dim = 16;
  h.rnn_hidden = 16;
  h.char_emb_dim = 8;
  h.char_filters = 16;
  return h;
}

bool GoldRelevant(const ts::corpus::AnnotatedDocument& ad, const ts::corpus::EntitySpan& s) {
  for (const auto& e : ad.entities) {
    if (e.relevant && e.span.SameRange(s)) return true;
  }
  return false;
}

// 5 ------------------------------------------------------------------------

Verdict PrecisionGain() {
  const auto t0 = std::chrono::steady_clock::now();
  const Split& sp = SyntheticSplit();
  ts::nn::Hyper h = DeskHyper();
  h.epochs = 15;
  h.patience = 5;
  const auto res = ts::scorer::Train(sp.train, sp.val, h);
  long cand = 0, cand_rel = 0, tp = 0, fp = 0, gold = 0;
  for (const auto& ad : sp.test) {
    for (const auto& e : ad.entities) gold += e.relevant;
    const auto c = ts::ruletag::ExtractCandidates(ad.doc).entities;
    for (const auto& s : res.model.Predict(ad.doc, c)) {
      const bool g = GoldRelevant(ad, s.span);
      ++cand;
      cand_rel += g;
      if (s.relevant) (g ? tp : fp) += 1;
    }
  }
  const double rule_p = cand ? static_cast<double>(cand_rel) / cand : 0;
  const double p = tp + fp ? static_cast<double>(tp) / (tp + fp) : 0;
  const double r = gold ? static_cast<double>(tp) / gold : 0;
  const double secs = Seconds(t0);
  return {rule_p <= 0.6 && p >= 0.85 && r >= 0.9 && p - rule_p >= 0.25 && secs < 1800,
          Fmt("rule precision %.3f, scorer precision %.3f recall %.3f (threshold %.3f, "
              "best epoch %d), %.0fs",
              rule_p, p, r, res.model.threshold(), res.best_epoch, secs)};
}

// 6 and 7 --------------------------------------------------------------------

struct NegationFixtures {
  ts::corpus::Corpus docs;
  std::map<std::string, ts::negation::DetectionResult> results;
};

const NegationFixtures& Negations() {
  static const NegationFixtures fx = [] {
    NegationFixtures out;
    out.docs = ts::corpus::ReadCorpus(Fixture("negation/negation.jsonl"),
                                      ts::corpus::CorpusFormat::kJsonl);
    const auto index = ts::corpus::ParseIndex::LoadFiles(
        Fixture("negation/negation.conllu"), Fixture("negation/negation.ptb"));
    for (auto& ad : out.docs) {
      const auto bundle = index.ForDocument(ad.doc);
      ts::corpus::ApplyPos(bundle, &ad.doc);
      std::vector<ts::corpus::EntitySpan> relevant;
      for (const auto& e : ad.entities) {
        if (e.relevant) relevant.push_back(e.span);
      }
      out.results[ad.doc.id()] = ts::negation::Detect(ad.doc, relevant, bundle);
    }
    return out;
  }();
  return fx;
}

std::string ScopeWords(const ts::corpus::Document& doc, const ts::negation::CueAnalysis& a,
                       const ts::negation::Scope& s) {
  const int base = doc.sentences()[a.cue.sentence].first_token;
  std::string out;
  for (int t : s.tokens) out += (out.empty() ? "" : " ") + doc.tokens()[base + t].text;
  return out;
}

Verdict NegationFixtureOutputs() {
  // doc -> per entity "negated/via/cue/part"; per cue "cue|narrow|wide".
  const std::map<std::string, std::vector<std::string>> decisions = {
      {"neg-01", {"no", "yes/narrow/except/Wednesday"}},
      {"neg-02", {"yes/wide/not/Next week"}},
      {"neg-03", {"yes/wide/not/Next week"}},
      {"neg-04", {}},
      {"neg-05", {"yes/wide/not/Wednesday"}},
      {"neg-06", {"no"}},
      {"neg-07", {"yes/narrow/not/Monday", "no"}},
      {"neg-08", {"no"}},
      {"neg-09", {"no"}},
      {"neg-10", {"no", "no"}},
      {"neg-11", {"no"}},
      {"neg-12", {"no"}},
      {"neg-13", {"no", "yes/narrow/except/Thursday"}},
      {"neg-14", {"yes/wide/not/Next week", "yes/narrow/except/Friday"}},
  };
  const std::map<std::string, std::vector<std::string>> scopes = {
      {"neg-01", {"except|Wednesday|"}},
      {"neg-02", {"not|work Watson|Next week does"}},
      {"neg-03", {"not|work Mycroft|Next week does"}},
      {"neg-04", {"not|amused by Sherlock 's antics|Watson was"}},
      {"neg-05", {"not|work|Before Wednesday does"}},
      {"neg-06", {"n't|work|This wo"}},
  };
  const auto& fx = Negations();
  int checked = 0;
  std::vector<std::string> wrong;
  for (const auto& ad : fx.docs) {
    const auto& r = fx.results.at(ad.doc.id());
    std::vector<std::string> got;
    for (const auto& d : r.decisions) {
      got.push_back(!d.negated ? "no"
                               : "yes/" + std::string(ts::negation::ViaName(d.via)) + "/" +
                                     d.cue->text + "/" + d.negated_part);
    }
    if (got != decisions.at(ad.doc.id())) wrong.push_back(ad.doc.id());
    checked += static_cast<int>(got.size());
    if (auto it = scopes.find(ad.doc.id()); it != scopes.end()) {
      std::vector<std::string> cues;
      for (const auto& a : r.cues) {
        cues.push_back(a.cue.text + "|" + ScopeWords(ad.doc, a, a.narrow) + "|" +
                       ScopeWords(ad.doc, a, a.wide));
      }
      if (cues != it->second) wrong.push_back(ad.doc.id() + " scopes");
      checked += static_cast<int>(cues.size());
    }
  }
  std::string detail = Fmt("%d decisions and scopes checked", checked);
  for (const auto& w : wrong) detail += ", mismatch " + w;
  return {wrong.empty(), detail};
}

Verdict NegationAggregate() {
  const auto& fx = Negations();
  std::set<ts::eval::EntityKey> universe, gold, pred;
  for (const auto& ad : fx.docs) {
    const std::string& id = ad.doc.id();
    if (id < "neg-07") continue;  // the eight mixed-cue emails
    for (const auto& e : ad.entities) {
      if (!e.relevant) continue;
      const ts::eval::EntityKey k{id, e.span.first_token, e.span.last_token};
      universe.insert(k);
      if (e.negated) gold.insert(k);
    }
    for (const auto& d : fx.results.at(id).decisions) {
      if (!d.negated) continue;
      const ts::eval::EntityKey k{id, d.part_first, d.part_last};
      universe.insert(k);
      pred.insert(k);
    }
  }
  const auto prf = ts::eval::NegationMetrics(universe, gold, pred);
  return {prf.tp == 2 && prf.fp == 2 && prf.fn == 5,
          Fmt("tp=%ld fp=%ld fn=%ld (expected 2/2/5), f1 %.3f", prf.tp, prf.fp, prf.fn,
              prf.f1)};
}

// 8 ------------------------------------------------------------------------

double MeanOverlap(const ts::scorer::RelevanceModel& model, const ts::corpus::Corpus& docs) {
  double sum = 0;
  int n = 0;
  for (const auto& ad : docs) {
    const auto c = ts::ruletag::ExtractCandidates(ad.doc).entities;
    for (const auto& s : model.Predict(ad.doc, c)) {
      if (!GoldRelevant(ad, s.span)) continue;
      const auto o = ts::eval::LocalizationOverlap(s.alpha, s.span);
      if (o.degenerate) continue;
      sum += o.value;
      ++n;
    }
  }
  return n ? sum / n : 0.0;
}

Verdict AblationDirection() {
  const auto t0 = std::chrono::steady_clock::now();
  const Split& sp = SyntheticSplit();
  double mean[2] = {0, 0};
  const double gammas[2] = {0.99, 1.0};
  for (int gi = 0; gi < 2; ++gi) {
    for (uint64_t seed = 1; seed <= 3; ++seed) {
      ts::nn::Hyper h = DeskHyper();
      h.epochs = 8;
      h.patience = 3;
      h.gamma = gammas[gi];
      h.seed = seed;
      mean[gi] += MeanOverlap(ts::scorer::Train(sp.train, sp.val, h).model, sp.test) / 3;
    }
  }
  return {mean[0] >= mean[1],
          Fmt("mean overlap %.4f with tagging loss, %.4f without, %.0fs", mean[0], mean[1],
              Seconds(t0))};
}

// 9 ------------------------------------------------------------------------

ts::corpus::EntitySpan S(int a, int b) { return {a, b, {}, {}}; }

Verdict MetricMicroTests() {
  struct Case {
    std::vector<ts::corpus::EntitySpan> gold, pred;
    long s[3], r[3];  // strict and relaxed tp fp fn
  };
  const std::vector<Case> cases = {
      {{S(1, 2), S(5, 5)}, {S(1, 2), S(5, 5)}, {2, 0, 0}, {2, 0, 0}},
      {{S(1, 3)}, {S(2, 4)}, {0, 1, 1}, {1, 0, 0}},
      {{S(0, 0), S(4, 5)}, {S(4, 5), S(8, 9)}, {1, 1, 1}, {1, 1, 1}},
      {{S(1, 1), S(3, 3)}, {S(1, 3)}, {0, 1, 2}, {2, 0, 0}},
      {{S(0, 1)}, {}, {0, 0, 1}, {0, 0, 1}},
  };
  int bad = 0;
  for (const auto& c : cases) {
    const auto m = ts::eval::DetectionMetrics(c.gold, c.pred);
    const long got[6] = {m.strict.tp,  m.strict.fp,  m.strict.fn,
                         m.relaxed.tp, m.relaxed.fp, m.relaxed.fn};
    const long want[6] = {c.s[0], c.s[1], c.s[2], c.r[0], c.r[1], c.r[2]};
    for (int i = 0; i < 6; ++i) bad += got[i] != want[i];
  }
  ts::Rng rng(29);
  int order = 0;
  auto random_spans = [&] {
    std::vector<ts::corpus::EntitySpan> out;
    int pos = static_cast<int>(rng.Uniform(0, 3));
    while (pos < 30) {
      const int len = 1 + static_cast<int>(rng.Uniform(0, 3));
      if (rng.Uniform(0, 1) < 0.5) out.push_back(S(pos, pos + len - 1));
      pos += len + static_cast<int>(rng.Uniform(0, 3));
    }
    return out;
  };
  for (int i = 0; i < 1000; ++i) {
    const auto m = ts::eval::DetectionMetrics(random_spans(), random_spans());
    order += m.strict.tp > m.relaxed.tp;
  }
  return {bad == 0 && order == 0,
          Fmt("%d count mismatches in 5 sets, %d of 1000 random cases with strict > relaxed",
              bad, order)};
}

// 10 -----------------------------------------------------------------------

int Shell(const std::string& args) {
  const std::string cmd = std::string(TIMESCOPE_BINARY) + " " + args;
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Verdict CliDeterminism() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() /
                        ("timescope-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(root);
  std::vector<std::string> differ, failed;
  for (const char* run : {"a", "b"}) fs::create_directories(root / run);
  const std::string neg = "--corpus " + Fixture("negation/negation.jsonl") + " --dep " +
                          Fixture("negation/negation.conllu") + " --const " +
                          Fixture("negation/negation.ptb");
  const std::string meeting = "--corpus " + Fixture("meeting/meeting.jsonl") + " --dep " +
                              Fixture("meeting/meeting.conllu") + " --const " +
                              Fixture("meeting/meeting.ptb");
  {
    std::ofstream cfg(root / "train.cfg");
    cfg << "synthetic_docs = 80\nhyper.word_emb_dim = 8\nhyper.rnn_hidden = 8\n"
           "hyper.char_emb_dim = 4\nhyper.char_filters = 8\nhyper.epochs = 2\n";
  }
  for (const char* run : {"a", "b"}) {
    const std::string d = (root / run).string() + "/";
    const std::vector<std::pair<std::string, std::string>> steps = {
        {"extract", "extract " + meeting + " --out " + d + "extract.jsonl"},
        {"generate", "generate --docs 40 --seed 3 --out " + d + "gen.jsonl"},
        {"train", "train --config " + (root / "train.cfg").string() + " --seed 5 --model " +
                      d + "model.bin >" + d + "train.log"},
        {"pipeline", "pipeline " + meeting + " --model " + d + "model.bin --out " + d +
                         "pipeline.jsonl"},
        {"negate", "negate " + neg + " --out " + d + "negate.jsonl"},
        {"eval", "eval --corpus " + Fixture("meeting/meeting.jsonl") + " --predictions " + d +
                     "pipeline.jsonl --model " + d + "model.bin --histogram " + d +
                     "hist.txt --out " + d + "eval.txt"},
    };
    for (const auto& [name, args] : steps) {
      const std::string redirect = name == "train" ? "" : " >/dev/null";
      if (Shell(args + redirect + " 2>" + d + name + ".err") != 0) {
        failed.push_back(name + "/" + run);
      }
    }
  }
  const char* outputs[] = {"extract.jsonl", "gen.jsonl",      "gen.jsonl.conllu",
                           "gen.jsonl.ptb", "model.bin",      "train.log",
                           "pipeline.jsonl", "negate.jsonl",  "eval.txt",
                           "hist.txt"};
  for (const char* f : outputs) {
    const std::string a = ReadFile((root / "a" / f).string());
    if (a.empty() || a != ReadFile((root / "b" / f).string())) differ.push_back(f);
  }
  fs::remove_all(root);
  std::string detail = "6 subcommands, 10 output files";
  for (const auto& f : failed) detail += ", failed " + f;
  for (const auto& f : differ) detail += ", differs " + f;
  return {failed.empty() && differ.empty(), detail};
}

// 11 -----------------------------------------------------------------------

Verdict TaggerRecall() {
  std::ifstream in(Fixture("ruletag/recall.txt"));
  int total = 0, found = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::string text;
    std::vector<std::pair<int, int>> gold;
    int open = -1;
    for (char ch : line) {
      if (ch == '[') {
        open = static_cast<int>(text.size());
      } else if (ch == ']') {
        gold.emplace_back(open, static_cast<int>(text.size()));
      } else {
        text += ch;
      }
    }
    const auto doc = ts::corpus::Tokenize(text);
    const auto cands = ts::ruletag::ExtractCandidates(doc).entities;
    for (const auto& [start, end] : gold) {
      ++total;
      for (const auto& e : cands) {
        if (doc.tokens()[e.first_token].char_start == start &&
            doc.tokens()[e.last_token].char_end == end) {
          ++found;
          break;
        }
      }
    }
  }
  const auto meeting = ts::corpus::ReadCorpus(Fixture("meeting/meeting.jsonl"),
                                              ts::corpus::CorpusFormat::kJsonl);
  std::vector<std::string> surfaces;
  for (const auto& e : ts::ruletag::ExtractCandidates(meeting.at(0).doc).entities) {
    surfaces.push_back(e.surface);
  }
  const std::vector<std::string> want = {"May", "today", "next week", "Wednesday"};
  std::string got;
  for (const auto& s : surfaces) got += (got.empty() ? "" : ", ") + s;
  return {total >= 50 && found == total && surfaces == want,
          Fmt("%d of %d bundled expressions, meeting email candidates: ", found, total) + got};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"gradient correctness", GradientCorrectness},
      {"crf partition oracle", CrfOracle},
      {"attention properties", AttentionProperties},
      {"threshold oracle", ThresholdOracle},
      {"precision gain on synthetic corpus", PrecisionGain},
      {"negation fixture outputs", NegationFixtureOutputs},
      {"negation aggregate counts", NegationAggregate},
      {"tagging loss ablation direction", AblationDirection},
      {"metric micro-tests", MetricMicroTests},
      {"cli determinism", CliDeterminism},
      {"rule tagger recall", TaggerRecall},
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("criterion %zu %s: %s (%s)\n", i + 1, v.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
