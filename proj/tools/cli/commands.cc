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

#include "cli/commands.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "timescope/corpus/corpus_io.h"
#include "timescope/corpus/parses.h"
#include "timescope/corpus/synthetic.h"
#include "timescope/error.h"
#include "timescope/eval/compare.h"
#include "timescope/eval/localization.h"
#include "timescope/eval/metrics.h"
#include "timescope/negation/detector.h"
#include "timescope/ruletag/extractor.h"
#include "timescope/scorer/model.h"
#include "timescope/scorer/trainer.h"

namespace timescope::cli {
namespace {

using nlohmann::ordered_json;

void Require(const std::string& value, const std::string& key) {
  if (value.empty()) throw ConfigError(key + " is required");
}

void RequireFile(const std::string& path, const std::string& key) {
  Require(path, key);
  if (!std::filesystem::is_regular_file(path)) {
    throw ConfigError(key + ": no such file '" + path + "'");
  }
}

void OptionalFile(const std::string& path, const std::string& key) {
  if (!path.empty()) RequireFile(path, key);
}

void CheckFormat(const PipelineConfig& cfg) {
  if (cfg.format != "jsonl") throw ConfigError("unsupported output format '" + cfg.format + "'");
}

corpus::Corpus LoadSorted(const std::string& path, const std::string& format) {
  corpus::Corpus c = corpus::ReadCorpus(path, corpus::ParseCorpusFormat(format));
  std::stable_sort(c.begin(), c.end(), [](const auto& a, const auto& b) {
    return a.doc.id() < b.doc.id();
  });
  for (size_t i = 1; i < c.size(); ++i) {
    if (c[i].doc.id() == c[i - 1].doc.id()) {
      throw FormatError("duplicate document id '" + c[i].doc.id() + "' in " + path);
    }
  }
  return c;
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << text;
  if (!f) throw ConfigError("write failed for '" + path + "'");
}

void Emit(const PipelineConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out.empty()) {
    out << text;
  } else {
    WriteText(cfg.out, text);
  }
}

ordered_json Range(const corpus::Document& doc, const corpus::EntitySpan& span) {
  return ordered_json::array({doc.tokens()[span.first_token].char_start,
                              doc.tokens()[span.last_token].char_end});
}

void AddDecision(const corpus::Document& doc, const negation::NegationDecision& d,
                 ordered_json* rec) {
  (*rec)["negated"] = d.negated;
  (*rec)["via"] = negation::ViaName(d.via);
  (*rec)["cue"] = d.cue ? ordered_json(d.cue->text) : ordered_json(nullptr);
  (*rec)["negated_part"] = d.negated ? ordered_json(d.negated_part) : ordered_json(nullptr);
  (*rec)["part"] = d.negated ? Range(doc, corpus::MakeSpan(doc, d.part_first, d.part_last))
                             : ordered_json(nullptr);
}

void LogWarnings(const std::string& id, const std::vector<std::string>& warnings,
                 std::ostream& log) {
  for (const auto& w : warnings) log << "warning: " << id << ": " << w << "\n";
}

// Document with the POS tags of its parses applied.
corpus::Document WithPos(const corpus::Document& doc, const corpus::ParseBundle& parses) {
  corpus::Document d = doc;
  corpus::ApplyPos(parses, &d);
  return d;
}

ordered_json ParseLine(const std::string& line, int lineno, const std::string& path) {
  try {
    return ordered_json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path + ":" + std::to_string(lineno) + ": " + e.what());
  }
}

struct PredictedEntity {
  corpus::EntitySpan span;
  bool negated = false;
  corpus::EntitySpan part;  // negated portion; the whole span when absent
};

// Accepts pipeline records ({"doc","entities":[...]}) and negate records
// ({"doc","entity",...}).
std::map<std::string, std::vector<PredictedEntity>> ReadPredictions(
    const std::string& path, const std::map<std::string, const corpus::Document*>& docs) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open predictions '" + path + "'");
  std::map<std::string, std::vector<PredictedEntity>> out;
  std::string line;
  int lineno = 0;
  auto to_span = [&](const std::string& id, const corpus::Document& doc,
                     const ordered_json& range) {
    const int first = doc.TokenStartingAt(range.at(0).get<int>());
    const int last = doc.TokenEndingAt(range.at(1).get<int>());
    if (first < 0 || last < first) {
      throw FormatError(path + ":" + std::to_string(lineno) +
                        ": entity off token boundaries in '" + id + "'");
    }
    return corpus::MakeSpan(doc, first, last);
  };
  auto add = [&](const std::string& id, const ordered_json& e) {
    const auto it = docs.find(id);
    if (it == docs.end()) {
      throw FormatError(path + ":" + std::to_string(lineno) + ": unknown document '" + id + "'");
    }
    PredictedEntity p;
    p.span = to_span(id, *it->second, e.at("entity"));
    p.negated = e.value("negated", false);
    p.part = p.span;
    if (p.negated && e.contains("part") && !e.at("part").is_null()) {
      p.part = to_span(id, *it->second, e.at("part"));
    }
    out[id].push_back(std::move(p));
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const ordered_json rec = ParseLine(line, lineno, path);
    try {
      const std::string id = rec.at("doc").get<std::string>();
      if (rec.contains("entities")) {
        out[id];
        for (const auto& e : rec.at("entities")) add(id, e);
      } else {
        add(id, rec);
      }
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  for (auto& [id, ents] : out) {
    std::sort(ents.begin(), ents.end(), [](const auto& a, const auto& b) {
      return a.span.first_token < b.span.first_token;
    });
  }
  return out;
}

}  // namespace

void CmdExtract(const PipelineConfig& cfg, std::ostream& out, std::ostream&) {
  CheckFormat(cfg);
  RequireFile(cfg.corpus, "corpus");
  OptionalFile(cfg.lexicon, "lexicon");
  const auto lex = ruletag::TimeLexicon::Load(cfg.lexicon);
  const corpus::Corpus docs = LoadSorted(cfg.corpus, cfg.corpus_format);
  std::string text;
  for (const auto& ad : docs) {
    for (const auto& e : ruletag::ExtractCandidates(ad.doc, lex).entities) {
      ordered_json rec;
      rec["doc"] = ad.doc.id();
      rec["entity"] = Range(ad.doc, e);
      rec["text"] = e.surface;
      rec["rule"] = e.source_rule;
      text += rec.dump() + "\n";
    }
  }
  Emit(cfg, out, text);
}

void CmdTrain(const PipelineConfig& cfg, std::ostream& out, std::ostream& log) {
  CheckFormat(cfg);
  const std::string model_path = cfg.model.empty() ? cfg.out : cfg.model;
  Require(model_path, "model");
  OptionalFile(cfg.corpus, "corpus");
  OptionalFile(cfg.val_corpus, "val_corpus");
  OptionalFile(cfg.lexicon, "lexicon");
  nn::Hyper hyper = cfg.hyper;
  hyper.seed = cfg.seed;
  hyper.Validate();
  const auto lex = ruletag::TimeLexicon::Load(cfg.lexicon);

  corpus::Corpus all;
  if (!cfg.corpus.empty()) {
    all = LoadSorted(cfg.corpus, cfg.corpus_format);
  } else if (cfg.synthetic_docs > 0) {
    all = corpus::GenerateSynthetic(cfg.seed, cfg.synthetic_docs).corpus;
  } else {
    throw ConfigError("train needs corpus or synthetic_docs");
  }
  corpus::Corpus train, val;
  if (!cfg.val_corpus.empty()) {
    train = std::move(all);
    val = LoadSorted(cfg.val_corpus, cfg.corpus_format);
  } else {
    const long n = static_cast<long>(all.size());
    const long n_val = std::max(1L, std::lround(cfg.val_fraction * n));
    if (n - n_val < 1) throw ConfigError("train: too few documents to split");
    train.assign(all.begin(), all.end() - n_val);
    val.assign(all.end() - n_val, all.end());
  }
  if (train.empty() || val.empty()) throw ConfigError("train: empty train or validation set");
  log << "train " << train.size() << " docs, validation " << val.size() << " docs\n";

  scorer::TrainOptions options;
  options.lexicon = &lex;
  options.on_epoch = [&out](const scorer::EpochRecord& r) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "epoch %d loss %.6f val_f1 %.6f threshold %.6f\n",
                  r.epoch, r.train_loss, r.val_f1, r.threshold);
    out << buf;
  };
  const scorer::TrainResult result = scorer::Train(train, val, hyper, options);
  if (result.threshold_degenerate) {
    log << "warning: validation labels are single-class; threshold left at 0.5\n";
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf), "best_epoch %d val_f1 %.6f threshold %.6f%s\n",
                result.best_epoch, result.best_val_f1, result.model.threshold(),
                result.stopped_early ? " stopped_early" : "");
  out << buf;
  result.model.Save(model_path);
}

int CmdPipeline(const PipelineConfig& cfg, std::ostream& out, std::ostream& log) {
  CheckFormat(cfg);
  RequireFile(cfg.corpus, "corpus");
  RequireFile(cfg.model, "model");
  OptionalFile(cfg.dependency_parses, "dependency_parses");
  OptionalFile(cfg.constituency_parses, "constituency_parses");
  OptionalFile(cfg.lexicon, "lexicon");
  OptionalFile(cfg.cue_lexicon, "cue_lexicon");
  const auto lex = ruletag::TimeLexicon::Load(cfg.lexicon);
  const auto cues = negation::CueLexicon::Load(cfg.cue_lexicon);
  const auto model = scorer::RelevanceModel::Load(cfg.model);
  const auto parses =
      corpus::ParseIndex::LoadFiles(cfg.dependency_parses, cfg.constituency_parses);
  const corpus::Corpus docs = LoadSorted(cfg.corpus, cfg.corpus_format);

  std::string text;
  int failed = 0;
  for (const auto& ad : docs) {
    try {
      const auto candidates = ruletag::ExtractCandidates(ad.doc, lex).entities;
      const auto scored = model.Predict(ad.doc, candidates);
      std::vector<corpus::EntitySpan> relevant;
      std::vector<double> probability;
      for (const auto& s : scored) {
        if (!s.relevant) continue;
        relevant.push_back(s.span);
        probability.push_back(s.probability);
      }
      const corpus::ParseBundle bundle = parses.ForDocument(ad.doc);
      const auto result = negation::Detect(WithPos(ad.doc, bundle), relevant, bundle, cues);
      LogWarnings(ad.doc.id(), result.warnings, log);
      ordered_json rec;
      rec["doc"] = ad.doc.id();
      rec["entities"] = ordered_json::array();
      for (size_t i = 0; i < relevant.size(); ++i) {
        ordered_json e;
        e["entity"] = Range(ad.doc, relevant[i]);
        e["text"] = relevant[i].surface;
        e["probability"] = probability[i];
        AddDecision(ad.doc, result.decisions[i], &e);
        rec["entities"].push_back(std::move(e));
      }
      text += rec.dump() + "\n";
    } catch (const Error& e) {
      log << "error: " << ad.doc.id() << ": " << e.what() << "\n";
      ++failed;
    }
  }
  Emit(cfg, out, text);
  return failed;
}

int CmdNegate(const PipelineConfig& cfg, std::ostream& out, std::ostream& log) {
  CheckFormat(cfg);
  RequireFile(cfg.corpus, "corpus");
  OptionalFile(cfg.dependency_parses, "dependency_parses");
  OptionalFile(cfg.constituency_parses, "constituency_parses");
  OptionalFile(cfg.cue_lexicon, "cue_lexicon");
  const auto cues = negation::CueLexicon::Load(cfg.cue_lexicon);
  const auto parses =
      corpus::ParseIndex::LoadFiles(cfg.dependency_parses, cfg.constituency_parses);
  const corpus::Corpus docs = LoadSorted(cfg.corpus, cfg.corpus_format);

  std::string text;
  int failed = 0;
  for (const auto& ad : docs) {
    try {
      std::vector<corpus::EntitySpan> relevant;
      for (const auto& e : ad.entities) {
        if (e.relevant) relevant.push_back(e.span);
      }
      const corpus::ParseBundle bundle = parses.ForDocument(ad.doc);
      const auto result = negation::Detect(WithPos(ad.doc, bundle), relevant, bundle, cues);
      LogWarnings(ad.doc.id(), result.warnings, log);
      for (size_t i = 0; i < relevant.size(); ++i) {
        ordered_json rec;
        rec["doc"] = ad.doc.id();
        rec["entity"] = Range(ad.doc, relevant[i]);
        rec["text"] = relevant[i].surface;
        AddDecision(ad.doc, result.decisions[i], &rec);
        text += rec.dump() + "\n";
      }
    } catch (const Error& e) {
      log << "error: " << ad.doc.id() << ": " << e.what() << "\n";
      ++failed;
    }
  }
  Emit(cfg, out, text);
  return failed;
}

void CmdEval(const PipelineConfig& cfg, std::ostream& out, std::ostream& log) {
  RequireFile(cfg.corpus, "corpus");
  RequireFile(cfg.predictions, "predictions");
  if (!cfg.histogram.empty()) RequireFile(cfg.model, "model");
  const corpus::Corpus gold = LoadSorted(cfg.corpus, cfg.corpus_format);
  std::map<std::string, const corpus::Document*> by_id;
  for (const auto& ad : gold) by_id[ad.doc.id()] = &ad.doc;
  const auto predictions = ReadPredictions(cfg.predictions, by_id);

  std::vector<eval::DocumentSpans> spans;
  std::set<eval::EntityKey> universe, gold_neg, pred_neg;
  for (const auto& ad : gold) {
    eval::DocumentSpans ds;
    for (const auto& e : ad.entities) {
      if (!e.relevant) continue;
      ds.gold.push_back(e.span);
      const eval::EntityKey key{ad.doc.id(), e.span.first_token, e.span.last_token};
      universe.insert(key);
      if (e.negated) gold_neg.insert(key);
    }
    if (const auto it = predictions.find(ad.doc.id()); it != predictions.end()) {
      for (const auto& p : it->second) {
        ds.pred.push_back(p.span);
        universe.insert({ad.doc.id(), p.span.first_token, p.span.last_token});
        if (p.negated) {
          const eval::EntityKey key{ad.doc.id(), p.part.first_token, p.part.last_token};
          universe.insert(key);
          pred_neg.insert(key);
        }
      }
    }
    spans.push_back(std::move(ds));
  }
  eval::MetricMap metrics = eval::ToMetricMap(eval::DetectionMetrics(spans), "detection.");
  eval::AddMetrics(eval::NegationMetrics(universe, gold_neg, pred_neg), "negation.", &metrics);

  if (!cfg.histogram.empty()) {
    const auto model = scorer::RelevanceModel::Load(cfg.model);
    std::vector<double> scores;
    int degenerate = 0;
    for (const auto& ad : gold) {
      std::vector<corpus::EntitySpan> relevant;
      for (const auto& e : ad.entities) {
        if (e.relevant) relevant.push_back(e.span);
      }
      if (relevant.empty()) continue;
      for (const auto& s : model.Predict(ad.doc, relevant)) {
        const auto o = eval::LocalizationOverlap(s.alpha, s.span);
        if (o.degenerate) {
          ++degenerate;
          continue;
        }
        scores.push_back(o.value);
      }
    }
    double sum = 0;
    for (double s : scores) sum += s;
    metrics["localization.count"] = static_cast<double>(scores.size());
    metrics["localization.degenerate"] = degenerate;
    metrics["localization.mean"] = scores.empty() ? 0.0 : sum / scores.size();
    const auto hist = eval::OverlapHistogram(scores);
    std::string rows;
    for (int b = 0; b < 10; ++b) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.1f %.1f %d\n", b / 10.0, (b + 1) / 10.0, hist[b]);
      rows += buf;
    }
    WriteText(cfg.histogram, rows);
  }

  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "detection strict P %.4f R %.4f F1 %.4f | relaxed P %.4f R %.4f F1 %.4f\n"
                "negation P %.4f R %.4f F1 %.4f\n",
                metrics["detection.strict.precision"], metrics["detection.strict.recall"],
                metrics["detection.strict.f1"], metrics["detection.relaxed.precision"],
                metrics["detection.relaxed.recall"], metrics["detection.relaxed.f1"],
                metrics["negation.precision"], metrics["negation.recall"],
                metrics["negation.f1"]);
  log << buf;
  Emit(cfg, out, eval::FormatKeyValues(metrics));
}

void CmdGenerate(const PipelineConfig& cfg, std::ostream&, std::ostream& log) {
  CheckFormat(cfg);
  Require(cfg.out, "out");
  if (cfg.synthetic_docs < 1) throw ConfigError("generate needs synthetic_docs >= 1");
  const auto syn = corpus::GenerateSynthetic(cfg.seed, cfg.synthetic_docs);
  const std::string dep =
      cfg.dependency_parses.empty() ? cfg.out + ".conllu" : cfg.dependency_parses;
  const std::string cons =
      cfg.constituency_parses.empty() ? cfg.out + ".ptb" : cfg.constituency_parses;
  std::ostringstream corpus_text;
  corpus::WriteCorpus(syn.corpus, corpus_text);
  WriteText(cfg.out, corpus_text.str());
  WriteText(dep, syn.dependency);
  WriteText(cons, syn.constituency);
  log << "wrote " << syn.corpus.size() << " documents to " << cfg.out << "\n";
}

int RunCommand(const std::string& name, const PipelineConfig& cfg, std::ostream& out,
               std::ostream& log) {
  try {
    int failed = 0;
    if (name == "extract") {
      CmdExtract(cfg, out, log);
    } else if (name == "train") {
      CmdTrain(cfg, out, log);
    } else if (name == "pipeline") {
      failed = CmdPipeline(cfg, out, log);
    } else if (name == "negate") {
      failed = CmdNegate(cfg, out, log);
    } else if (name == "eval") {
      CmdEval(cfg, out, log);
    } else if (name == "generate") {
      CmdGenerate(cfg, out, log);
    } else {
      throw ConfigError("unknown command '" + name + "'");
    }
    if (failed > 0) {
      log << failed << " document(s) failed\n";
      return kExitPartial;
    }
    return kExitOk;
  } catch (const NumericError& e) {
    log << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace timescope::cli
