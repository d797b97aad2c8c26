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

#include <sstream>

#include <benchmark/benchmark.h>

#include "timescope/corpus/parses.h"
#include "timescope/corpus/synthetic.h"
#include "timescope/corpus/tokenizer.h"
#include "timescope/negation/detector.h"
#include "timescope/nn/layers.h"
#include "timescope/nn/model_params.h"
#include "timescope/rng.h"
#include "timescope/ruletag/extractor.h"
#include "timescope/scorer/crf.h"
#include "timescope/scorer/model.h"
#include "timescope/scorer/network.h"

namespace ts = timescope;

namespace {

const ts::corpus::SyntheticCorpus& Corpus() {
  static const auto syn = ts::corpus::GenerateSynthetic(11, 200);
  return syn;
}

void BM_Tokenize(benchmark::State& state) {
  const auto& docs = Corpus().corpus;
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ts::corpus::Tokenize(docs[i++ % docs.size()].doc.text()));
  }
}
BENCHMARK(BM_Tokenize);

void BM_ExtractCandidates(benchmark::State& state) {
  const auto& docs = Corpus().corpus;
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ts::ruletag::ExtractCandidates(docs[i++ % docs.size()].doc));
  }
}
BENCHMARK(BM_ExtractCandidates);

void BM_BiGruForward(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0)), in = 64, hidden = 64;
  ts::nn::ParamSet<float> p;
  ts::nn::AddBiGruParams(&p, "g", in, hidden);
  ts::Rng rng(1);
  for (size_t i = 0; i < p.size(); ++i) {
    for (auto& v : p.tensor(i).values()) v = static_cast<float>(rng.Uniform(-0.1, 0.1));
  }
  ts::nn::Tensor<float> xs({n, in}, 0.1f);
  const auto gp = ts::nn::BiGruParamsFrom(p, "g");
  for (auto _ : state) benchmark::DoNotOptimize(ts::nn::BiGruForward(gp, xs));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_BiGruForward)->Arg(16)->Arg(64)->Arg(256);

void BM_CrfPartition(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ts::nn::Tensor<double> e({n, 2}, 0.3), tr({2, 2}, -0.2);
  for (auto _ : state) benchmark::DoNotOptimize(ts::scorer::CrfLogPartition(e, tr));
}
BENCHMARK(BM_CrfPartition)->Arg(64)->Arg(512);

void BM_ScoreDocument(benchmark::State& state) {
  ts::nn::Hyper h;  // default dimensions
  const auto& docs = Corpus().corpus;
  const auto vocab = ts::scorer::Vocab::Build(docs, h.min_word_count);
  const ts::scorer::RelevanceModel model(
      h, vocab, ts::nn::InitModelParams(h, vocab.num_words(), vocab.num_chars()), 0.5);
  size_t i = 0;
  for (auto _ : state) {
    const auto& doc = docs[i++ % docs.size()].doc;
    benchmark::DoNotOptimize(model.Predict(doc, ts::ruletag::ExtractCandidates(doc).entities));
  }
}
BENCHMARK(BM_ScoreDocument);

void BM_DetectNegation(benchmark::State& state) {
  const auto& syn = Corpus();
  std::istringstream dep(syn.dependency), cons(syn.constituency);
  const auto index = ts::corpus::ParseIndex::Load(&dep, &cons);
  std::vector<std::pair<const ts::corpus::AnnotatedDocument*, ts::corpus::ParseBundle>> items;
  for (const auto& ad : syn.corpus) items.emplace_back(&ad, index.ForDocument(ad.doc));
  size_t i = 0;
  for (auto _ : state) {
    const auto& [ad, bundle] = items[i++ % items.size()];
    std::vector<ts::corpus::EntitySpan> spans;
    for (const auto& e : ad->entities) spans.push_back(e.span);
    benchmark::DoNotOptimize(ts::negation::Detect(ad->doc, spans, bundle));
  }
}
BENCHMARK(BM_DetectNegation);

}  // namespace

BENCHMARK_MAIN();
