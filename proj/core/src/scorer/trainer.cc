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

#include "timescope/scorer/trainer.h"

#include <cmath>
#include <numeric>
#include <optional>

#include "timescope/error.h"
#include "timescope/nn/adam.h"
#include "timescope/nn/model_params.h"
#include "timescope/rng.h"
#include "timescope/ruletag/extractor.h"
#include "timescope/scorer/network.h"
#include "timescope/scorer/threshold.h"

namespace timescope::scorer {
namespace {

std::vector<Example> MakeExamples(const corpus::Corpus& corpus, const Vocab& vocab,
                                  const ruletag::TimeLexicon& lex) {
  std::vector<Example> out;
  out.reserve(corpus.size());
  for (const auto& ad : corpus) {
    out.push_back(MakeExample(ad, ruletag::ExtractCandidates(ad.doc, lex).entities, vocab));
  }
  return out;
}

}  // namespace

TrainResult Train(const corpus::Corpus& train, const corpus::Corpus& val,
                  const nn::Hyper& hyper, const TrainOptions& options) {
  hyper.Validate();
  if (train.empty() || val.empty()) {
    throw ConfigError("training and validation corpora must be non-empty");
  }
  const ruletag::TimeLexicon& lex =
      options.lexicon ? *options.lexicon : ruletag::TimeLexicon::Default();
  const Vocab vocab = Vocab::Build(train, hyper.min_word_count);
  const std::vector<Example> train_ex = MakeExamples(train, vocab, lex);
  const std::vector<Example> val_ex = MakeExamples(val, vocab, lex);

  nn::ParamSet<float> params =
      nn::InitModelParams(hyper, vocab.num_words(), vocab.num_chars());
  nn::ParamSet<float> grads = params.ZerosLike();
  auto adam = nn::AdamState<float>::For(params);
  Rng rng(hyper.seed ^ 0x9e3779b97f4a7c15ull);

  std::vector<size_t> order(train_ex.size());
  std::iota(order.begin(), order.end(), 0);

  std::optional<nn::ParamSet<float>> best_params;
  double best_threshold = 0.5;
  bool best_degenerate = false;
  TrainResult result{RelevanceModel(hyper, vocab, params, 0.5), 0, -1.0, false, false, {}};
  int since_best = 0;

  for (int epoch = 1; epoch <= hyper.epochs; ++epoch) {
    rng.Shuffle(&order);
    double total = 0;
    for (size_t idx : order) {
      grads.SetZero();
      const LossParts parts =
          JointLoss<float>(params, hyper, train_ex[idx], hyper.gamma, &grads, &rng);
      if (!std::isfinite(parts.total)) {
        throw NumericError("training diverged at epoch " + std::to_string(epoch));
      }
      total += parts.total;
      nn::ClipGlobalNorm(&grads, hyper.grad_clip);
      try {
        nn::AdamStep(&params, grads, &adam, hyper.learning_rate);
      } catch (const NumericError& e) {
        throw NumericError("training diverged at epoch " + std::to_string(epoch) +
                           ": " + e.what());
      }
    }

    std::vector<double> scores;
    std::vector<int> labels;
    for (const auto& ex : val_ex) {
      for (const auto& s : ScoreCandidates<float>(params, hyper, ex.ids, ex.candidates)) {
        scores.push_back(s.probability);
      }
      labels.insert(labels.end(), ex.labels.begin(), ex.labels.end());
    }
    const ThresholdChoice choice = SelectThreshold(scores, labels);
    EpochRecord rec{epoch, total / static_cast<double>(train_ex.size()), choice.f1,
                    choice.threshold};
    result.history.push_back(rec);
    if (options.on_epoch) options.on_epoch(rec);

    if (rec.val_f1 > result.best_val_f1) {
      result.best_val_f1 = rec.val_f1;
      result.best_epoch = epoch;
      best_params = params;
      best_threshold = choice.threshold;
      best_degenerate = choice.degenerate;
      since_best = 0;
    } else if (++since_best >= hyper.patience) {
      result.stopped_early = epoch < hyper.epochs;
      break;
    }
  }
  if (!best_params) best_params = params;
  result.threshold_degenerate = best_degenerate;
  result.model = RelevanceModel(hyper, vocab, std::move(*best_params), best_threshold);
  return result;
}

}  // namespace timescope::scorer
