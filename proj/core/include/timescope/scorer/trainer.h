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

#ifndef TIMESCOPE_SCORER_TRAINER_H_
#define TIMESCOPE_SCORER_TRAINER_H_

#include <functional>
#include <vector>

#include "timescope/corpus/document.h"
#include "timescope/nn/hyper.h"
#include "timescope/ruletag/lexicon.h"
#include "timescope/scorer/model.h"

namespace timescope::scorer {

struct EpochRecord {
  int epoch = 0;  // 1-based
  double train_loss = 0;  // mean joint loss per document
  double val_f1 = 0;      // candidate-level, at `threshold`
  double threshold = 0.5;
};

struct TrainOptions {
  const ruletag::TimeLexicon* lexicon = nullptr;  // null: built-in lexicon
  std::function<void(const EpochRecord&)> on_epoch;
};

struct TrainResult {
  RelevanceModel model;  // parameters of the best validation epoch
  int best_epoch = 0;
  double best_val_f1 = 0;
  bool stopped_early = false;
  bool threshold_degenerate = false;
  std::vector<EpochRecord> history;
};

// Candidates come from the rule tagger; a candidate is positive iff it
// equals a gold relevant range. Each epoch visits the training documents
// in a seeded shuffled order with one clipped Adam step per document, then
// picks the validation threshold. Stops after `patience` epochs without a
// validation F1 improvement. Throws NumericError naming the epoch on
// divergence.
TrainResult Train(const corpus::Corpus& train, const corpus::Corpus& val,
                  const nn::Hyper& hyper, const TrainOptions& options = {});

}  // namespace timescope::scorer

#endif  // TIMESCOPE_SCORER_TRAINER_H_
