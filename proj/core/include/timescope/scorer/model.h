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

#ifndef TIMESCOPE_SCORER_MODEL_H_
#define TIMESCOPE_SCORER_MODEL_H_

#include <string>
#include <vector>

#include "timescope/corpus/document.h"
#include "timescope/nn/container.h"
#include "timescope/nn/hyper.h"
#include "timescope/nn/param_set.h"
#include "timescope/scorer/vocab.h"

namespace timescope::scorer {

struct ScoredEntity {
  corpus::EntitySpan span;
  double probability = 0;
  bool relevant = false;     // probability > threshold
  std::vector<float> alpha;  // attention over the document's tokens
};

// Trained relevance scorer: parameters, vocabulary and decision threshold.
class RelevanceModel {
 public:
  RelevanceModel(nn::Hyper hyper, Vocab vocab, nn::ParamSet<float> params,
                 double threshold);

  static RelevanceModel FromContainer(const nn::ModelContainer& c);
  static RelevanceModel Load(const std::string& path);
  nn::ModelContainer ToContainer() const;
  void Save(const std::string& path) const;

  std::vector<ScoredEntity> Predict(const corpus::Document& doc,
                                    const std::vector<corpus::EntitySpan>& candidates) const;

  const nn::Hyper& hyper() const { return hyper_; }
  const Vocab& vocab() const { return vocab_; }
  const nn::ParamSet<float>& params() const { return params_; }
  double threshold() const { return threshold_; }

 private:
  nn::Hyper hyper_;
  Vocab vocab_;
  nn::ParamSet<float> params_;
  double threshold_;
};

}  // namespace timescope::scorer

#endif  // TIMESCOPE_SCORER_MODEL_H_
