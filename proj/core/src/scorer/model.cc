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

#include "timescope/scorer/model.h"

#include "timescope/error.h"
#include "timescope/nn/model_params.h"
#include "timescope/scorer/network.h"

namespace timescope::scorer {

RelevanceModel::RelevanceModel(nn::Hyper hyper, Vocab vocab, nn::ParamSet<float> params,
                               double threshold)
    : hyper_(std::move(hyper)),
      vocab_(std::move(vocab)),
      params_(std::move(params)),
      threshold_(threshold) {
  nn::CheckModelParams(params_, hyper_, vocab_.num_words(), vocab_.num_chars());
  if (!(threshold_ >= 0 && threshold_ <= 1)) {
    throw FormatError("threshold outside [0, 1]");
  }
}

RelevanceModel RelevanceModel::FromContainer(const nn::ModelContainer& c) {
  return RelevanceModel(c.hyper, Vocab::FromTables(c.string_tables), c.params,
                        c.threshold);
}

RelevanceModel RelevanceModel::Load(const std::string& path) {
  return FromContainer(nn::ReadContainer(path));
}

nn::ModelContainer RelevanceModel::ToContainer() const {
  nn::ModelContainer c;
  c.hyper = hyper_;
  c.threshold = threshold_;
  c.string_tables = vocab_.ToTables();
  c.params = params_;
  return c;
}

void RelevanceModel::Save(const std::string& path) const {
  nn::WriteContainer(ToContainer(), path);
}

std::vector<ScoredEntity> RelevanceModel::Predict(
    const corpus::Document& doc, const std::vector<corpus::EntitySpan>& candidates) const {
  std::vector<std::pair<int, int>> ranges;
  for (const auto& c : candidates) ranges.emplace_back(c.first_token, c.last_token);
  auto scores = ScoreCandidates<float>(params_, hyper_, EncodeTokens(doc, vocab_), ranges);
  std::vector<ScoredEntity> out;
  for (size_t i = 0; i < candidates.size(); ++i) {
    out.push_back({candidates[i], scores[i].probability,
                   scores[i].probability > threshold_, std::move(scores[i].alpha)});
  }
  return out;
}

}  // namespace timescope::scorer
