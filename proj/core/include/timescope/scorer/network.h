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

#ifndef TIMESCOPE_SCORER_NETWORK_H_
#define TIMESCOPE_SCORER_NETWORK_H_

#include <span>
#include <utility>
#include <vector>

#include "timescope/corpus/document.h"
#include "timescope/nn/hyper.h"
#include "timescope/nn/layers.h"
#include "timescope/nn/param_set.h"
#include "timescope/rng.h"
#include "timescope/scorer/vocab.h"

namespace timescope::scorer {

// Forward and backward passes of the relevance network. Parameter names
// follow nn::ModelParamShapes. Backward functions accumulate into `g`.

struct TokenIds {
  int word = Vocab::kUnknown;
  std::vector<int> chars;
};
using DocIds = std::vector<TokenIds>;

DocIds EncodeTokens(const corpus::Document& doc, const Vocab& vocab);

// --- Entity encoder: per token [char_cnn ; word_lookup] -> BiGRU final -----

template <typename T>
struct EntityTrace {
  int first = 0;
  int last = 0;
  std::vector<nn::CharCnnTrace<T>> cnn;
  nn::Tensor<T> inputs;  // [l, F + wd]
  nn::BiGruTrace<T> rnn;
  std::vector<T> u;      // [d_e]
};

template <typename T>
EntityTrace<T> EncodeEntity(const nn::ParamSet<T>& p, const DocIds& ids, int first,
                            int last);

template <typename T>
void EncodeEntityBackward(const nn::ParamSet<T>& p, const DocIds& ids,
                          const EntityTrace<T>& tr, std::span<const T> d_u,
                          nn::ParamSet<T>* g);

// --- Email encoder: word_lookup -> stacked BiGRU, all states ----------------

template <typename T>
struct EmailTrace {
  std::vector<nn::Tensor<T>> layer_inputs;  // per layer, after dropout
  std::vector<nn::Tensor<T>> masks;         // per gap between layers; empty if off
  std::vector<nn::BiGruTrace<T>> layers;
  nn::Tensor<T> states;                     // [n, d_w]
};

// Dropout between layers applies only when `dropout_rng` is non-null.
template <typename T>
EmailTrace<T> EncodeEmail(const nn::ParamSet<T>& p, const nn::Hyper& h,
                          const DocIds& ids, Rng* dropout_rng = nullptr);

template <typename T>
void EncodeEmailBackward(const nn::ParamSet<T>& p, const nn::Hyper& h,
                         const DocIds& ids, const EmailTrace<T>& tr,
                         const nn::Tensor<T>& d_states, nn::ParamSet<T>* g);

// --- Attention ----------------------------------------------------------------
//   a_j = A v_j + b,  b_j = tanh(a_j + u),  logit_j = B . b_j + d,
//   alpha = softmax(logit),  c = sum_j alpha_j v_j
// The projection a_j does not depend on the entity and is shared.

template <typename T>
nn::Tensor<T> AttentionProjection(const nn::ParamSet<T>& p, const nn::Tensor<T>& states);

template <typename T>
void AttentionProjectionBackward(const nn::ParamSet<T>& p, const nn::Tensor<T>& states,
                                 const nn::Tensor<T>& d_proj, nn::Tensor<T>* d_states,
                                 nn::ParamSet<T>* g);

template <typename T>
struct AttentionResult {
  std::vector<T> alpha;    // [n]
  std::vector<T> context;  // [d_w]
  nn::Tensor<T> act;       // [n, d_e], tanh(a_j + u)
};

template <typename T>
AttentionResult<T> Attend(const nn::ParamSet<T>& p, std::span<const T> u,
                          const nn::Tensor<T>& states, const nn::Tensor<T>& proj);
template <typename T>
AttentionResult<T> Attend(const nn::ParamSet<T>& p, std::span<const T> u,
                          const nn::Tensor<T>& states);

// With a null d_proj the projection gradient is applied to A, b and
// d_states directly.
template <typename T>
void AttendBackward(const nn::ParamSet<T>& p, const nn::Tensor<T>& states,
                    const AttentionResult<T>& res, std::span<const T> d_context,
                    std::span<T> d_u, nn::Tensor<T>* d_states, nn::Tensor<T>* d_proj,
                    nn::ParamSet<T>* g);

// --- Scoring ----------------------------------------------------------------
//   s = sigmoid(M . [u ; c] + g)

template <typename T>
T ScoreLogit(const nn::ParamSet<T>& p, std::span<const T> u, std::span<const T> c);
template <typename T>
T ScoreEntity(const nn::ParamSet<T>& p, std::span<const T> u, std::span<const T> c);

template <typename T>
void ScoreBackward(const nn::ParamSet<T>& p, std::span<const T> u,
                   std::span<const T> c, T d_logit, std::span<T> d_u,
                   std::span<T> d_c, nn::ParamSet<T>* g);

inline constexpr double kLogClamp = 1e-12;

// -(sum_{y=1} log s + sum_{y=0} log(1 - s)), each log argument clamped
// below at 1e-12.
double ScoringLoss(const std::vector<double>& scores, const std::vector<int>& gold);

// d ScoringLoss / d logit for one entity, consistent with the clamp.
double ScoringLogitGrad(double score, int gold);

// --- Tagging ----------------------------------------------------------------

// 1 (I-Time) inside any span, 0 (O) elsewhere. Overlapping spans throw
// ConfigError.
std::vector<int> TagsFromEntities(const corpus::Document& doc,
                                  const std::vector<corpus::EntitySpan>& spans);

// Emissions [n, 2] = P^T v_i + q.
template <typename T>
nn::Tensor<T> CrfEmissions(const nn::ParamSet<T>& p, const nn::Tensor<T>& states);

// CRF negative log likelihood of `tags` from the email states. Gradients
// scaled by `scale` go to P, q, T and d_states when `g` is non-null.
template <typename T>
double CrfTaggingLoss(const nn::ParamSet<T>& p, const nn::Tensor<T>& states,
                      const std::vector<int>& tags, T scale, nn::Tensor<T>* d_states,
                      nn::ParamSet<T>* g);

// --- Joint loss -------------------------------------------------------------

struct Example {
  DocIds ids;
  std::vector<std::pair<int, int>> candidates;  // inclusive token ranges
  std::vector<int> labels;                      // per candidate, 0 / 1
  std::vector<int> tags;                        // per token
};

// Labels: a candidate is positive iff its token range equals a gold
// relevant entity's. Tags come from the gold relevant entities.
Example MakeExample(const corpus::AnnotatedDocument& doc,
                    const std::vector<corpus::EntitySpan>& candidates,
                    const Vocab& vocab);

struct LossParts {
  double scoring = 0;
  double tagging = 0;
  double total = 0;  // gamma * scoring + (1 - gamma) * tagging
  std::vector<double> probabilities;
};

// One document's gamma-weighted loss over a single shared email encoding.
// Gradients are accumulated into `grads` when non-null; dropout is sampled
// when `dropout_rng` is non-null. Terms with zero weight are skipped.
template <typename T>
LossParts JointLoss(const nn::ParamSet<T>& p, const nn::Hyper& h, const Example& ex,
                    double gamma, nn::ParamSet<T>* grads = nullptr,
                    Rng* dropout_rng = nullptr);

template <typename T>
struct CandidateScore {
  double probability = 0;
  std::vector<T> alpha;
};

// Inference scores for each candidate range.
template <typename T>
std::vector<CandidateScore<T>> ScoreCandidates(
    const nn::ParamSet<T>& p, const nn::Hyper& h, const DocIds& ids,
    const std::vector<std::pair<int, int>>& candidates);

}  // namespace timescope::scorer

#endif  // TIMESCOPE_SCORER_NETWORK_H_
