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

#include "timescope/scorer/network.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "timescope/error.h"
#include "timescope/scorer/crf.h"

namespace timescope::scorer {

using nn::ParamSet;
using nn::Tensor;

DocIds EncodeTokens(const corpus::Document& doc, const Vocab& vocab) {
  DocIds ids;
  ids.reserve(doc.tokens().size());
  for (const auto& tok : doc.tokens()) {
    ids.push_back({vocab.WordId(tok.text), vocab.CharIds(tok.text)});
  }
  return ids;
}

namespace {

template <typename T>
nn::CharCnnParams<T> CnnParams(const ParamSet<T>& p) {
  const Tensor<T>& w = p["char_conv_W"];
  const int width = w.cols() / p["char_lookup"].cols();
  return {&p["char_lookup"], &w, &p["char_conv_b"], width};
}

template <typename T>
nn::CharCnnGrads<T> CnnGrads(ParamSet<T>* g) {
  return {&(*g)["char_lookup"], &(*g)["char_conv_W"], &(*g)["char_conv_b"]};
}

std::string EmailLayer(int l) { return "email_rnn.l" + std::to_string(l); }

}  // namespace

// --- Entity encoder ---------------------------------------------------------

template <typename T>
EntityTrace<T> EncodeEntity(const ParamSet<T>& p, const DocIds& ids, int first,
                            int last) {
  if (first < 0 || last < first || last >= static_cast<int>(ids.size())) {
    throw ConfigError("entity range out of bounds");
  }
  const Tensor<T>& lookup = p["word_lookup"];
  const auto cnn = CnnParams(p);
  const int f = p["char_conv_W"].rows();
  const int wd = lookup.cols();
  EntityTrace<T> tr;
  tr.first = first;
  tr.last = last;
  const int l = last - first + 1;
  tr.inputs = Tensor<T>({l, f + wd});
  for (int j = 0; j < l; ++j) {
    const TokenIds& tok = ids[first + j];
    tr.cnn.push_back(nn::CharCnnForward<T>(cnn, tok.chars));
    auto row = tr.inputs.row(j);
    std::copy(tr.cnn.back().output.begin(), tr.cnn.back().output.end(), row.begin());
    auto emb = lookup.row(tok.word);
    std::copy(emb.begin(), emb.end(), row.begin() + f);
  }
  tr.rnn = nn::BiGruForward(nn::BiGruParamsFrom(p, "entity_rnn"), tr.inputs);
  tr.u = nn::BiGruFinalStates(tr.rnn);
  return tr;
}

template <typename T>
void EncodeEntityBackward(const ParamSet<T>& p, const DocIds& ids,
                          const EntityTrace<T>& tr, std::span<const T> d_u,
                          ParamSet<T>* g) {
  Tensor<T> d_inputs(tr.inputs.shape());
  nn::BiGruBackwardFinal(nn::BiGruParamsFrom(p, "entity_rnn"), tr.rnn, d_u,
                         nn::BiGruGradsFrom(g, "entity_rnn"), &d_inputs);
  const auto cnn = CnnParams(p);
  const auto cnn_grads = CnnGrads(g);
  const int f = p["char_conv_W"].rows();
  Tensor<T>& d_lookup = (*g)["word_lookup"];
  for (int j = 0; j < d_inputs.rows(); ++j) {
    auto row = std::span<const T>(d_inputs.row(j));
    nn::CharCnnBackward<T>(cnn, tr.cnn[j], row.first(f), cnn_grads);
    nn::Axpy<T>(T(1), row.subspan(f), d_lookup.row(ids[tr.first + j].word));
  }
}

// --- Email encoder ----------------------------------------------------------

template <typename T>
EmailTrace<T> EncodeEmail(const ParamSet<T>& p, const nn::Hyper& h, const DocIds& ids,
                          Rng* dropout_rng) {
  const Tensor<T>& lookup = p["word_lookup"];
  const int n = static_cast<int>(ids.size());
  EmailTrace<T> tr;
  Tensor<T> x({n, lookup.cols()});
  for (int j = 0; j < n; ++j) {
    auto emb = lookup.row(ids[j].word);
    std::copy(emb.begin(), emb.end(), x.row(j).begin());
  }
  for (int l = 0; l < h.email_rnn_layers; ++l) {
    if (l > 0 && dropout_rng != nullptr && h.dropout > 0) {
      tr.masks.push_back(nn::DropoutMask<T>(x.shape(), h.dropout, dropout_rng));
      const Tensor<T>& mask = tr.masks.back();
      for (size_t k = 0; k < x.size(); ++k) x[k] *= mask[k];
    }
    tr.layer_inputs.push_back(x);
    tr.layers.push_back(nn::BiGruForward(nn::BiGruParamsFrom(p, EmailLayer(l)), x));
    x = nn::BiGruAllStates(tr.layers.back());
  }
  tr.states = std::move(x);
  return tr;
}

template <typename T>
void EncodeEmailBackward(const ParamSet<T>& p, const nn::Hyper& h, const DocIds& ids,
                         const EmailTrace<T>& tr, const Tensor<T>& d_states,
                         ParamSet<T>* g) {
  Tensor<T> d_cur = d_states;
  for (int l = h.email_rnn_layers - 1; l >= 0; --l) {
    Tensor<T> d_in(tr.layer_inputs[l].shape());
    nn::BiGruBackwardAll(nn::BiGruParamsFrom(p, EmailLayer(l)), tr.layers[l], d_cur,
                         nn::BiGruGradsFrom(g, EmailLayer(l)), &d_in);
    if (l > 0 && !tr.masks.empty()) {
      const Tensor<T>& mask = tr.masks[l - 1];
      for (size_t k = 0; k < d_in.size(); ++k) d_in[k] *= mask[k];
    }
    d_cur = std::move(d_in);
  }
  Tensor<T>& d_lookup = (*g)["word_lookup"];
  for (int j = 0; j < d_cur.rows(); ++j) {
    nn::Axpy<T>(T(1), std::span<const T>(d_cur.row(j)), d_lookup.row(ids[j].word));
  }
}

// --- Attention ----------------------------------------------------------------

template <typename T>
Tensor<T> AttentionProjection(const ParamSet<T>& p, const Tensor<T>& states) {
  const Tensor<T>& a = p["attn_A"];
  const Tensor<T>& b = p["attn_b"];
  Tensor<T> proj({states.rows(), a.rows()});
  for (int j = 0; j < states.rows(); ++j) {
    auto row = proj.row(j);
    std::copy(b.values().begin(), b.values().end(), row.begin());
    nn::MatVec<T>(a, states.row(j), row, /*accumulate=*/true);
  }
  return proj;
}

template <typename T>
void AttentionProjectionBackward(const ParamSet<T>& p, const Tensor<T>& states,
                                 const Tensor<T>& d_proj, Tensor<T>* d_states,
                                 ParamSet<T>* g) {
  const Tensor<T>& a = p["attn_A"];
  Tensor<T>& da = (*g)["attn_A"];
  Tensor<T>& db = (*g)["attn_b"];
  for (int j = 0; j < states.rows(); ++j) {
    auto dp = d_proj.row(j);
    nn::Axpy<T>(T(1), dp, db.values());
    nn::AddOuter<T>(dp, states.row(j), &da);
    if (d_states) nn::MatTVecAdd<T>(a, dp, d_states->row(j));
  }
}

template <typename T>
AttentionResult<T> Attend(const ParamSet<T>& p, std::span<const T> u,
                          const Tensor<T>& states, const Tensor<T>& proj) {
  const Tensor<T>& bv = p["attn_B"];
  const T d = p["attn_d"][0];
  const int n = states.rows(), de = proj.cols(), dw = states.cols();
  if (static_cast<int>(u.size()) != de) throw ConfigError("attend: entity size mismatch");
  AttentionResult<T> res;
  res.act = Tensor<T>({n, de});
  std::vector<T> logits(n);
  for (int j = 0; j < n; ++j) {
    auto act = res.act.row(j);
    auto pr = proj.row(j);
    for (int k = 0; k < de; ++k) act[k] = std::tanh(pr[k] + u[k]);
    logits[j] = nn::Dot<T>(bv.values(), act) + d;
  }
  const T top = n > 0 ? *std::max_element(logits.begin(), logits.end()) : T(0);
  res.alpha.resize(n);
  T sum = 0;
  for (int j = 0; j < n; ++j) {
    res.alpha[j] = std::exp(logits[j] - top);
    sum += res.alpha[j];
  }
  res.context.assign(dw, T(0));
  for (int j = 0; j < n; ++j) {
    res.alpha[j] /= sum;
    nn::Axpy<T>(res.alpha[j], states.row(j), res.context);
  }
  return res;
}

template <typename T>
AttentionResult<T> Attend(const ParamSet<T>& p, std::span<const T> u,
                          const Tensor<T>& states) {
  return Attend(p, u, states, AttentionProjection(p, states));
}

template <typename T>
void AttendBackward(const ParamSet<T>& p, const Tensor<T>& states,
                    const AttentionResult<T>& res, std::span<const T> d_context,
                    std::span<T> d_u, Tensor<T>* d_states, Tensor<T>* d_proj,
                    ParamSet<T>* g) {
  const Tensor<T>& bv = p["attn_B"];
  Tensor<T>& d_bv = (*g)["attn_B"];
  T& d_d = (*g)["attn_d"][0];
  const int n = states.rows(), de = res.act.cols();
  Tensor<T> local_proj;
  if (d_proj == nullptr) {
    local_proj = Tensor<T>(res.act.shape());
    d_proj = &local_proj;
  }
  std::vector<T> d_alpha(n);
  T weighted = 0;
  for (int j = 0; j < n; ++j) {
    d_alpha[j] = nn::Dot<T>(d_context, states.row(j));
    weighted += res.alpha[j] * d_alpha[j];
    if (d_states) nn::Axpy<T>(res.alpha[j], d_context, d_states->row(j));
  }
  for (int j = 0; j < n; ++j) {
    const T d_logit = res.alpha[j] * (d_alpha[j] - weighted);
    if (d_logit == T(0)) continue;
    auto act = res.act.row(j);
    nn::Axpy<T>(d_logit, act, d_bv.values());
    d_d += d_logit;
    auto dp = d_proj->row(j);
    for (int k = 0; k < de; ++k) {
      const T d_pre = d_logit * bv[k] * (T(1) - act[k] * act[k]);
      dp[k] += d_pre;
      d_u[k] += d_pre;
    }
  }
  if (d_proj == &local_proj) {
    AttentionProjectionBackward(p, states, local_proj, d_states, g);
  }
}

// --- Scoring ----------------------------------------------------------------

template <typename T>
T ScoreLogit(const ParamSet<T>& p, std::span<const T> u, std::span<const T> c) {
  auto m = p["score_M"].values();
  if (m.size() != u.size() + c.size()) throw ConfigError("score: size mismatch");
  return nn::Dot<T>(m.first(u.size()), u) + nn::Dot<T>(m.subspan(u.size()), c) +
         p["score_g"][0];
}

template <typename T>
T ScoreEntity(const ParamSet<T>& p, std::span<const T> u, std::span<const T> c) {
  return nn::Sigmoid(ScoreLogit(p, u, c));
}

template <typename T>
void ScoreBackward(const ParamSet<T>& p, std::span<const T> u, std::span<const T> c,
                   T d_logit, std::span<T> d_u, std::span<T> d_c, ParamSet<T>* g) {
  auto m = p["score_M"].values();
  auto dm = (*g)["score_M"].values();
  nn::Axpy<T>(d_logit, u, dm.first(u.size()));
  nn::Axpy<T>(d_logit, c, dm.subspan(u.size()));
  (*g)["score_g"][0] += d_logit;
  nn::Axpy<T>(d_logit, m.first(u.size()), d_u);
  nn::Axpy<T>(d_logit, m.subspan(u.size()), d_c);
}

double ScoringLoss(const std::vector<double>& scores, const std::vector<int>& gold) {
  if (scores.size() != gold.size()) throw ConfigError("scoring loss: size mismatch");
  double loss = 0;
  for (size_t i = 0; i < scores.size(); ++i) {
    const double q = gold[i] ? scores[i] : 1.0 - scores[i];
    loss -= std::log(std::max(q, kLogClamp));
  }
  return loss;
}

double ScoringLogitGrad(double score, int gold) {
  if (gold) return score > kLogClamp ? -(1.0 - score) : 0.0;
  return 1.0 - score > kLogClamp ? score : 0.0;
}

// --- Tagging ----------------------------------------------------------------

std::vector<int> TagsFromEntities(const corpus::Document& doc,
                                  const std::vector<corpus::EntitySpan>& spans) {
  std::vector<int> tags(doc.num_tokens(), kTagO);
  for (const auto& s : spans) {
    if (s.first_token < 0 || s.last_token >= doc.num_tokens() ||
        s.last_token < s.first_token) {
      throw ConfigError("tag span out of range in document '" + doc.id() + "'");
    }
    for (int t = s.first_token; t <= s.last_token; ++t) {
      if (tags[t] == kTagTime) {
        throw ConfigError("overlapping gold spans in document '" + doc.id() + "'");
      }
      tags[t] = kTagTime;
    }
  }
  return tags;
}

template <typename T>
Tensor<T> CrfEmissions(const ParamSet<T>& p, const Tensor<T>& states) {
  const Tensor<T>& pm = p["crf_P"];
  const Tensor<T>& q = p["crf_q"];
  const int c = pm.cols();
  Tensor<T> e({states.rows(), c});
  for (int i = 0; i < states.rows(); ++i) {
    auto row = e.row(i);
    std::copy(q.values().begin(), q.values().end(), row.begin());
    nn::MatTVecAdd<T>(pm, states.row(i), row);
  }
  return e;
}

template <typename T>
double CrfTaggingLoss(const ParamSet<T>& p, const Tensor<T>& states,
                      const std::vector<int>& tags, T scale, Tensor<T>* d_states,
                      ParamSet<T>* g) {
  const Tensor<T> e = CrfEmissions(p, states);
  if (g == nullptr) return CrfNll<T>(e, p["crf_T"], tags, scale, nullptr, nullptr);
  Tensor<T> d_e(e.shape());
  const double loss = CrfNll<T>(e, p["crf_T"], tags, scale, &d_e, &(*g)["crf_T"]);
  const Tensor<T>& pm = p["crf_P"];
  Tensor<T>& d_pm = (*g)["crf_P"];
  Tensor<T>& d_q = (*g)["crf_q"];
  for (int i = 0; i < states.rows(); ++i) {
    auto de = d_e.row(i);
    nn::Axpy<T>(T(1), de, d_q.values());
    nn::AddOuter<T>(states.row(i), de, &d_pm);
    if (d_states) nn::MatVec<T>(pm, de, d_states->row(i), /*accumulate=*/true);
  }
  return loss;
}

// --- Joint loss -------------------------------------------------------------

Example MakeExample(const corpus::AnnotatedDocument& doc,
                    const std::vector<corpus::EntitySpan>& candidates,
                    const Vocab& vocab) {
  Example ex;
  ex.ids = EncodeTokens(doc.doc, vocab);
  std::vector<corpus::EntitySpan> gold;
  for (const auto& e : doc.entities) {
    if (e.relevant) gold.push_back(e.span);
  }
  for (const auto& c : candidates) {
    ex.candidates.emplace_back(c.first_token, c.last_token);
    int label = 0;
    for (const auto& s : gold) {
      if (s.SameRange(c)) label = 1;
    }
    ex.labels.push_back(label);
  }
  ex.tags = TagsFromEntities(doc.doc, gold);
  return ex;
}

template <typename T>
LossParts JointLoss(const ParamSet<T>& p, const nn::Hyper& h, const Example& ex,
                    double gamma, ParamSet<T>* grads, Rng* dropout_rng) {
  if (gamma < 0 || gamma > 1) throw ConfigError("gamma must lie in [0, 1]");
  LossParts parts;
  if (ex.ids.empty()) return parts;
  const EmailTrace<T> email = EncodeEmail(p, h, ex.ids, dropout_rng);
  const Tensor<T>& states = email.states;
  Tensor<T> d_states;
  if (grads) d_states = Tensor<T>(states.shape());

  if (gamma > 0 && !ex.candidates.empty()) {
    const Tensor<T> proj = AttentionProjection(p, states);
    Tensor<T> d_proj;
    if (grads) d_proj = Tensor<T>(proj.shape());
    for (size_t i = 0; i < ex.candidates.size(); ++i) {
      const auto [first, last] = ex.candidates[i];
      const EntityTrace<T> ent = EncodeEntity(p, ex.ids, first, last);
      const AttentionResult<T> att = Attend<T>(p, ent.u, states, proj);
      const T logit = ScoreLogit<T>(p, ent.u, att.context);
      const double s = nn::Sigmoid(static_cast<double>(logit));
      parts.probabilities.push_back(s);
      if (!grads) continue;
      const T d_logit = static_cast<T>(gamma * ScoringLogitGrad(s, ex.labels[i]));
      if (d_logit == T(0)) continue;
      std::vector<T> d_u(ent.u.size()), d_c(att.context.size());
      ScoreBackward<T>(p, ent.u, att.context, d_logit, d_u, d_c, grads);
      AttendBackward<T>(p, states, att, d_c, d_u, &d_states, &d_proj, grads);
      EncodeEntityBackward<T>(p, ex.ids, ent, d_u, grads);
    }
    parts.scoring = ScoringLoss(parts.probabilities, ex.labels);
    if (grads) AttentionProjectionBackward(p, states, d_proj, &d_states, grads);
  }
  if (gamma < 1) {
    parts.tagging = CrfTaggingLoss<T>(p, states, ex.tags, static_cast<T>(1 - gamma),
                                      grads ? &d_states : nullptr, grads);
  }
  parts.total = gamma * parts.scoring + (1 - gamma) * parts.tagging;
  if (grads) EncodeEmailBackward(p, h, ex.ids, email, d_states, grads);
  return parts;
}

template <typename T>
std::vector<CandidateScore<T>> ScoreCandidates(
    const ParamSet<T>& p, const nn::Hyper& h, const DocIds& ids,
    const std::vector<std::pair<int, int>>& candidates) {
  std::vector<CandidateScore<T>> out;
  if (candidates.empty()) return out;
  const EmailTrace<T> email = EncodeEmail(p, h, ids, nullptr);
  const Tensor<T> proj = AttentionProjection(p, email.states);
  for (const auto& [first, last] : candidates) {
    const EntityTrace<T> ent = EncodeEntity(p, ids, first, last);
    AttentionResult<T> att = Attend<T>(p, ent.u, email.states, proj);
    const T logit = ScoreLogit<T>(p, ent.u, att.context);
    out.push_back({nn::Sigmoid(static_cast<double>(logit)), std::move(att.alpha)});
  }
  return out;
}

#define TIMESCOPE_INSTANTIATE(T)                                                   \
  template EntityTrace<T> EncodeEntity<T>(const ParamSet<T>&, const DocIds&, int,  \
                                          int);                                    \
  template void EncodeEntityBackward<T>(const ParamSet<T>&, const DocIds&,         \
                                        const EntityTrace<T>&, std::span<const T>, \
                                        ParamSet<T>*);                             \
  template EmailTrace<T> EncodeEmail<T>(const ParamSet<T>&, const nn::Hyper&,      \
                                        const DocIds&, Rng*);                      \
  template void EncodeEmailBackward<T>(const ParamSet<T>&, const nn::Hyper&,       \
                                       const DocIds&, const EmailTrace<T>&,        \
                                       const Tensor<T>&, ParamSet<T>*);            \
  template Tensor<T> AttentionProjection<T>(const ParamSet<T>&, const Tensor<T>&); \
  template void AttentionProjectionBackward<T>(const ParamSet<T>&,                 \
                                               const Tensor<T>&, const Tensor<T>&, \
                                               Tensor<T>*, ParamSet<T>*);          \
  template AttentionResult<T> Attend<T>(const ParamSet<T>&, std::span<const T>,    \
                                        const Tensor<T>&, const Tensor<T>&);       \
  template AttentionResult<T> Attend<T>(const ParamSet<T>&, std::span<const T>,    \
                                        const Tensor<T>&);                         \
  template void AttendBackward<T>(const ParamSet<T>&, const Tensor<T>&,            \
                                  const AttentionResult<T>&, std::span<const T>,   \
                                  std::span<T>, Tensor<T>*, Tensor<T>*,            \
                                  ParamSet<T>*);                                   \
  template T ScoreLogit<T>(const ParamSet<T>&, std::span<const T>,                 \
                           std::span<const T>);                                    \
  template T ScoreEntity<T>(const ParamSet<T>&, std::span<const T>,                \
                            std::span<const T>);                                   \
  template void ScoreBackward<T>(const ParamSet<T>&, std::span<const T>,           \
                                 std::span<const T>, T, std::span<T>,              \
                                 std::span<T>, ParamSet<T>*);                      \
  template Tensor<T> CrfEmissions<T>(const ParamSet<T>&, const Tensor<T>&);        \
  template double CrfTaggingLoss<T>(const ParamSet<T>&, const Tensor<T>&,          \
                                    const std::vector<int>&, T, Tensor<T>*,        \
                                    ParamSet<T>*);                                 \
  template LossParts JointLoss<T>(const ParamSet<T>&, const nn::Hyper&,            \
                                  const Example&, double, ParamSet<T>*, Rng*);     \
  template std::vector<CandidateScore<T>> ScoreCandidates<T>(                      \
      const ParamSet<T>&, const nn::Hyper&, const DocIds&,                         \
      const std::vector<std::pair<int, int>>&);

TIMESCOPE_INSTANTIATE(float)
TIMESCOPE_INSTANTIATE(double)

#undef TIMESCOPE_INSTANTIATE

}  // namespace timescope::scorer
