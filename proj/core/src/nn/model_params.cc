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

#include "timescope/nn/model_params.h"

#include "timescope/error.h"
#include "timescope/nn/layers.h"
#include "timescope/rng.h"

namespace timescope::nn {

template <typename T>
ParamSet<T> ModelParamShapes(const Hyper& h, int word_vocab, int char_vocab) {
  h.Validate();
  if (word_vocab < 1 || char_vocab < 1) throw ConfigError("empty vocabulary");
  const int de = h.entity_dim(), dw = h.email_dim(), hid = h.rnn_hidden;
  ParamSet<T> p;
  p.Add("word_lookup", {word_vocab, h.word_emb_dim});
  p.Add("char_lookup", {char_vocab, h.char_emb_dim});
  p.Add("char_conv_W", {h.char_filters, h.conv_width * h.char_emb_dim});
  p.Add("char_conv_b", {h.char_filters});
  AddBiGruParams(&p, "entity_rnn", h.word_emb_dim + h.char_filters, hid);
  for (int l = 0; l < h.email_rnn_layers; ++l) {
    AddBiGruParams(&p, "email_rnn.l" + std::to_string(l),
                   l == 0 ? h.word_emb_dim : 2 * hid, hid);
  }
  p.Add("attn_A", {de, dw});
  p.Add("attn_b", {de});
  p.Add("attn_B", {de});
  p.Add("attn_d", {1});
  p.Add("score_M", {de + dw});
  p.Add("score_g", {1});
  p.Add("crf_P", {dw, kNumTags});
  p.Add("crf_q", {kNumTags});
  p.Add("crf_T", {kNumTags, kNumTags});
  return p;
}

ParamSet<float> InitModelParams(const Hyper& hyper, int word_vocab, int char_vocab) {
  ParamSet<float> p = ModelParamShapes<float>(hyper, word_vocab, char_vocab);
  Rng rng(hyper.seed);
  GlorotInit(&p, &rng);
  return p;
}

template <typename T>
void CheckModelParams(const ParamSet<T>& params, const Hyper& hyper, int word_vocab,
                      int char_vocab) {
  const ParamSet<T> ref = ModelParamShapes<T>(hyper, word_vocab, char_vocab);
  if (params.size() != ref.size()) {
    throw FormatError("model has " + std::to_string(params.size()) +
                      " tensors, expected " + std::to_string(ref.size()));
  }
  for (size_t i = 0; i < ref.size(); ++i) {
    if (params.name(i) != ref.name(i)) {
      throw FormatError("tensor " + std::to_string(i) + " is '" + params.name(i) +
                        "', expected '" + ref.name(i) + "'");
    }
    if (params.tensor(i).shape() != ref.tensor(i).shape()) {
      throw FormatError("tensor '" + ref.name(i) + "' has shape " +
                        ShapeString(params.tensor(i).shape()) + ", expected " +
                        ShapeString(ref.tensor(i).shape()));
    }
  }
}

template ParamSet<float> ModelParamShapes<float>(const Hyper&, int, int);
template ParamSet<double> ModelParamShapes<double>(const Hyper&, int, int);
template void CheckModelParams<float>(const ParamSet<float>&, const Hyper&, int, int);
template void CheckModelParams<double>(const ParamSet<double>&, const Hyper&, int,
                                       int);

}  // namespace timescope::nn
