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

#ifndef TIMESCOPE_NN_MODEL_PARAMS_H_
#define TIMESCOPE_NN_MODEL_PARAMS_H_

#include "timescope/nn/hyper.h"
#include "timescope/nn/param_set.h"

namespace timescope::nn {

// Number of tag classes in the CRF head (O, I-Time).
inline constexpr int kNumTags = 2;

// Allocates every scorer tensor with shapes derived from `hyper` and the
// vocabulary sizes, then applies GlorotInit with an Rng seeded by
// hyper.seed. Names:
//   word_lookup [V, wd]           char_lookup [Vc, cd]
//   char_conv_W [F, width*cd]     char_conv_b [F]
//   entity_rnn.{fwd,bwd}.{W,U,b}  input wd + F
//   email_rnn.l<k>.{fwd,bwd}.{W,U,b}
//   attn_A [d_e, d_w] attn_b [d_e] attn_B [d_e] attn_d [1]
//   score_M [d_e + d_w] score_g [1]
//   crf_P [d_w, 2] crf_q [2] crf_T [2, 2] (T[current, previous])
ParamSet<float> InitModelParams(const Hyper& hyper, int word_vocab, int char_vocab);

// Shape-only skeleton, zero filled.
template <typename T>
ParamSet<T> ModelParamShapes(const Hyper& hyper, int word_vocab, int char_vocab);

// Throws FormatError unless `params` has exactly the skeleton's names and
// shapes in order.
template <typename T>
void CheckModelParams(const ParamSet<T>& params, const Hyper& hyper, int word_vocab,
                      int char_vocab);

}  // namespace timescope::nn

#endif  // TIMESCOPE_NN_MODEL_PARAMS_H_
