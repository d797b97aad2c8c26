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

#ifndef TIMESCOPE_NN_HYPER_H_
#define TIMESCOPE_NN_HYPER_H_

#include <cstdint>
#include <map>
#include <string>

namespace timescope::nn {

// Model and training hyperparameters. Defaults are the reference sizes:
// 16-dim char embeddings into 128 width-3 filters, 50-dim word lookup,
// 64-unit bidirectional GRUs, a 2-layer email encoder with dropout 0.5,
// gamma 0.99, 75 epochs with patience 20.
struct Hyper {
  int char_emb_dim = 16;
  int char_filters = 128;
  int conv_width = 3;
  int word_emb_dim = 50;
  int rnn_hidden = 64;
  int email_rnn_layers = 2;
  double dropout = 0.5;
  double gamma = 0.99;
  int epochs = 75;
  int patience = 20;
  double learning_rate = 1e-3;
  double grad_clip = 5.0;  // global L2 norm; 0 disables
  int min_word_count = 2;
  uint64_t seed = 1;

  int entity_dim() const { return 2 * rnn_hidden; }  // d_e
  int email_dim() const { return 2 * rnn_hidden; }   // d_w

  // Throws ConfigError on out-of-range values.
  void Validate() const;

  // Flat key=value view used by the container header and config files.
  std::map<std::string, std::string> ToMap() const;
  // Applies recognised keys; unknown keys are ignored and returned false.
  bool Set(const std::string& key, const std::string& value);
  static Hyper FromMap(const std::map<std::string, std::string>& kv);

  bool operator==(const Hyper&) const = default;
};

}  // namespace timescope::nn

#endif  // TIMESCOPE_NN_HYPER_H_
