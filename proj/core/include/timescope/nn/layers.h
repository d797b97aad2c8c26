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

#ifndef TIMESCOPE_NN_LAYERS_H_
#define TIMESCOPE_NN_LAYERS_H_

#include <span>
#include <string>
#include <vector>

#include "timescope/nn/param_set.h"
#include "timescope/nn/tensor.h"
#include "timescope/rng.h"

namespace timescope::nn {

template <typename T>
T Sigmoid(T x);

// --- Character CNN ----------------------------------------------------------
//
// Character embeddings -> 1-D convolution (odd width, zero padding, stride 1)
// -> ReLU -> max over time. Output has one value per filter.

template <typename T>
struct CharCnnParams {
  const Tensor<T>* embedding;  // [num_chars, char_dim]
  const Tensor<T>* filters;    // [num_filters, width * char_dim]
  const Tensor<T>* bias;       // [num_filters]
  int width = 3;
};

template <typename T>
struct CharCnnGrads {
  Tensor<T>* embedding;
  Tensor<T>* filters;
  Tensor<T>* bias;
};

template <typename T>
struct CharCnnTrace {
  std::vector<int> ids;
  Tensor<T> windows;        // [len, width * char_dim]
  std::vector<int> argmax;  // per filter
  std::vector<T> max_pre;   // per filter, before ReLU
  std::vector<T> output;    // per filter
};

template <typename T>
CharCnnTrace<T> CharCnnForward(const CharCnnParams<T>& p, std::span<const int> ids);

template <typename T>
void CharCnnBackward(const CharCnnParams<T>& p, const CharCnnTrace<T>& trace,
                     std::span<const T> d_output, const CharCnnGrads<T>& g);

// --- GRU --------------------------------------------------------------------
//
// Gates stacked [reset; update; candidate] in W [3H, in], U [3H, H],
// b [3H]:
//   r = sigmoid(W_r x + U_r h + b_r)
//   z = sigmoid(W_z x + U_z h + b_z)
//   n = tanh(W_n x + U_n (r * h) + b_n)
//   h' = (1 - z) * n + z * h
// from h_0 = 0.

template <typename T>
struct GruParams {
  const Tensor<T>* w;
  const Tensor<T>* u;
  const Tensor<T>* b;
  int hidden() const { return u->cols(); }
};

template <typename T>
struct GruGrads {
  Tensor<T>* w;
  Tensor<T>* u;
  Tensor<T>* b;
};

// Parameters named "<prefix>.W", "<prefix>.U", "<prefix>.b".
template <typename T>
GruParams<T> GruParamsFrom(const ParamSet<T>& params, const std::string& prefix);
template <typename T>
GruGrads<T> GruGradsFrom(ParamSet<T>* grads, const std::string& prefix);
template <typename T>
void AddGruParams(ParamSet<T>* params, const std::string& prefix, int input,
                  int hidden);

// Per-step values in processing order (reversed when `reverse`).
template <typename T>
struct GruTrace {
  bool reverse = false;
  Tensor<T> inputs;  // [n, in], input order
  Tensor<T> states;  // [n + 1, H], row 0 is h_0
  Tensor<T> reset;   // [n, H]
  Tensor<T> update;  // [n, H]
  Tensor<T> cand;    // [n, H]
  Tensor<T> reset_h; // [n, H], r * h_prev

  int length() const { return inputs.rows(); }
  // Output for input position `pos`.
  std::span<const T> OutputAt(int pos) const {
    return states.row((reverse ? length() - 1 - pos : pos) + 1);
  }
};

template <typename T>
GruTrace<T> GruForward(const GruParams<T>& p, const Tensor<T>& inputs,
                       bool reverse);

// d_outputs is [n, H] by input position; d_inputs [n, in] is accumulated.
template <typename T>
void GruBackward(const GruParams<T>& p, const GruTrace<T>& trace,
                 const Tensor<T>& d_outputs, const GruGrads<T>& g,
                 Tensor<T>* d_inputs);

// --- Bidirectional GRU ------------------------------------------------------

template <typename T>
struct BiGruParams {
  GruParams<T> fwd;
  GruParams<T> bwd;
};

template <typename T>
struct BiGruGrads {
  GruGrads<T> fwd;
  GruGrads<T> bwd;
};

// "<prefix>.fwd.*" and "<prefix>.bwd.*".
template <typename T>
BiGruParams<T> BiGruParamsFrom(const ParamSet<T>& params, const std::string& prefix);
template <typename T>
BiGruGrads<T> BiGruGradsFrom(ParamSet<T>* grads, const std::string& prefix);
template <typename T>
void AddBiGruParams(ParamSet<T>* params, const std::string& prefix, int input,
                    int hidden);

template <typename T>
struct BiGruTrace {
  GruTrace<T> fwd;
  GruTrace<T> bwd;
};

template <typename T>
BiGruTrace<T> BiGruForward(const BiGruParams<T>& p, const Tensor<T>& inputs);

// [n, 2H]: per-step [forward; backward].
template <typename T>
Tensor<T> BiGruAllStates(const BiGruTrace<T>& trace);

// [2H]: [forward state after the last input; backward state after the first].
template <typename T>
std::vector<T> BiGruFinalStates(const BiGruTrace<T>& trace);

template <typename T>
void BiGruBackwardAll(const BiGruParams<T>& p, const BiGruTrace<T>& trace,
                      const Tensor<T>& d_states, const BiGruGrads<T>& g,
                      Tensor<T>* d_inputs);

template <typename T>
void BiGruBackwardFinal(const BiGruParams<T>& p, const BiGruTrace<T>& trace,
                        std::span<const T> d_final, const BiGruGrads<T>& g,
                        Tensor<T>* d_inputs);

// --- Dropout ----------------------------------------------------------------

// Inverted dropout mask: each entry 0 or 1 / (1 - rate).
template <typename T>
Tensor<T> DropoutMask(const std::vector<int>& shape, double rate, Rng* rng);

// --- Initialisation -----------------------------------------------------------

// Uniform in +-sqrt(6 / (fan_in + fan_out)) for matrices, +-sqrt(3 / dim)
// for embedding rows, zero for biases (names ending in "b", "_b", "_q",
// "_d", "_g").
template <typename T>
void GlorotInit(ParamSet<T>* params, Rng* rng);

}  // namespace timescope::nn

#endif  // TIMESCOPE_NN_LAYERS_H_
