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

#ifndef TIMESCOPE_SCORER_CRF_H_
#define TIMESCOPE_SCORER_CRF_H_

#include <vector>

#include "timescope/nn/tensor.h"

namespace timescope::scorer {

enum Tag : int { kTagO = 0, kTagTime = 1 };

// Linear-chain CRF over emissions [n, C] and transitions [C, C] indexed
// [current, previous]:
//   score(z) = sum_i emit[i, z_i] + sum_{i >= 1} trans[z_i, z_{i-1}]

template <typename T>
double CrfSequenceScore(const nn::Tensor<T>& emissions, const nn::Tensor<T>& trans,
                        const std::vector<int>& tags);

// log sum_z exp score(z), forward algorithm in log space.
template <typename T>
double CrfLogPartition(const nn::Tensor<T>& emissions, const nn::Tensor<T>& trans);

// Negative log likelihood log Z - score(tags). Gradients are accumulated
// into d_emissions / d_trans (same shapes) scaled by `scale` when non-null.
template <typename T>
double CrfNll(const nn::Tensor<T>& emissions, const nn::Tensor<T>& trans,
              const std::vector<int>& tags, T scale, nn::Tensor<T>* d_emissions,
              nn::Tensor<T>* d_trans);

// Highest-scoring tag sequence.
template <typename T>
std::vector<int> CrfViterbi(const nn::Tensor<T>& emissions, const nn::Tensor<T>& trans);

}  // namespace timescope::scorer

#endif  // TIMESCOPE_SCORER_CRF_H_
