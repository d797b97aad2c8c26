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

#ifndef TIMESCOPE_NN_ADAM_H_
#define TIMESCOPE_NN_ADAM_H_

#include "timescope/nn/param_set.h"

namespace timescope::nn {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

template <typename T>
struct AdamState {
  ParamSet<T> m;
  ParamSet<T> v;
  long step = 0;

  static AdamState For(const ParamSet<T>& params) {
    return {params.ZerosLike(), params.ZerosLike(), 0};
  }
};

// One bias-corrected Adam update. Throws NumericError on a non-finite
// gradient and ConfigError on shape mismatch; params are untouched then.
template <typename T>
void AdamStep(ParamSet<T>* params, const ParamSet<T>& grads, AdamState<T>* state,
              double learning_rate, const AdamConfig& config = {});

// Scales grads so their global L2 norm is at most max_norm. Returns the
// norm before scaling.
template <typename T>
double ClipGlobalNorm(ParamSet<T>* grads, double max_norm);

}  // namespace timescope::nn

#endif  // TIMESCOPE_NN_ADAM_H_
