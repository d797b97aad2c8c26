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

#include "timescope/nn/adam.h"

#include <cmath>

namespace timescope::nn {

template <typename T>
void AdamStep(ParamSet<T>* params, const ParamSet<T>& grads, AdamState<T>* state,
              double learning_rate, const AdamConfig& config) {
  if (grads.size() != params->size() || state->m.size() != params->size()) {
    throw ConfigError("adam: parameter and gradient sets differ");
  }
  for (size_t i = 0; i < params->size(); ++i) {
    if (grads.tensor(i).shape() != params->tensor(i).shape()) {
      throw ConfigError("adam: shape mismatch for '" + params->name(i) + "'");
    }
    if (!grads.tensor(i).AllFinite()) {
      throw NumericError("adam: non-finite gradient for '" + params->name(i) + "'");
    }
  }
  ++state->step;
  const double c1 = 1.0 - std::pow(config.beta1, static_cast<double>(state->step));
  const double c2 = 1.0 - std::pow(config.beta2, static_cast<double>(state->step));
  const T b1 = static_cast<T>(config.beta1), b2 = static_cast<T>(config.beta2);
  for (size_t i = 0; i < params->size(); ++i) {
    Tensor<T>& p = params->tensor(i);
    const Tensor<T>& g = grads.tensor(i);
    Tensor<T>& m = state->m.tensor(i);
    Tensor<T>& v = state->v.tensor(i);
    for (size_t k = 0; k < p.size(); ++k) {
      m[k] = b1 * m[k] + (T(1) - b1) * g[k];
      v[k] = b2 * v[k] + (T(1) - b2) * g[k] * g[k];
      const double m_hat = m[k] / c1;
      const double v_hat = v[k] / c2;
      p[k] -= static_cast<T>(learning_rate * m_hat /
                             (std::sqrt(v_hat) + config.epsilon));
    }
  }
}

template <typename T>
double ClipGlobalNorm(ParamSet<T>* grads, double max_norm) {
  double sq = 0;
  for (size_t i = 0; i < grads->size(); ++i) {
    for (T v : grads->tensor(i).values()) sq += static_cast<double>(v) * v;
  }
  const double norm = std::sqrt(sq);
  if (max_norm > 0 && norm > max_norm) {
    const T scale = static_cast<T>(max_norm / norm);
    for (size_t i = 0; i < grads->size(); ++i) {
      for (T& v : grads->tensor(i).values()) v *= scale;
    }
  }
  return norm;
}

template void AdamStep<float>(ParamSet<float>*, const ParamSet<float>&,
                              AdamState<float>*, double, const AdamConfig&);
template void AdamStep<double>(ParamSet<double>*, const ParamSet<double>&,
                               AdamState<double>*, double, const AdamConfig&);
template double ClipGlobalNorm<float>(ParamSet<float>*, double);
template double ClipGlobalNorm<double>(ParamSet<double>*, double);

}  // namespace timescope::nn
