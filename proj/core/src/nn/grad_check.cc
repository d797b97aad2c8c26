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

#include "timescope/nn/grad_check.h"

#include <algorithm>
#include <cmath>

namespace timescope::nn {

GradCheckResult GradCheck(const LossFn& loss, ParamSet<double> params,
                          double epsilon) {
  auto eval = [&](ParamSet<double>* grads) {
    const double v = loss(params, grads);
    if (!std::isfinite(v)) throw NumericError("grad check: non-finite loss");
    return v;
  };
  ParamSet<double> analytic = params.ZerosLike();
  eval(&analytic);

  GradCheckResult result;
  for (size_t i = 0; i < params.size(); ++i) {
    Tensor<double>& t = params.tensor(i);
    for (size_t k = 0; k < t.size(); ++k) {
      const double saved = t[k];
      t[k] = saved + epsilon;
      const double up = eval(nullptr);
      t[k] = saved - epsilon;
      const double down = eval(nullptr);
      t[k] = saved;
      const double numeric = (up - down) / (2 * epsilon);
      const double a = analytic.tensor(i)[k];
      const double rel = std::abs(a - numeric) /
                         std::max({std::abs(a), std::abs(numeric), 1e-8});
      ++result.coordinates;
      if (rel > result.max_rel_error) {
        result.max_rel_error = rel;
        result.worst_param = params.name(i);
        result.worst_index = k;
        result.worst_analytic = a;
        result.worst_numeric = numeric;
      }
    }
  }
  return result;
}

}  // namespace timescope::nn
