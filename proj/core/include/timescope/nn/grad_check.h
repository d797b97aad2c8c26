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

#ifndef TIMESCOPE_NN_GRAD_CHECK_H_
#define TIMESCOPE_NN_GRAD_CHECK_H_

#include <functional>
#include <string>

#include "timescope/nn/param_set.h"

namespace timescope::nn {

// Returns the loss at `params`; when `grads` is non-null also accumulates
// the analytic gradient into it (pre-zeroed by the caller).
using LossFn = std::function<double(const ParamSet<double>& params,
                                    ParamSet<double>* grads)>;

struct GradCheckResult {
  double max_rel_error = 0;
  std::string worst_param;
  size_t worst_index = 0;
  double worst_analytic = 0;
  double worst_numeric = 0;
  size_t coordinates = 0;
};

// Central differences (f(x+eps) - f(x-eps)) / 2eps on every coordinate,
// compared with the analytic gradient by |a - n| / max(|a|, |n|, 1e-8).
// Throws NumericError if any loss evaluation is non-finite. Losses that
// sample dropout must not be checked.
GradCheckResult GradCheck(const LossFn& loss, ParamSet<double> params,
                          double epsilon = 1e-4);

}  // namespace timescope::nn

#endif  // TIMESCOPE_NN_GRAD_CHECK_H_
