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

#ifndef TIMESCOPE_EVAL_LOCALIZATION_H_
#define TIMESCOPE_EVAL_LOCALIZATION_H_

#include <array>
#include <vector>

#include "timescope/corpus/document.h"

namespace timescope::eval {

// Optimal two-cluster split of scalar values: the `low` cluster holds the
// values at or below the split, found by trying every split point of
// the sorted values and minimising the total within-cluster squared error.
struct TwoMeans {
  std::vector<int> low;   // indices into the input
  std::vector<int> high;
  double low_mean = 0;
  double high_mean = 0;
  double sse = 0;
};

// Requires at least two values.
TwoMeans SplitTwoMeans(const std::vector<double>& values);

struct OverlapScore {
  double value = 0;
  bool degenerate = false;  // all weights equal, nothing localized
  std::vector<int> localized;  // token indices of the attended cluster
};

// The smaller cluster of attention weights (the higher-mean one on equal
// sizes) is the localized context; the score is the fraction of it inside
// the entity's token range.
OverlapScore LocalizationOverlap(const std::vector<double>& alpha,
                                 const corpus::EntitySpan& entity);
OverlapScore LocalizationOverlap(const std::vector<float>& alpha,
                                 const corpus::EntitySpan& entity);

// Counts per 0.1-wide bin; 1.0 falls in the last bin.
std::array<int, 10> OverlapHistogram(const std::vector<double>& scores);

}  // namespace timescope::eval

#endif  // TIMESCOPE_EVAL_LOCALIZATION_H_
