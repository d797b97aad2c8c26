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

#ifndef TIMESCOPE_SCORER_THRESHOLD_H_
#define TIMESCOPE_SCORER_THRESHOLD_H_

#include <vector>

namespace timescope::scorer {

struct ThresholdChoice {
  double threshold = 0.5;
  double f1 = 0;
  bool degenerate = false;  // gold had a single class; threshold is 0.5
};

// F1 of the predictions score > t against 0/1 gold.
double F1AtThreshold(const std::vector<double>& scores, const std::vector<int>& gold,
                     double t);

// Tries every distinct score as t and keeps the F1 maximiser; ties go to
// the higher t.
ThresholdChoice SelectThreshold(const std::vector<double>& scores,
                                const std::vector<int>& gold);

}  // namespace timescope::scorer

#endif  // TIMESCOPE_SCORER_THRESHOLD_H_
