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

#include "timescope/scorer/threshold.h"

#include <algorithm>
#include <numeric>

#include "timescope/error.h"

namespace timescope::scorer {
namespace {

double F1(long tp, long fp, long fn) {
  const long denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0 : 2.0 * tp / denom;
}

}  // namespace

double F1AtThreshold(const std::vector<double>& scores, const std::vector<int>& gold,
                     double t) {
  if (scores.size() != gold.size()) throw ConfigError("threshold: size mismatch");
  long tp = 0, fp = 0, fn = 0;
  for (size_t i = 0; i < scores.size(); ++i) {
    const bool pred = scores[i] > t;
    if (pred && gold[i]) ++tp;
    if (pred && !gold[i]) ++fp;
    if (!pred && gold[i]) ++fn;
  }
  return F1(tp, fp, fn);
}

ThresholdChoice SelectThreshold(const std::vector<double>& scores,
                                const std::vector<int>& gold) {
  if (scores.size() != gold.size()) throw ConfigError("threshold: size mismatch");
  const long positives = std::count_if(gold.begin(), gold.end(), [](int g) { return g != 0; });
  const long n = static_cast<long>(gold.size());
  ThresholdChoice best;
  if (positives == 0 || positives == n) {
    best.degenerate = true;
    best.f1 = F1AtThreshold(scores, gold, best.threshold);
    return best;
  }
  // Descending sweep: at each distinct value t, the predicted set is every
  // score strictly above t.
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return scores[a] > scores[b]; });
  long tp = 0, fp = 0;
  best.f1 = -1;
  size_t i = 0;
  while (i < order.size()) {
    const double t = scores[order[i]];
    const double f1 = F1(tp, fp, positives - tp);
    if (f1 > best.f1) {
      best.f1 = f1;
      best.threshold = t;
    }
    while (i < order.size() && scores[order[i]] == t) {
      (gold[order[i]] ? tp : fp) += 1;
      ++i;
    }
  }
  return best;
}

}  // namespace timescope::scorer
