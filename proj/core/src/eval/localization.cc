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

#include "timescope/eval/localization.h"

#include <algorithm>
#include <numeric>

#include "timescope/error.h"

namespace timescope::eval {

TwoMeans SplitTwoMeans(const std::vector<double>& values) {
  const int n = static_cast<int>(values.size());
  if (n < 2) throw ConfigError("two-means split needs at least two values");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return values[a] < values[b]; });
  std::vector<double> sum(n + 1, 0.0), sq(n + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    const double v = values[order[i]];
    sum[i + 1] = sum[i] + v;
    sq[i + 1] = sq[i] + v * v;
  }
  auto sse = [&](int a, int b) {  // [a, b)
    const double s = sum[b] - sum[a];
    return (sq[b] - sq[a]) - s * s / (b - a);
  };
  int best = 1;
  double best_sse = sse(0, 1) + sse(1, n);
  for (int k = 2; k < n; ++k) {
    const double e = sse(0, k) + sse(k, n);
    if (e < best_sse) {
      best_sse = e;
      best = k;
    }
  }
  TwoMeans r;
  r.low.assign(order.begin(), order.begin() + best);
  r.high.assign(order.begin() + best, order.end());
  std::sort(r.low.begin(), r.low.end());
  std::sort(r.high.begin(), r.high.end());
  r.low_mean = sum[best] / best;
  r.high_mean = (sum[n] - sum[best]) / (n - best);
  r.sse = std::max(0.0, best_sse);
  return r;
}

OverlapScore LocalizationOverlap(const std::vector<double>& alpha,
                                 const corpus::EntitySpan& entity) {
  if (alpha.size() < 2) throw ConfigError("localization needs at least two weights");
  OverlapScore out;
  const auto [lo, hi] = std::minmax_element(alpha.begin(), alpha.end());
  if (*lo == *hi) {
    out.degenerate = true;
    return out;
  }
  const TwoMeans split = SplitTwoMeans(alpha);
  const bool high = split.high.size() <= split.low.size();
  out.localized = high ? split.high : split.low;
  int inside = 0;
  for (int t : out.localized) inside += entity.Contains(t);
  out.value = static_cast<double>(inside) / static_cast<double>(out.localized.size());
  return out;
}

OverlapScore LocalizationOverlap(const std::vector<float>& alpha,
                                 const corpus::EntitySpan& entity) {
  return LocalizationOverlap(std::vector<double>(alpha.begin(), alpha.end()), entity);
}

std::array<int, 10> OverlapHistogram(const std::vector<double>& scores) {
  std::array<int, 10> bins{};
  for (double s : scores) {
    const int b = std::clamp(static_cast<int>(s * 10), 0, 9);
    ++bins[b];
  }
  return bins;
}

}  // namespace timescope::eval
