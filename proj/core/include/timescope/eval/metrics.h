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

#ifndef TIMESCOPE_EVAL_METRICS_H_
#define TIMESCOPE_EVAL_METRICS_H_

#include <compare>
#include <set>
#include <string>
#include <vector>

#include "timescope/corpus/document.h"

namespace timescope::eval {

struct Prf {
  long tp = 0;
  long fp = 0;
  long fn = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;

  // Rates from counts. A zero denominator gives 0, or 1 for every rate
  // when `empty_is_perfect` and all counts are zero.
  static Prf FromCounts(long tp, long fp, long fn, bool empty_is_perfect = false);
  bool operator==(const Prf&) const = default;
};

struct DetectionReport {
  Prf strict;   // exact token range
  Prf relaxed;  // any token overlap
  bool operator==(const DetectionReport&) const = default;
};

// Spans of one document. Strict: exact range matches. Relaxed: a gold span
// is a tp when any prediction overlaps it, a prediction overlapping no gold
// span is an fp. Overlapping spans within gold or within pred throw
// ConfigError.
DetectionReport DetectionMetrics(const std::vector<corpus::EntitySpan>& gold,
                                 const std::vector<corpus::EntitySpan>& pred);

struct DocumentSpans {
  std::vector<corpus::EntitySpan> gold;
  std::vector<corpus::EntitySpan> pred;
};

// Counts summed over documents, then rates.
DetectionReport DetectionMetrics(const std::vector<DocumentSpans>& docs);

struct EntityKey {
  std::string doc;
  int first = 0;
  int last = 0;
  auto operator<=>(const EntityKey&) const = default;
};

// tp = |gold & pred|, fp = |pred - gold|, fn = |gold - pred|. Both sets
// empty gives P = R = F1 = 1. Keys outside the universe throw ConfigError.
Prf NegationMetrics(const std::set<EntityKey>& universe, const std::set<EntityKey>& gold,
                    const std::set<EntityKey>& pred);

}  // namespace timescope::eval

#endif  // TIMESCOPE_EVAL_METRICS_H_
