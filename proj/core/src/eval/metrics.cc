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

#include "timescope/eval/metrics.h"

#include <algorithm>

#include "timescope/error.h"

namespace timescope::eval {
namespace {

void CheckDisjoint(std::vector<corpus::EntitySpan> spans, const char* what) {
  std::sort(spans.begin(), spans.end(), [](const auto& a, const auto& b) {
    return a.first_token < b.first_token;
  });
  for (size_t i = 1; i < spans.size(); ++i) {
    if (spans[i].Overlaps(spans[i - 1])) {
      throw ConfigError(std::string("overlapping ") + what + " spans");
    }
  }
}

struct Counts {
  long tp = 0, fp = 0, fn = 0;
};

void Count(const std::vector<corpus::EntitySpan>& gold,
           const std::vector<corpus::EntitySpan>& pred, Counts* strict, Counts* relaxed) {
  CheckDisjoint(gold, "gold");
  CheckDisjoint(pred, "predicted");
  long exact = 0;
  for (const auto& g : gold) {
    bool hit = false, overlap = false;
    for (const auto& p : pred) {
      hit = hit || g.SameRange(p);
      overlap = overlap || g.Overlaps(p);
    }
    exact += hit;
    (overlap ? relaxed->tp : relaxed->fn) += 1;
  }
  for (const auto& p : pred) {
    bool overlap = false;
    for (const auto& g : gold) overlap = overlap || g.Overlaps(p);
    if (!overlap) relaxed->fp += 1;
  }
  strict->tp += exact;
  strict->fp += static_cast<long>(pred.size()) - exact;
  strict->fn += static_cast<long>(gold.size()) - exact;
}

}  // namespace

Prf Prf::FromCounts(long tp, long fp, long fn, bool empty_is_perfect) {
  Prf r;
  r.tp = tp;
  r.fp = fp;
  r.fn = fn;
  if (empty_is_perfect && tp == 0 && fp == 0 && fn == 0) {
    r.precision = r.recall = r.f1 = 1.0;
    return r;
  }
  r.precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / (tp + fp);
  r.recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / (tp + fn);
  r.f1 = r.precision + r.recall == 0
             ? 0.0
             : 2 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

DetectionReport DetectionMetrics(const std::vector<corpus::EntitySpan>& gold,
                                 const std::vector<corpus::EntitySpan>& pred) {
  return DetectionMetrics(std::vector<DocumentSpans>{{gold, pred}});
}

DetectionReport DetectionMetrics(const std::vector<DocumentSpans>& docs) {
  Counts strict, relaxed;
  for (const auto& d : docs) Count(d.gold, d.pred, &strict, &relaxed);
  return {Prf::FromCounts(strict.tp, strict.fp, strict.fn),
          Prf::FromCounts(relaxed.tp, relaxed.fp, relaxed.fn)};
}

Prf NegationMetrics(const std::set<EntityKey>& universe, const std::set<EntityKey>& gold,
                    const std::set<EntityKey>& pred) {
  for (const auto* set : {&gold, &pred}) {
    for (const auto& k : *set) {
      if (!universe.count(k)) {
        throw ConfigError("entity [" + std::to_string(k.first) + "," +
                          std::to_string(k.last) + "] of document '" + k.doc +
                          "' is not in the entity universe");
      }
    }
  }
  long tp = 0;
  for (const auto& k : pred) tp += gold.count(k);
  return Prf::FromCounts(tp, static_cast<long>(pred.size()) - tp,
                         static_cast<long>(gold.size()) - tp, /*empty_is_perfect=*/true);
}

}  // namespace timescope::eval
