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

#ifndef TIMESCOPE_EVAL_COMPARE_H_
#define TIMESCOPE_EVAL_COMPARE_H_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "timescope/eval/metrics.h"

namespace timescope::eval {

// Flat metric name -> value view of a report, e.g. "strict.precision".
using MetricMap = std::map<std::string, double>;

void AddMetrics(const Prf& prf, const std::string& prefix, MetricMap* out);
MetricMap ToMetricMap(const DetectionReport& report, const std::string& prefix = {});

struct DeltaRow {
  std::string metric;
  double a = 0;
  double b = 0;
  double delta = 0;  // b - a
};

// Throws ConfigError unless both maps have the same metric names.
std::vector<DeltaRow> CompareRuns(const MetricMap& a, const MetricMap& b);

std::string FormatDeltaTable(const std::vector<DeltaRow>& rows);

// "name=value" lines in name order, values printed with %.17g so they
// round-trip.
std::string FormatKeyValues(const MetricMap& metrics);
// Blank lines and '#' comments are ignored; throws FormatError naming the
// line otherwise.
MetricMap ParseKeyValues(std::istream& in);

}  // namespace timescope::eval

#endif  // TIMESCOPE_EVAL_COMPARE_H_
