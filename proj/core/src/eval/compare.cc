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

#include "timescope/eval/compare.h"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <sstream>

#include "timescope/error.h"

namespace timescope::eval {
namespace {

std::string Format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void AddMetrics(const Prf& prf, const std::string& prefix, MetricMap* out) {
  (*out)[prefix + "precision"] = prf.precision;
  (*out)[prefix + "recall"] = prf.recall;
  (*out)[prefix + "f1"] = prf.f1;
  (*out)[prefix + "tp"] = static_cast<double>(prf.tp);
  (*out)[prefix + "fp"] = static_cast<double>(prf.fp);
  (*out)[prefix + "fn"] = static_cast<double>(prf.fn);
}

MetricMap ToMetricMap(const DetectionReport& report, const std::string& prefix) {
  MetricMap m;
  AddMetrics(report.strict, prefix + "strict.", &m);
  AddMetrics(report.relaxed, prefix + "relaxed.", &m);
  return m;
}

std::vector<DeltaRow> CompareRuns(const MetricMap& a, const MetricMap& b) {
  for (const auto& [k, v] : a) {
    if (!b.count(k)) throw ConfigError("metric '" + k + "' missing from second run");
  }
  for (const auto& [k, v] : b) {
    if (!a.count(k)) throw ConfigError("metric '" + k + "' missing from first run");
  }
  std::vector<DeltaRow> rows;
  for (const auto& [k, v] : a) rows.push_back({k, v, b.at(k), b.at(k) - v});
  return rows;
}

std::string FormatDeltaTable(const std::vector<DeltaRow>& rows) {
  size_t width = 6;
  for (const auto& r : rows) width = std::max(width, r.metric.size());
  std::ostringstream out;
  auto pad = [&](const std::string& s) { return s + std::string(width - s.size(), ' '); };
  out << pad("metric") << "  " << "         a" << "  " << "         b" << "  "
      << "     delta\n";
  for (const auto& r : rows) {
    out << pad(r.metric) << "  " << Format("%10.4f", r.a) << "  "
        << Format("%10.4f", r.b) << "  " << Format("%+10.4f", r.delta) << "\n";
  }
  return out.str();
}

std::string FormatKeyValues(const MetricMap& metrics) {
  std::string out;
  for (const auto& [k, v] : metrics) out += k + "=" + Format("%.17g", v) + "\n";
  return out;
}

MetricMap ParseKeyValues(std::istream& in) {
  MetricMap m;
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    const std::string t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw FormatError("line " + std::to_string(n) + ": expected name=value");
    }
    const std::string key = Trim(t.substr(0, eq));
    const std::string val = Trim(t.substr(eq + 1));
    try {
      size_t used = 0;
      const double v = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
      m[key] = v;
    } catch (const std::exception&) {
      throw FormatError("line " + std::to_string(n) + ": '" + key +
                        "' has a non-numeric value");
    }
  }
  return m;
}

}  // namespace timescope::eval
