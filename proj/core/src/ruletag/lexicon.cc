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

#include "timescope/ruletag/lexicon.h"

#include <fstream>
#include <istream>
#include <sstream>
#include <utility>

#include "timescope/error.h"
#include "timescope/unicode.h"

namespace timescope::ruletag {
namespace {

TimeLexicon BuildDefault() {
  TimeLexicon lex;
  const std::pair<TimeType, const char*> groups[] = {
      {TimeType::kMonth,
       "january february march april may june july august september october "
       "november december jan feb mar apr jun jul aug sep sept oct nov dec"},
      {TimeType::kWeekday,
       "monday tuesday wednesday thursday friday saturday sunday mon tue tues "
       "wed thu thur thurs fri sat sun mondays tuesdays wednesdays thursdays "
       "fridays saturdays sundays"},
      {TimeType::kHoliday,
       "christmas xmas thanksgiving easter halloween hanukkah diwali passover "
       "ramadan"},
      {TimeType::kUnit,
       "day days week weeks month months year years hour hours minute minutes "
       "fortnight quarter weekday weekdays"},
      {TimeType::kPeriod,
       "morning mornings afternoon afternoons evening evenings night nights "
       "noon midnight midday weekend weekends lunchtime eod eow"},
      {TimeType::kRelative, "today tomorrow yesterday tonight tmrw tmr"},
      {TimeType::kModifier,
       "next last this early late coming following previous mid upcoming "
       "every past"},
      {TimeType::kMeridiem, "am pm a.m. p.m."},
  };
  for (const auto& [type, words] : groups) {
    std::istringstream in(words);
    std::string w;
    while (in >> w) lex.Add(w, type);
  }
  return lex;
}

}  // namespace

const char* TimeTypeName(TimeType t) {
  switch (t) {
    case TimeType::kMonth: return "MONTH";
    case TimeType::kWeekday: return "WEEKDAY";
    case TimeType::kHoliday: return "HOLIDAY";
    case TimeType::kUnit: return "UNIT";
    case TimeType::kPeriod: return "PERIOD";
    case TimeType::kRelative: return "RELATIVE";
    case TimeType::kModifier: return "MODIFIER";
    case TimeType::kMeridiem: return "MERIDIEM";
  }
  return "?";
}

std::optional<TimeType> ParseTimeType(const std::string& name) {
  for (TimeType t : {TimeType::kMonth, TimeType::kWeekday, TimeType::kHoliday,
                     TimeType::kUnit, TimeType::kPeriod, TimeType::kRelative,
                     TimeType::kModifier, TimeType::kMeridiem}) {
    if (name == TimeTypeName(t)) return t;
  }
  return std::nullopt;
}

const TimeLexicon& TimeLexicon::Default() {
  static const TimeLexicon* lex = new TimeLexicon(BuildDefault());
  return *lex;
}

void TimeLexicon::Add(const std::string& token, TimeType type) {
  const std::string key = AsciiLower(token);
  auto [it, inserted] = entries_.emplace(key, type);
  if (!inserted && it->second != type) {
    throw FormatError("lexicon: '" + key + "' maps to both " +
                      TimeTypeName(it->second) + " and " + TimeTypeName(type));
  }
}

TimeLexicon TimeLexicon::Parse(std::istream& in, bool extend_default) {
  TimeLexicon lex = extend_default ? Default() : TimeLexicon();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string token, type_name, extra;
    if (!(ls >> token)) continue;
    if (!(ls >> type_name) || (ls >> extra)) {
      throw FormatError("lexicon line " + std::to_string(lineno) +
                        ": expected 'token TYPE'");
    }
    const auto type = ParseTimeType(type_name);
    if (!type) {
      throw FormatError("lexicon line " + std::to_string(lineno) +
                        ": unknown type '" + type_name + "'");
    }
    try {
      lex.Add(token, *type);
    } catch (const FormatError& e) {
      throw FormatError("lexicon line " + std::to_string(lineno) + ": " +
                        e.what());
    }
  }
  return lex;
}

TimeLexicon TimeLexicon::Load(const std::string& path) {
  if (path.empty()) return Default();
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open lexicon '" + path + "'");
  return Parse(in, true);
}

std::optional<TimeType> TimeLexicon::Find(const std::string& token) const {
  std::string key = AsciiLower(token);
  auto it = entries_.find(key);
  if (it != entries_.end()) return it->second;
  if (key.size() > 1 && key.back() == '.') {
    key.pop_back();
    it = entries_.find(key);
    if (it != entries_.end()) return it->second;
  }
  return std::nullopt;
}

size_t TimeLexicon::CountOf(TimeType t) const {
  size_t n = 0;
  for (const auto& [k, v] : entries_) n += (v == t);
  return n;
}

}  // namespace timescope::ruletag
