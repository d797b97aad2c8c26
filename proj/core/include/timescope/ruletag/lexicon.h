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

#ifndef TIMESCOPE_RULETAG_LEXICON_H_
#define TIMESCOPE_RULETAG_LEXICON_H_

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace timescope::ruletag {

enum class TimeType {
  kMonth,
  kWeekday,
  kHoliday,
  kUnit,      // day, week, month, ...
  kPeriod,    // morning, afternoon, ...
  kRelative,  // today, tomorrow, ...
  kModifier,  // next, last, this, early, ...
  kMeridiem,  // am, pm
};

const char* TimeTypeName(TimeType t);
std::optional<TimeType> ParseTimeType(const std::string& name);

class TimeLexicon {
 public:
  // The built-in English lexicon: every month and weekday with common
  // abbreviations, holidays, units, day periods, relative days, modifiers.
  static const TimeLexicon& Default();

  // Reads "token TYPE" lines ('#' starts a comment) layered over the
  // built-in lexicon. A key mapped to two different types, within the file
  // or against the built-in entries, throws FormatError. An empty path
  // returns the built-in lexicon.
  static TimeLexicon Load(const std::string& path);
  static TimeLexicon Parse(std::istream& in, bool extend_default = true);

  // Adds an entry; throws FormatError on a conflicting type.
  void Add(const std::string& token, TimeType type);

  // Case-insensitive lookup; a trailing period ("Jan.") is ignored.
  std::optional<TimeType> Find(const std::string& token) const;

  const std::map<std::string, TimeType>& entries() const { return entries_; }
  size_t CountOf(TimeType t) const;

 private:
  std::map<std::string, TimeType> entries_;
};

}  // namespace timescope::ruletag

#endif  // TIMESCOPE_RULETAG_LEXICON_H_
