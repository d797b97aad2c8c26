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

#ifndef TIMESCOPE_RULETAG_EXTRACTOR_H_
#define TIMESCOPE_RULETAG_EXTRACTOR_H_

#include <string>
#include <vector>

#include "timescope/corpus/document.h"
#include "timescope/ruletag/lexicon.h"

namespace timescope::ruletag {

// Per-token class used by the span builder.
enum class TokenClass {
  kOther,
  kCore,       // month, weekday, holiday, period, relative, clock, date
  kUnit,       // needs a modifier or numeral on the left to become a core
  kModifier,
  kMeridiem,
  kOrdinal,    // 21st, third
  kNumeral,    // 3, two
  kConnector,  // at, of
};

struct TokenInfo {
  TokenClass cls = TokenClass::kOther;
  std::string rule;  // lexicon type or pattern name for cores
};

// Classifies one token against the lexicon and the built-in patterns
// (h:mm clocks, 3pm, 4-digit military times, m/d dates, ISO dates,
// ordinals, numerals).
TokenInfo ClassifyToken(const std::string& token, const TimeLexicon& lex);

// Sorted, non-overlapping, maximal candidate spans.
struct CandidateSet {
  std::vector<corpus::EntitySpan> entities;
};

// Recall-first extraction: every core token seeds a group, groups absorb
// neighbouring modifiers / numerals / ordinals / meridiems, and groups that
// touch or are separated by a single "at" / "of" merge. Spans stay within
// a sentence. Homographs such as "May" are kept.
CandidateSet ExtractCandidates(const corpus::Document& doc,
                               const TimeLexicon& lex = TimeLexicon::Default());

}  // namespace timescope::ruletag

#endif  // TIMESCOPE_RULETAG_EXTRACTOR_H_
