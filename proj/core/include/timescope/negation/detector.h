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

#ifndef TIMESCOPE_NEGATION_DETECTOR_H_
#define TIMESCOPE_NEGATION_DETECTOR_H_

#include <optional>
#include <string>
#include <vector>

#include "timescope/corpus/document.h"
#include "timescope/corpus/parses.h"
#include "timescope/negation/cues.h"
#include "timescope/negation/scope.h"

namespace timescope::negation {

enum class Via { kNone, kNarrow, kWide, kImplied };

const char* ViaName(Via via);

struct NegationDecision {
  corpus::EntitySpan entity;
  bool negated = false;
  std::optional<Cue> cue;
  Via via = Via::kNone;
  // Document token range of the entity inside the deciding scope; the whole
  // entity for implied cues. Empty when not negated.
  int part_first = -1;
  int part_last = -1;
  std::string negated_part;
};

// What was computed for one cue.
struct CueAnalysis {
  Cue cue;
  bool parsed = false;     // a dependency tree was available
  int governor = -1;       // sentence-local
  Scope narrow{ScopeKind::kNarrow, {}};
  Scope wide{ScopeKind::kWide, {}};
  bool narrow_hit = false;  // some entity intersected the narrow scope
  bool cancelled = false;   // implied cue inside an explicit narrow scope
};

struct DetectionResult {
  std::vector<NegationDecision> decisions;  // one per input entity, same order
  std::vector<CueAnalysis> cues;
  std::vector<std::string> warnings;
};

// Per sentence and cue:
//  * explicit: entities meeting the narrow scope are negated; when none
//    do, entities meeting the wide scope are.
//  * implied: every entity of the sentence is negated, unless the cue
//    itself lies inside an explicit cue's narrow scope.
//  * an explicit cue in a sentence without a dependency parse negates the
//    whole sentence (reported as implied) and adds a warning.
// The first cue that negates an entity decides it.
DetectionResult Detect(const corpus::Document& doc,
                       const std::vector<corpus::EntitySpan>& entities,
                       const corpus::ParseBundle& parses,
                       const CueLexicon& lex = CueLexicon::Default());

}  // namespace timescope::negation

#endif  // TIMESCOPE_NEGATION_DETECTOR_H_
