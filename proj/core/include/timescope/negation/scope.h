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

#ifndef TIMESCOPE_NEGATION_SCOPE_H_
#define TIMESCOPE_NEGATION_SCOPE_H_

#include <vector>

#include "timescope/corpus/parses.h"
#include "timescope/negation/cues.h"

namespace timescope::negation {

enum class ScopeKind { kNarrow, kWide };

struct Scope {
  ScopeKind kind = ScopeKind::kNarrow;
  std::vector<int> tokens;  // sentence-local, sorted, unique

  bool Contains(int token) const;
  bool operator==(const Scope&) const = default;
};

// The cue token whose dependency head lies outside the cue.
int CueHead(const Cue& cue, const corpus::DependencyTree& dep);

// Head of the cue head; the cue head itself when it is the root.
int Governor(const Cue& cue, const corpus::DependencyTree& dep);

// Smallest constituent covering the cue and the governor, restricted to the
// tokens after the cue (the tokens before it when nothing follows), minus
// punctuation and minus the subtrees of the governor's advcl dependents.
// Without a constituency tree the whole sentence is the candidate.
Scope NarrowScope(const Cue& cue, int governor, const corpus::ConstituencyTree* tree,
                  const corpus::DependencyTree& dep);

// Subtrees of the governor's nsubj / nsubjpass / npadvmod dependents and of
// a prep dependent that precedes the governor and its auxiliaries (a PP
// subject), plus the bare aux / auxpass dependents. A subjectless
// governor inside a conj chain borrows the first conjunct's subject.
Scope WideScope(int governor, const corpus::DependencyTree& dep);

}  // namespace timescope::negation

#endif  // TIMESCOPE_NEGATION_SCOPE_H_
