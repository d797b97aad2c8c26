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

#ifndef TIMESCOPE_CORPUS_SYNTHETIC_H_
#define TIMESCOPE_CORPUS_SYNTHETIC_H_

#include <cstdint>
#include <string>

#include "timescope/corpus/document.h"

namespace timescope::corpus {

// Generated scheduling emails with gold labels and parse sidecars.
struct SyntheticCorpus {
  Corpus corpus;
  std::string dependency;    // CoNLL-U blocks for the negation sentences
  std::string constituency;  // one bracketed tree per negation sentence
};

// Templated emails: scheduling requests with relevant times, distractor
// times in non-scheduling clauses, person names that double as months, and
// round(0.1 * n_docs) documents carrying a negation constraint. Relevant
// and distractor times are annotated (relevant=true / false); name
// homographs are not. Sidecar blocks carry "# doc_id" and "# sent_index"
// comments. Deterministic in (seed, n_docs).
SyntheticCorpus GenerateSynthetic(uint64_t seed, int n_docs);

}  // namespace timescope::corpus

#endif  // TIMESCOPE_CORPUS_SYNTHETIC_H_
