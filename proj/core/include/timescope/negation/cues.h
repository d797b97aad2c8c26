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

#ifndef TIMESCOPE_NEGATION_CUES_H_
#define TIMESCOPE_NEGATION_CUES_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "timescope/corpus/document.h"

namespace timescope::negation {

enum class CueKind { kExplicit, kImplied };

const char* CueKindName(CueKind kind);

struct CueEntry {
  std::vector<std::string> tokens;  // lowercase
  CueKind kind = CueKind::kExplicit;
};

class CueLexicon {
 public:
  // 18 explicit cues (n't, not, never, ..., except, none) and 8 implied
  // ones (out of office, ooo, ..., busy).
  static const CueLexicon& Default();

  // Space-separated phrase. Adding the same phrase twice with different
  // kinds throws ConfigError.
  void Add(const std::string& phrase, CueKind kind);

  // One "explicit|implied phrase..." entry per line, '#' comments. Entries
  // extend the default lexicon unless `extend_default` is false.
  static CueLexicon Parse(std::istream& in, bool extend_default = true);
  // Empty path gives the default lexicon.
  static CueLexicon Load(const std::string& path);

  const std::vector<CueEntry>& entries() const { return entries_; }
  int CountOf(CueKind kind) const;
  int max_length() const { return max_length_; }

 private:
  std::vector<CueEntry> entries_;
  int max_length_ = 0;
};

// Sentence-local token range [first, last].
struct Cue {
  int sentence = 0;
  int first = 0;
  int last = 0;
  CueKind kind = CueKind::kExplicit;
  std::string text;  // matched surface, tokens joined by spaces
  std::string pos;   // POS of the cue head once a parse is known

  bool operator==(const Cue&) const = default;
};

// Leftmost-longest matching over lowercased tokens; matches never overlap.
// Typographic apostrophes match ASCII ones.
std::vector<Cue> FindCues(const std::vector<std::string>& tokens,
                          const CueLexicon& lex = CueLexicon::Default());

// Cues in one sentence of a document, with the sentence index filled in.
std::vector<Cue> FindCues(const corpus::Document& doc, int sentence,
                          const CueLexicon& lex = CueLexicon::Default());

}  // namespace timescope::negation

#endif  // TIMESCOPE_NEGATION_CUES_H_
