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

#ifndef TIMESCOPE_CORPUS_TOKENIZER_H_
#define TIMESCOPE_CORPUS_TOKENIZER_H_

#include <string>

#include "timescope/corpus/document.h"

namespace timescope::corpus {

// Deterministic whitespace + punctuation tokenizer with PTB-style clitic
// splitting ("won't" -> "wo" "n't", "cannot" -> "can" "not", "let's" ->
// "let" "'s"). Sentences end at . ! ? followed by whitespace and a capital
// letter (abbreviations such as "Dr." are kept whole and never end a
// sentence) and at blank lines.
Document Tokenize(const std::string& text, std::string id = {});

}  // namespace timescope::corpus

#endif  // TIMESCOPE_CORPUS_TOKENIZER_H_
