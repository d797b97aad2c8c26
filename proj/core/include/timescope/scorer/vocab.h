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

#ifndef TIMESCOPE_SCORER_VOCAB_H_
#define TIMESCOPE_SCORER_VOCAB_H_

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "timescope/corpus/document.h"

namespace timescope::scorer {

// Word and character vocabularies. Id 0 is the shared unknown entry in
// both tables. Words are lowercased with every ASCII digit mapped to '0';
// characters keep their case.
class Vocab {
 public:
  static constexpr int kUnknown = 0;

  Vocab();

  // Words seen at least `min_word_count` times (and every character seen)
  // in the corpus, ordered by first occurrence.
  static Vocab Build(const corpus::Corpus& corpus, int min_word_count);

  static std::string NormalizeWord(const std::string& token);

  int WordId(const std::string& token) const;
  std::vector<int> CharIds(const std::string& token) const;

  int num_words() const { return static_cast<int>(words_.size()); }
  int num_chars() const { return static_cast<int>(chars_.size()); }
  const std::vector<std::string>& words() const { return words_; }
  const std::vector<std::string>& chars() const { return chars_; }

  // Persisted as the "words" and "chars" string tables of a model file.
  std::map<std::string, std::vector<std::string>> ToTables() const;
  static Vocab FromTables(const std::map<std::string, std::vector<std::string>>& t);

  bool operator==(const Vocab& o) const {
    return words_ == o.words_ && chars_ == o.chars_;
  }

 private:
  void AddWord(const std::string& w);
  void AddChar(const std::string& c);

  std::vector<std::string> words_;
  std::vector<std::string> chars_;
  std::unordered_map<std::string, int> word_index_;
  std::unordered_map<std::string, int> char_index_;
};

}  // namespace timescope::scorer

#endif  // TIMESCOPE_SCORER_VOCAB_H_
