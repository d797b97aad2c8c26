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

#include "timescope/scorer/vocab.h"

#include "timescope/error.h"
#include "timescope/unicode.h"

namespace timescope::scorer {
namespace {

constexpr const char* kUnknownEntry = "<unk>";

std::vector<std::string> SplitChars(const std::string& token) {
  std::vector<std::string> out;
  for (char32_t c : DecodeUtf8(token)) {
    std::string s;
    AppendUtf8(c, &s);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

Vocab::Vocab() {
  AddWord(kUnknownEntry);
  AddChar(kUnknownEntry);
}

void Vocab::AddWord(const std::string& w) {
  if (word_index_.emplace(w, words_.size()).second) words_.push_back(w);
}

void Vocab::AddChar(const std::string& c) {
  if (char_index_.emplace(c, chars_.size()).second) chars_.push_back(c);
}

std::string Vocab::NormalizeWord(const std::string& token) {
  std::string w = AsciiLower(token);
  for (char& c : w) {
    if (c >= '0' && c <= '9') c = '0';
  }
  return w;
}

Vocab Vocab::Build(const corpus::Corpus& corpus, int min_word_count) {
  std::unordered_map<std::string, int> counts;
  std::vector<std::string> order;
  Vocab v;
  for (const auto& ad : corpus) {
    for (const auto& tok : ad.doc.tokens()) {
      const std::string w = NormalizeWord(tok.text);
      if (counts[w]++ == 0) order.push_back(w);
      for (const auto& c : SplitChars(tok.text)) v.AddChar(c);
    }
  }
  for (const auto& w : order) {
    if (counts[w] >= min_word_count) v.AddWord(w);
  }
  return v;
}

int Vocab::WordId(const std::string& token) const {
  auto it = word_index_.find(NormalizeWord(token));
  return it == word_index_.end() ? kUnknown : it->second;
}

std::vector<int> Vocab::CharIds(const std::string& token) const {
  std::vector<int> ids;
  for (const auto& c : SplitChars(token)) {
    auto it = char_index_.find(c);
    ids.push_back(it == char_index_.end() ? kUnknown : it->second);
  }
  return ids;
}

std::map<std::string, std::vector<std::string>> Vocab::ToTables() const {
  return {{"words", words_}, {"chars", chars_}};
}

Vocab Vocab::FromTables(const std::map<std::string, std::vector<std::string>>& t) {
  auto words = t.find("words");
  auto chars = t.find("chars");
  if (words == t.end() || chars == t.end()) {
    throw FormatError("model is missing its vocabulary tables");
  }
  if (words->second.empty() || words->second[0] != kUnknownEntry ||
      chars->second.empty() || chars->second[0] != kUnknownEntry) {
    throw FormatError("vocabulary tables must start with the unknown entry");
  }
  Vocab v;
  for (const auto& w : words->second) v.AddWord(w);
  for (const auto& c : chars->second) v.AddChar(c);
  if (v.num_words() != static_cast<int>(words->second.size()) ||
      v.num_chars() != static_cast<int>(chars->second.size())) {
    throw FormatError("vocabulary tables contain duplicates");
  }
  return v;
}

}  // namespace timescope::scorer
