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

#include "timescope/corpus/document.h"

#include "timescope/error.h"
#include "timescope/unicode.h"

namespace timescope::corpus {

Document::Document(std::string id, std::string text, std::vector<Token> tokens,
                   std::vector<Sentence> sentences)
    : id_(std::move(id)),
      text_(std::move(text)),
      tokens_(std::move(tokens)),
      sentences_(std::move(sentences)) {
  byte_offsets_.clear();
  byte_offsets_.reserve(text_.size() + 1);
  for (size_t i = 0; i < text_.size(); ++i) {
    if ((static_cast<unsigned char>(text_[i]) & 0xC0) != 0x80) {
      byte_offsets_.push_back(i);
    }
  }
  byte_offsets_.push_back(text_.size());
}

std::string Document::Slice(int start, int end) const {
  if (start < 0 || end < start || end >= static_cast<int>(byte_offsets_.size())) {
    throw FormatError("document '" + id_ + "': slice [" + std::to_string(start) +
                      "," + std::to_string(end) + ") out of range");
  }
  return text_.substr(byte_offsets_[start],
                      byte_offsets_[end] - byte_offsets_[start]);
}

std::string Document::SpanText(int first_token, int last_token) const {
  return Slice(tokens_.at(first_token).char_start,
               tokens_.at(last_token).char_end);
}

int Document::TokenStartingAt(int char_offset) const {
  // Tokens are sorted by offset.
  int lo = 0, hi = num_tokens();
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (tokens_[mid].char_start < char_offset) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return (lo < num_tokens() && tokens_[lo].char_start == char_offset) ? lo : -1;
}

int Document::TokenEndingAt(int char_offset) const {
  int lo = 0, hi = num_tokens();
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (tokens_[mid].char_end < char_offset) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return (lo < num_tokens() && tokens_[lo].char_end == char_offset) ? lo : -1;
}

void Document::Validate() const {
  auto fail = [&](const std::string& what) {
    throw FormatError("document '" + id_ + "': " + what);
  };
  int prev_end = 0;
  int prev_sentence = 0;
  for (int i = 0; i < num_tokens(); ++i) {
    const Token& t = tokens_[i];
    if (t.char_start >= t.char_end) fail("empty token " + std::to_string(i));
    if (t.char_start < prev_end) fail("overlapping token " + std::to_string(i));
    if (t.char_end > num_code_points()) fail("token past end of text");
    if (t.sentence_index < prev_sentence) fail("sentence index decreases");
    if (Slice(t.char_start, t.char_end) != t.text) {
      fail("token " + std::to_string(i) + " text does not match offsets");
    }
    prev_end = t.char_end;
    prev_sentence = t.sentence_index;
  }
  int next = 0;
  for (size_t s = 0; s < sentences_.size(); ++s) {
    const Sentence& sent = sentences_[s];
    if (sent.first_token != next || sent.last_token < sent.first_token) {
      fail("sentence ranges do not partition tokens");
    }
    for (int i = sent.first_token; i <= sent.last_token; ++i) {
      if (tokens_[i].sentence_index != static_cast<int>(s)) {
        fail("token sentence_index disagrees with sentence ranges");
      }
    }
    next = sent.last_token + 1;
  }
  if (next != num_tokens()) fail("sentence ranges do not cover all tokens");
}

EntitySpan MakeSpan(const Document& doc, int first, int last,
                    std::string source_rule) {
  return EntitySpan{first, last, doc.SpanText(first, last),
                    std::move(source_rule)};
}

void ValidateEntities(const AnnotatedDocument& ad) {
  const Document& doc = ad.doc;
  auto fail = [&](const std::string& what) {
    throw FormatError("document '" + doc.id() + "': " + what);
  };
  int prev_last = -1;
  for (const AnnotatedEntity& e : ad.entities) {
    const EntitySpan& s = e.span;
    if (s.first_token < 0 || s.last_token >= doc.num_tokens() ||
        s.first_token > s.last_token) {
      fail("entity token range out of bounds");
    }
    if (s.first_token <= prev_last) fail("entities overlap or are unsorted");
    if (doc.tokens()[s.first_token].sentence_index !=
        doc.tokens()[s.last_token].sentence_index) {
      fail("entity '" + s.surface + "' crosses a sentence boundary");
    }
    if (s.surface != doc.SpanText(s.first_token, s.last_token)) {
      fail("entity surface does not match covered text");
    }
    if (e.negated && !e.relevant) {
      fail("entity '" + s.surface + "' is negated but not relevant");
    }
    prev_last = s.last_token;
  }
}

}  // namespace timescope::corpus
