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

#ifndef TIMESCOPE_CORPUS_DOCUMENT_H_
#define TIMESCOPE_CORPUS_DOCUMENT_H_

#include <string>
#include <string_view>
#include <vector>

namespace timescope::corpus {

// Offsets are code points into Document::text, end exclusive.
struct Token {
  std::string text;
  int char_start = 0;
  int char_end = 0;
  int sentence_index = 0;
  std::string pos;  // Penn tag when a parse supplied one, else empty.

  bool operator==(const Token&) const = default;
};

// Inclusive token range.
struct Sentence {
  int first_token = 0;
  int last_token = 0;

  int size() const { return last_token - first_token + 1; }
  bool operator==(const Sentence&) const = default;
};

class Document {
 public:
  Document() = default;
  Document(std::string id, std::string text, std::vector<Token> tokens,
           std::vector<Sentence> sentences);

  const std::string& id() const { return id_; }
  const std::string& text() const { return text_; }
  const std::vector<Token>& tokens() const { return tokens_; }
  const std::vector<Sentence>& sentences() const { return sentences_; }
  int num_tokens() const { return static_cast<int>(tokens_.size()); }
  int num_code_points() const {
    return static_cast<int>(byte_offsets_.size()) - 1;
  }

  // UTF-8 text for code-point range [start, end).
  std::string Slice(int start, int end) const;

  // Covered text of an inclusive token range.
  std::string SpanText(int first_token, int last_token) const;

  // Token whose char_start / char_end equals the offset, or -1.
  int TokenStartingAt(int char_offset) const;
  int TokenEndingAt(int char_offset) const;

  void set_pos(int token, std::string pos) { tokens_[token].pos = std::move(pos); }

  // Checks the Token/Document invariants; throws FormatError naming the id.
  void Validate() const;

  bool operator==(const Document& o) const {
    return id_ == o.id_ && text_ == o.text_ && tokens_ == o.tokens_ &&
           sentences_ == o.sentences_;
  }

 private:
  std::string id_;
  std::string text_;
  std::vector<Token> tokens_;
  std::vector<Sentence> sentences_;
  std::vector<size_t> byte_offsets_{0};  // code point -> byte, size n+1
};

struct EntitySpan {
  int first_token = 0;
  int last_token = 0;  // inclusive
  std::string surface;
  std::string source_rule;

  int size() const { return last_token - first_token + 1; }
  bool Contains(int token) const {
    return token >= first_token && token <= last_token;
  }
  bool Overlaps(const EntitySpan& o) const {
    return first_token <= o.last_token && o.first_token <= last_token;
  }
  bool SameRange(const EntitySpan& o) const {
    return first_token == o.first_token && last_token == o.last_token;
  }
  bool operator==(const EntitySpan&) const = default;
};

// Builds a span over [first, last] with surface taken from the document.
EntitySpan MakeSpan(const Document& doc, int first, int last,
                    std::string source_rule = {});

struct AnnotatedEntity {
  EntitySpan span;
  bool relevant = false;
  bool negated = false;  // implies relevant

  bool operator==(const AnnotatedEntity&) const = default;
};

struct AnnotatedDocument {
  Document doc;
  std::vector<AnnotatedEntity> entities;

  bool operator==(const AnnotatedDocument&) const = default;
};

using Corpus = std::vector<AnnotatedDocument>;

// Checks entity invariants against the document: ranges valid, sorted,
// non-overlapping, within one sentence, negated => relevant.
void ValidateEntities(const AnnotatedDocument& doc);

}  // namespace timescope::corpus

#endif  // TIMESCOPE_CORPUS_DOCUMENT_H_
