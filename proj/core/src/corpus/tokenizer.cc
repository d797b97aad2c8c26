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

#include "timescope/corpus/tokenizer.h"

#include <array>
#include <string_view>

#include "timescope/unicode.h"

namespace timescope::corpus {
namespace {

constexpr std::array<std::u32string_view, 23> kAbbreviations = {
    U"mr", U"mrs", U"ms", U"dr", U"prof", U"sr", U"jr", U"st",
    U"vs", U"etc", U"inc", U"ltd", U"co", U"corp", U"jan", U"feb",
    U"aug", U"sept", U"oct", U"nov", U"dec", U"approx", U"dept"};

bool IsApostrophe(char32_t c) { return c == U'\'' || c == 0x2019; }

bool IsJoiner(char32_t c) {
  return c == U'.' || c == U':' || c == U'/' || c == U'&' ||
         IsApostrophe(c);
}

std::u32string Lower(std::u32string_view s) {
  std::u32string out(s);
  for (char32_t& c : out) c = AsciiLower(c);
  return out;
}

bool IsAbbreviation(std::u32string_view word) {
  const std::u32string lw = Lower(word);
  for (auto a : kAbbreviations) {
    if (lw == a) return true;
  }
  // Dotted initialisms: "a.m", "p.m", "U.S".
  if (lw.size() >= 3) {
    bool dotted = true;
    for (size_t i = 0; i < lw.size(); ++i) {
      if ((i % 2 == 1) != (lw[i] == U'.')) dotted = false;
    }
    if (dotted) return true;
  }
  return lw.size() == 1 && IsUpper(word[0]);
}

bool IsClitic(std::u32string_view lw) {
  // lw starts with an apostrophe.
  const std::u32string_view rest = lw.substr(1);
  return rest == U"s" || rest == U"m" || rest == U"re" || rest == U"ve" ||
         rest == U"ll" || rest == U"d";
}

struct Piece {
  int start;
  int end;
};

// Splits one word piece into clitic parts.
void SplitClitics(const std::u32string& text, Piece p,
                  std::vector<Piece>* out) {
  const std::u32string lw = Lower(std::u32string_view(text).substr(
      p.start, p.end - p.start));
  const int len = p.end - p.start;
  if (lw == U"cannot") {
    out->push_back({p.start, p.start + 3});
    out->push_back({p.start + 3, p.end});
    return;
  }
  if (len > 3 && lw[len - 3] == U'n' && IsApostrophe(lw[len - 2]) &&
      lw[len - 1] == U't') {
    out->push_back({p.start, p.end - 3});
    out->push_back({p.end - 3, p.end});
    return;
  }
  for (int k = len - 1; k >= 1; --k) {
    if (IsApostrophe(lw[k])) {
      std::u32string tail = lw.substr(k);
      tail[0] = U'\'';
      if (IsClitic(tail)) {
        out->push_back({p.start, p.start + k});
        out->push_back({p.start + k, p.end});
        return;
      }
      break;
    }
  }
  out->push_back(p);
}

void SplitChunk(const std::u32string& text, int start, int end,
                std::vector<Piece>* out) {
  int p = start;
  while (p < end) {
    const char32_t c = text[p];
    if (IsWordChar(c)) {
      int q = p + 1;
      while (q < end) {
        if (IsWordChar(text[q])) {
          ++q;
        } else if (IsJoiner(text[q]) && q + 1 < end && IsWordChar(text[q + 1])) {
          q += 2;
        } else if (text[q] == U'-' && q + 1 < end && IsDigit(text[q - 1]) &&
                   IsDigit(text[q + 1])) {
          q += 2;
        } else {
          break;
        }
      }
      if (q < end && text[q] == U'.' &&
          IsAbbreviation(std::u32string_view(text).substr(p, q - p))) {
        ++q;
      }
      SplitClitics(text, {p, q}, out);
      p = q;
    } else if (IsApostrophe(c)) {
      // Standalone clitic such as "'s" after pre-tokenized input.
      int q = p + 1;
      while (q < end && IsWordChar(text[q])) ++q;
      std::u32string lw = Lower(std::u32string_view(text).substr(p, q - p));
      lw[0] = U'\'';
      if (q - p > 1 && IsClitic(lw)) {
        out->push_back({p, q});
        p = q;
      } else {
        out->push_back({p, p + 1});
        ++p;
      }
    } else {
      int q = p + 1;
      if (c == U'.' || c == U'-' || c == U'!' || c == U'?') {
        while (q < end && text[q] == c) ++q;
      }
      out->push_back({p, q});
      p = q;
    }
  }
}

bool IsTerminal(std::u32string_view tok) {
  if (tok.empty()) return false;
  for (char32_t c : tok) {
    if (c != U'.' && c != U'!' && c != U'?') return false;
  }
  return true;
}

}  // namespace

Document Tokenize(const std::string& text, std::string id) {
  const std::u32string cps = DecodeUtf8(text);
  const int n = static_cast<int>(cps.size());

  std::vector<Piece> pieces;
  int i = 0;
  while (i < n) {
    if (IsSpace(cps[i])) {
      ++i;
      continue;
    }
    int j = i;
    while (j < n && !IsSpace(cps[j])) ++j;
    SplitChunk(cps, i, j, &pieces);
    i = j;
  }

  std::vector<Token> tokens;
  std::vector<Sentence> sentences;
  tokens.reserve(pieces.size());
  int sentence = 0;
  int sentence_start = 0;
  for (size_t k = 0; k < pieces.size(); ++k) {
    const Piece& pc = pieces[k];
    Token t;
    t.text = EncodeUtf8(std::u32string_view(cps).substr(pc.start, pc.end - pc.start));
    t.char_start = pc.start;
    t.char_end = pc.end;
    t.sentence_index = sentence;
    tokens.push_back(std::move(t));

    if (k + 1 == pieces.size()) break;
    const Piece& next = pieces[k + 1];
    bool boundary = false;
    if (next.start > pc.end) {
      int newlines = 0;
      for (int g = pc.end; g < next.start; ++g) {
        if (cps[g] == U'\n') ++newlines;
      }
      if (newlines >= 2) boundary = true;
      if (IsTerminal(std::u32string_view(cps).substr(pc.start, pc.end - pc.start)) &&
          IsUpper(cps[next.start])) {
        boundary = true;
      }
    }
    if (boundary) {
      sentences.push_back({sentence_start, static_cast<int>(k)});
      sentence_start = static_cast<int>(k) + 1;
      ++sentence;
    }
  }
  if (!tokens.empty()) {
    sentences.push_back({sentence_start, static_cast<int>(tokens.size()) - 1});
  }
  return Document(std::move(id), text, std::move(tokens), std::move(sentences));
}

}  // namespace timescope::corpus
