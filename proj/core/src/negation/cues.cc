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

#include "timescope/negation/cues.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "timescope/error.h"
#include "timescope/unicode.h"

namespace timescope::negation {
namespace {

std::string Normalize(const std::string& token) {
  std::string s = AsciiLower(token);
  const std::string curly = "\xE2\x80\x99";  // U+2019
  for (size_t pos; (pos = s.find(curly)) != std::string::npos;) s.replace(pos, 3, "'");
  return s;
}

CueLexicon BuildDefault() {
  CueLexicon lex;
  for (const char* p :
       {"n't", "not", "never", "neither", "nor", "no", "nothing", "nobody",
        "instead of", "without", "rather than", "failed to", "avoid", "other than",
        "unable", "negative", "except", "none"}) {
    lex.Add(p, CueKind::kExplicit);
  }
  for (const char* p : {"out of office", "ooo", "out of facility", "oof", "vacation",
                        "personal time off", "pto", "busy"}) {
    lex.Add(p, CueKind::kImplied);
  }
  return lex;
}

}  // namespace

const char* CueKindName(CueKind kind) {
  return kind == CueKind::kExplicit ? "explicit" : "implied";
}

const CueLexicon& CueLexicon::Default() {
  static const CueLexicon lex = BuildDefault();
  return lex;
}

void CueLexicon::Add(const std::string& phrase, CueKind kind) {
  CueEntry e;
  e.kind = kind;
  std::istringstream in(phrase);
  for (std::string w; in >> w;) e.tokens.push_back(Normalize(w));
  if (e.tokens.empty()) throw ConfigError("empty negation cue");
  for (const auto& other : entries_) {
    if (other.tokens == e.tokens) {
      if (other.kind != kind) throw ConfigError("cue '" + phrase + "' has two kinds");
      return;
    }
  }
  max_length_ = std::max(max_length_, static_cast<int>(e.tokens.size()));
  entries_.push_back(std::move(e));
}

CueLexicon CueLexicon::Parse(std::istream& in, bool extend_default) {
  CueLexicon lex = extend_default ? Default() : CueLexicon();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string kind_name, word, phrase;
    if (!(ls >> kind_name)) continue;
    while (ls >> word) phrase += (phrase.empty() ? "" : " ") + word;
    const std::string where = "cue lexicon line " + std::to_string(lineno);
    if (phrase.empty()) throw FormatError(where + ": expected 'KIND phrase'");
    CueKind kind;
    if (kind_name == "explicit") {
      kind = CueKind::kExplicit;
    } else if (kind_name == "implied") {
      kind = CueKind::kImplied;
    } else {
      throw FormatError(where + ": unknown kind '" + kind_name + "'");
    }
    try {
      lex.Add(phrase, kind);
    } catch (const ConfigError& e) {
      throw FormatError(where + ": " + e.what());
    }
  }
  return lex;
}

CueLexicon CueLexicon::Load(const std::string& path) {
  if (path.empty()) return Default();
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open cue lexicon '" + path + "'");
  return Parse(in, true);
}

int CueLexicon::CountOf(CueKind kind) const {
  return static_cast<int>(std::count_if(entries_.begin(), entries_.end(),
                                        [&](const CueEntry& e) { return e.kind == kind; }));
}

std::vector<Cue> FindCues(const std::vector<std::string>& tokens, const CueLexicon& lex) {
  std::vector<std::string> norm;
  for (const auto& t : tokens) norm.push_back(Normalize(t));
  std::vector<Cue> out;
  const int n = static_cast<int>(norm.size());
  for (int i = 0; i < n;) {
    const CueEntry* best = nullptr;
    for (const auto& e : lex.entries()) {
      const int len = static_cast<int>(e.tokens.size());
      if (i + len > n || (best && len <= static_cast<int>(best->tokens.size()))) continue;
      if (std::equal(e.tokens.begin(), e.tokens.end(), norm.begin() + i)) best = &e;
    }
    if (!best) {
      ++i;
      continue;
    }
    Cue c;
    c.first = i;
    c.last = i + static_cast<int>(best->tokens.size()) - 1;
    c.kind = best->kind;
    for (int k = c.first; k <= c.last; ++k) {
      if (k > c.first) c.text += ' ';
      c.text += tokens[k];
    }
    out.push_back(std::move(c));
    i += static_cast<int>(best->tokens.size());
  }
  return out;
}

std::vector<Cue> FindCues(const corpus::Document& doc, int sentence,
                          const CueLexicon& lex) {
  const corpus::Sentence& s = doc.sentences().at(sentence);
  std::vector<std::string> tokens;
  for (int t = s.first_token; t <= s.last_token; ++t) tokens.push_back(doc.tokens()[t].text);
  auto cues = FindCues(tokens, lex);
  for (auto& c : cues) {
    c.sentence = sentence;
    c.pos = doc.tokens()[s.first_token + c.first].pos;
  }
  return cues;
}

}  // namespace timescope::negation
