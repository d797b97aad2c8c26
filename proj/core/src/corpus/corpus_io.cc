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

#include "timescope/corpus/corpus_io.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "timescope/corpus/tokenizer.h"
#include "timescope/error.h"
#include "timescope/unicode.h"

namespace timescope::corpus {
namespace {

using ordered_json = nlohmann::ordered_json;

struct RawEntity {
  int start;
  int end;
  bool relevant;
  bool negated;
};

AnnotatedDocument Build(std::string id, std::string text,
                        const std::vector<RawEntity>& raw,
                        const std::string& where) {
  AnnotatedDocument ad;
  ad.doc = Tokenize(text, id);
  for (const RawEntity& r : raw) {
    const int first = ad.doc.TokenStartingAt(r.start);
    const int last = ad.doc.TokenEndingAt(r.end);
    if (first < 0 || last < 0 || last < first) {
      throw FormatError(where + ": document '" + id + "': entity [" +
                        std::to_string(r.start) + "," + std::to_string(r.end) +
                        ") does not align with token boundaries");
    }
    ad.entities.push_back({MakeSpan(ad.doc, first, last, "gold"), r.relevant,
                           r.negated});
  }
  std::sort(ad.entities.begin(), ad.entities.end(),
            [](const AnnotatedEntity& a, const AnnotatedEntity& b) {
              return a.span.first_token < b.span.first_token;
            });
  try {
    ValidateEntities(ad);
  } catch (const FormatError& e) {
    throw FormatError(where + ": " + e.what());
  }
  return ad;
}

// --- timeml-lite ------------------------------------------------------------

std::string DecodeEntities(std::string_view s) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '&') {
      const size_t semi = s.find(';', i);
      if (semi != std::string_view::npos) {
        const std::string_view name = s.substr(i + 1, semi - i - 1);
        const char* rep = nullptr;
        if (name == "amp") rep = "&";
        if (name == "lt") rep = "<";
        if (name == "gt") rep = ">";
        if (name == "quot") rep = "\"";
        if (name == "apos") rep = "'";
        if (rep != nullptr) {
          out += rep;
          i = semi;
          continue;
        }
      }
    }
    out.push_back(s[i]);
  }
  return out;
}

struct Tag {
  std::string name;
  bool closing = false;
  std::vector<std::pair<std::string, std::string>> attrs;
};

Tag ParseTag(std::string_view body, int line) {
  Tag tag;
  size_t p = 0;
  if (p < body.size() && body[p] == '/') {
    tag.closing = true;
    ++p;
  }
  while (p < body.size() && !std::isspace(static_cast<unsigned char>(body[p])) &&
         body[p] != '/') {
    tag.name.push_back(body[p++]);
  }
  while (p < body.size()) {
    while (p < body.size() && (std::isspace(static_cast<unsigned char>(body[p])) ||
                               body[p] == '/')) {
      ++p;
    }
    if (p >= body.size()) break;
    std::string key;
    while (p < body.size() && body[p] != '=' &&
           !std::isspace(static_cast<unsigned char>(body[p]))) {
      key.push_back(body[p++]);
    }
    if (p >= body.size() || body[p] != '=') {
      throw FormatError("line " + std::to_string(line) + ": attribute '" + key +
                        "' in <" + tag.name + "> has no value");
    }
    ++p;
    if (p >= body.size() || (body[p] != '"' && body[p] != '\'')) {
      throw FormatError("line " + std::to_string(line) +
                        ": unquoted attribute value for '" + key + "'");
    }
    const char q = body[p++];
    const size_t close = body.find(q, p);
    if (close == std::string_view::npos) {
      throw FormatError("line " + std::to_string(line) +
                        ": unterminated attribute value for '" + key + "'");
    }
    tag.attrs.emplace_back(key, DecodeEntities(body.substr(p, close - p)));
    p = close + 1;
  }
  return tag;
}

const std::string* FindAttr(const Tag& tag, const std::string& key) {
  for (const auto& [k, v] : tag.attrs) {
    if (k == key) return &v;
  }
  return nullptr;
}

bool BoolAttr(const Tag& tag, const std::string& key, bool fallback, int line) {
  const std::string* v = FindAttr(tag, key);
  if (v == nullptr) return fallback;
  if (*v == "true") return true;
  if (*v == "false") return false;
  throw FormatError("line " + std::to_string(line) + ": attribute '" + key +
                    "' must be true or false");
}

Corpus ReadTimeml(std::istream& in) {
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string src = ss.str();

  Corpus corpus;
  int line = 1;
  std::string doc_id;
  bool in_doc = false, in_text = false;
  int doc_line = 0;
  std::string text;
  std::vector<RawEntity> entities;
  int timex_start = -1;
  Tag timex;
  int timex_line = 0;
  int anon = 0;

  size_t i = 0;
  while (i < src.size()) {
    if (src[i] == '<') {
      const size_t close = src.find('>', i);
      if (close == std::string::npos) {
        throw FormatError("line " + std::to_string(line) + ": unterminated tag");
      }
      const std::string_view body(src.data() + i + 1, close - i - 1);
      const int tag_line = line;
      for (size_t k = i; k < close; ++k) {
        if (src[k] == '\n') ++line;
      }
      i = close + 1;
      if (body.empty() || body[0] == '?' || body[0] == '!') continue;
      Tag tag = ParseTag(body, tag_line);
      if (tag.name == "DOC") {
        if (!tag.closing) {
          if (in_doc) {
            throw FormatError("line " + std::to_string(tag_line) +
                              ": nested <DOC>");
          }
          in_doc = true;
          doc_line = tag_line;
          const std::string* id = FindAttr(tag, "id");
          doc_id = id ? *id : "doc" + std::to_string(anon++);
          text.clear();
          entities.clear();
        } else {
          if (!in_doc) {
            throw FormatError("line " + std::to_string(tag_line) +
                              ": </DOC> without <DOC>");
          }
          corpus.push_back(Build(doc_id, text, entities,
                                 "line " + std::to_string(doc_line)));
          in_doc = false;
        }
      } else if (tag.name == "TEXT") {
        if (!in_doc) {
          throw FormatError("line " + std::to_string(tag_line) +
                            ": <TEXT> outside <DOC>");
        }
        in_text = !tag.closing;
      } else if (tag.name == "TIMEX3") {
        if (!in_text) {
          throw FormatError("line " + std::to_string(tag_line) +
                            ": <TIMEX3> outside <TEXT>");
        }
        if (!tag.closing) {
          if (timex_start >= 0) {
            throw FormatError("line " + std::to_string(tag_line) +
                              ": nested <TIMEX3>");
          }
          timex_start = static_cast<int>(CodePointLength(text));
          timex = tag;
          timex_line = tag_line;
        } else {
          if (timex_start < 0) {
            throw FormatError("line " + std::to_string(tag_line) +
                              ": </TIMEX3> without opening tag");
          }
          const bool relevant = BoolAttr(timex, "relevant", true, timex_line);
          const bool negated = BoolAttr(timex, "negated", false, timex_line);
          entities.push_back({timex_start, static_cast<int>(CodePointLength(text)),
                              relevant, negated});
          timex_start = -1;
        }
      }
      continue;
    }
    const size_t next = src.find('<', i);
    const size_t stop = next == std::string::npos ? src.size() : next;
    const std::string_view chunk(src.data() + i, stop - i);
    for (char c : chunk) {
      if (c == '\n') ++line;
    }
    if (in_text) text += DecodeEntities(chunk);
    i = stop;
  }
  if (in_doc) {
    throw FormatError("line " + std::to_string(doc_line) + ": unterminated <DOC>");
  }
  return corpus;
}

// --- jsonl --------------------------------------------------------------------

template <typename T>
T Field(const ordered_json& obj, const char* key, int line) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw FormatError("line " + std::to_string(line) + ": missing field '" +
                      key + "'");
  }
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw FormatError("line " + std::to_string(line) + ": field '" + key +
                      "' has the wrong type");
  }
}

}  // namespace

CorpusFormat ParseCorpusFormat(const std::string& name) {
  if (name == "jsonl") return CorpusFormat::kJsonl;
  if (name == "timeml-lite" || name == "timeml") return CorpusFormat::kTimemlLite;
  throw ConfigError("unknown corpus format '" + name + "'");
}

AnnotatedDocument ParseJsonlRecord(const std::string& record, int line) {
  ordered_json obj;
  try {
    obj = ordered_json::parse(record);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("line " + std::to_string(line) + ": invalid JSON (" +
                      e.what() + ")");
  }
  if (!obj.is_object()) {
    throw FormatError("line " + std::to_string(line) + ": record is not an object");
  }
  auto id = Field<std::string>(obj, "id", line);
  auto text = Field<std::string>(obj, "text", line);
  auto ents = Field<ordered_json>(obj, "entities", line);
  if (!ents.is_array()) {
    throw FormatError("line " + std::to_string(line) +
                      ": field 'entities' must be an array");
  }
  std::vector<RawEntity> raw;
  for (const auto& e : ents) {
    if (!e.is_object()) {
      throw FormatError("line " + std::to_string(line) +
                        ": entity must be an object");
    }
    raw.push_back({Field<int>(e, "start", line), Field<int>(e, "end", line),
                   Field<bool>(e, "relevant", line),
                   Field<bool>(e, "negated", line)});
  }
  return Build(std::move(id), std::move(text), raw,
               "line " + std::to_string(line));
}

std::string FormatJsonlRecord(const AnnotatedDocument& ad) {
  ordered_json obj;
  obj["id"] = ad.doc.id();
  obj["text"] = ad.doc.text();
  obj["entities"] = ordered_json::array();
  for (const AnnotatedEntity& e : ad.entities) {
    ordered_json je;
    je["start"] = ad.doc.tokens()[e.span.first_token].char_start;
    je["end"] = ad.doc.tokens()[e.span.last_token].char_end;
    je["relevant"] = e.relevant;
    je["negated"] = e.negated;
    obj["entities"].push_back(std::move(je));
  }
  return obj.dump();
}

Corpus ReadCorpus(std::istream& in, CorpusFormat format) {
  if (format == CorpusFormat::kTimemlLite) return ReadTimeml(in);
  Corpus corpus;
  std::string record;
  int line = 0;
  while (std::getline(in, record)) {
    ++line;
    if (record.find_first_not_of(" \t\r") == std::string::npos) continue;
    corpus.push_back(ParseJsonlRecord(record, line));
  }
  return corpus;
}

Corpus ReadCorpus(const std::string& path, CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open corpus '" + path + "'");
  try {
    return ReadCorpus(in, format);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void WriteCorpus(const Corpus& corpus, std::ostream& out) {
  for (const AnnotatedDocument& ad : corpus) {
    ValidateEntities(ad);
    out << FormatJsonlRecord(ad) << '\n';
  }
}

void WriteCorpus(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write corpus '" + path + "'");
  WriteCorpus(corpus, out);
  if (!out) throw Error("I/O failure writing '" + path + "'");
}

}  // namespace timescope::corpus
