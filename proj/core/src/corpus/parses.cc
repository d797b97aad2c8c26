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

#include "timescope/corpus/parses.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>

#include "timescope/error.h"

namespace timescope::corpus {
namespace {

std::string Trim(const std::string& s) {
  const size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> SplitColumns(const std::string& line) {
  std::vector<std::string> cols;
  const char sep = line.find('\t') != std::string::npos ? '\t' : ' ';
  std::string cur;
  for (char c : line) {
    if (c == sep || (sep == ' ' && c == '\t')) {
      if (sep == '\t' || !cur.empty()) cols.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  if (!cur.empty() || sep == '\t') cols.push_back(cur);
  return cols;
}

// Parses "# key = value" comments.
bool ParseComment(const std::string& line, std::string* key, std::string* value) {
  std::string body = Trim(line.substr(1));
  const size_t eq = body.find('=');
  if (eq == std::string::npos) return false;
  *key = Trim(body.substr(0, eq));
  *value = Trim(body.substr(eq + 1));
  return true;
}

int ParseInt(const std::string& s, int line, const char* what) {
  try {
    size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError("line " + std::to_string(line) + ": bad " + what + " '" +
                      s + "'");
  }
}

class BracketParser {
 public:
  explicit BracketParser(const std::string& s) : s_(s) {}

  std::unique_ptr<ConstituencyNode> Run() {
    Skip();
    auto node = Node();
    Skip();
    if (pos_ != s_.size()) Fail("trailing characters after tree");
    // Unwrap an unlabeled PTB root "( (S ...) )".
    while (node->label.empty() && node->children.size() == 1 &&
           !node->children[0]->is_leaf()) {
      node = std::move(node->children[0]);
    }
    int next = 0;
    Number(node.get(), &next);
    return node;
  }

 private:
  [[noreturn]] void Fail(const std::string& what) const {
    throw FormatError("bracketing: " + what + " at character " +
                      std::to_string(pos_));
  }

  void Skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
  }

  std::string Atom() {
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != '(' && s_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      out.push_back(s_[pos_++]);
    }
    return out;
  }

  std::unique_ptr<ConstituencyNode> Node() {
    if (pos_ >= s_.size() || s_[pos_] != '(') Fail("expected '('");
    ++pos_;
    Skip();
    auto node = std::make_unique<ConstituencyNode>();
    node->label = Atom();
    Skip();
    bool saw_word = false;
    while (true) {
      if (pos_ >= s_.size()) Fail("unbalanced bracketing (missing ')')");
      if (s_[pos_] == ')') {
        ++pos_;
        break;
      }
      if (s_[pos_] == '(') {
        if (saw_word) Fail("node mixes a word and subtrees");
        node->children.push_back(Node());
      } else {
        if (saw_word || !node->children.empty()) Fail("unexpected word");
        auto leaf = std::make_unique<ConstituencyNode>();
        leaf->word = Atom();
        node->children.push_back(std::move(leaf));
        saw_word = true;
      }
      Skip();
    }
    if (node->children.empty()) Fail("empty constituent");
    return node;
  }

  static void Number(ConstituencyNode* n, int* next) {
    if (n->is_leaf()) {
      n->first_leaf = n->last_leaf = (*next)++;
      return;
    }
    for (auto& c : n->children) Number(c.get(), next);
    n->first_leaf = n->children.front()->first_leaf;
    n->last_leaf = n->children.back()->last_leaf;
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

DependencyTree::DependencyTree(std::vector<std::string> forms,
                               std::vector<std::string> pos,
                               std::vector<int> heads,
                               std::vector<std::string> relations)
    : forms_(std::move(forms)),
      pos_(std::move(pos)),
      heads_(std::move(heads)),
      relations_(std::move(relations)) {
  const int n = size();
  if (static_cast<int>(forms_.size()) != n || static_cast<int>(pos_.size()) != n ||
      static_cast<int>(relations_.size()) != n) {
    throw FormatError("dependency tree: column lengths differ");
  }
  children_.assign(n, {});
  for (int i = 0; i < n; ++i) {
    if (heads_[i] == -1) {
      if (root_ != -1) throw FormatError("dependency tree: multiple roots");
      root_ = i;
    } else if (heads_[i] < 0 || heads_[i] >= n || heads_[i] == i) {
      throw FormatError("dependency tree: invalid head for token " +
                        std::to_string(i + 1));
    } else {
      children_[heads_[i]].push_back(i);
    }
  }
  if (n > 0 && root_ == -1) throw FormatError("dependency tree: no root");
  // Every node must reach the root.
  for (int i = 0; i < n; ++i) {
    int cur = i;
    for (int steps = 0; cur != -1; ++steps) {
      if (steps > n) {
        throw FormatError("dependency tree: cycle through token " +
                          std::to_string(i + 1));
      }
      cur = heads_[cur];
    }
  }
}

std::vector<int> DependencyTree::Subtree(int i) const {
  std::vector<int> out;
  std::vector<int> stack{i};
  while (!stack.empty()) {
    const int cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    for (int c : children_[cur]) stack.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ConstituencyTree::ConstituencyTree(std::unique_ptr<ConstituencyNode> root)
    : root_(std::move(root)) {}

ConstituencyTree ConstituencyTree::Parse(const std::string& bracketed) {
  return ConstituencyTree(BracketParser(bracketed).Run());
}

std::vector<std::string> ConstituencyTree::Leaves() const {
  std::vector<std::string> out;
  std::function<void(const ConstituencyNode*)> walk =
      [&](const ConstituencyNode* n) {
        if (n->is_leaf()) {
          out.push_back(n->word);
          return;
        }
        for (const auto& c : n->children) walk(c.get());
      };
  if (root_) walk(root_.get());
  return out;
}

const ConstituencyNode* ConstituencyTree::SmallestCovering(int first,
                                                           int last) const {
  const ConstituencyNode* cur = root_.get();
  if (cur == nullptr || first < cur->first_leaf || last > cur->last_leaf) {
    return nullptr;
  }
  while (true) {
    const ConstituencyNode* next = nullptr;
    for (const auto& c : cur->children) {
      // Preterminal word leaves are not constituents.
      if (c->is_leaf()) continue;
      if (c->first_leaf <= first && last <= c->last_leaf) {
        next = c.get();
        break;
      }
    }
    if (next == nullptr) return cur;
    cur = next;
  }
}

ParseIndex ParseIndex::Load(std::istream* dep, std::istream* constituency) {
  ParseIndex index;
  if (dep != nullptr) {
    std::string line;
    int lineno = 0;
    std::string doc_id;
    int sent = -1;
    std::map<std::string, int> next_sent;
    DepBlock block;
    auto flush = [&]() {
      if (block.rows.empty()) return;
      const int idx = sent >= 0 ? sent : next_sent[doc_id];
      next_sent[doc_id] = idx + 1;
      auto& slot = index.dep_[doc_id];
      if (slot.count(idx)) {
        throw FormatError("dependency sidecar line " + std::to_string(block.line) +
                          ": duplicate block for sentence " + std::to_string(idx));
      }
      slot[idx] = std::move(block);
      block = DepBlock{};
      sent = -1;
    };
    while (std::getline(*dep, line)) {
      ++lineno;
      const std::string t = Trim(line);
      if (t.empty()) {
        flush();
        continue;
      }
      if (t[0] == '#') {
        std::string key, value;
        if (ParseComment(t, &key, &value)) {
          if (key == "doc_id") {
            flush();
            doc_id = value;
          } else if (key == "sent_index") {
            sent = ParseInt(value, lineno, "sent_index");
          }
        }
        continue;
      }
      auto cols = SplitColumns(t);
      if (cols.empty()) continue;
      // Multiword token and empty node lines are not part of the tree.
      if (cols[0].find_first_of("-.") != std::string::npos) continue;
      if (block.rows.empty()) block.line = lineno;
      if (cols.size() < 8) {
        throw FormatError("dependency sidecar line " + std::to_string(lineno) +
                          ": expected at least 8 columns, got " +
                          std::to_string(cols.size()));
      }
      cols.push_back(std::to_string(lineno));
      block.rows.push_back(std::move(cols));
    }
    flush();
  }
  if (constituency != nullptr) {
    std::string line;
    int lineno = 0;
    std::string doc_id;
    int sent = -1;
    std::map<std::string, int> next_sent;
    while (std::getline(*constituency, line)) {
      ++lineno;
      const std::string t = Trim(line);
      if (t.empty()) continue;
      if (t[0] == '#') {
        std::string key, value;
        if (ParseComment(t, &key, &value)) {
          if (key == "doc_id") doc_id = value;
          if (key == "sent_index") sent = ParseInt(value, lineno, "sent_index");
        }
        continue;
      }
      const int idx = sent >= 0 ? sent : next_sent[doc_id];
      next_sent[doc_id] = idx + 1;
      index.const_[doc_id][idx] = ConstBlock{lineno, t};
      sent = -1;
    }
  }
  return index;
}

ParseIndex ParseIndex::LoadFiles(const std::string& dep_path,
                                 const std::string& const_path) {
  std::ifstream dep, cons;
  if (!dep_path.empty()) {
    dep.open(dep_path);
    if (!dep) throw ConfigError("cannot open dependency sidecar '" + dep_path + "'");
  }
  if (!const_path.empty()) {
    cons.open(const_path);
    if (!cons) {
      throw ConfigError("cannot open constituency sidecar '" + const_path + "'");
    }
  }
  return Load(dep_path.empty() ? nullptr : &dep,
              const_path.empty() ? nullptr : &cons);
}

ParseBundle ParseIndex::ForDocument(const Document& doc) const {
  ParseBundle bundle;
  const int num_sentences = static_cast<int>(doc.sentences().size());
  bundle.sentences.resize(num_sentences);
  auto sentence_span = [&](int s, int line, const char* which) {
    if (s < 0 || s >= num_sentences) {
      throw FormatError(std::string(which) + " sidecar line " +
                        std::to_string(line) + ": document '" + doc.id() +
                        "' has no sentence " + std::to_string(s));
    }
    return doc.sentences()[s];
  };

  auto pick = [&](const auto& table) -> const auto* {
    auto it = table.find(doc.id());
    if (it == table.end()) it = table.find("");
    return it == table.end() ? nullptr : &it->second;
  };

  if (const auto* blocks = pick(dep_)) {
    for (const auto& [s, block] : *blocks) {
      const Sentence span = sentence_span(s, block.line, "dependency");
      const int n = static_cast<int>(block.rows.size());
      if (n != span.size()) {
        throw FormatError("dependency sidecar line " + std::to_string(block.line) +
                          ": token-count mismatch for document '" + doc.id() +
                          "' sentence " + std::to_string(s) + " (" +
                          std::to_string(n) + " vs " + std::to_string(span.size()) +
                          ")");
      }
      std::vector<std::string> forms, pos, rels;
      std::vector<int> heads;
      for (int i = 0; i < n; ++i) {
        const auto& row = block.rows[i];
        const int line = std::stoi(row.back());
        if (ParseInt(row[0], line, "token id") != i + 1) {
          throw FormatError("dependency sidecar line " + std::to_string(line) +
                            ": token ids must run 1..n");
        }
        const Token& tok = doc.tokens()[span.first_token + i];
        if (row[1] != tok.text) {
          throw FormatError("dependency sidecar line " + std::to_string(line) +
                            ": form '" + row[1] + "' does not match token '" +
                            tok.text + "'");
        }
        forms.push_back(row[1]);
        pos.push_back(row[4] == "_" ? row[3] : row[4]);
        heads.push_back(ParseInt(row[6], line, "head") - 1);
        rels.push_back(row[7]);
      }
      SentenceParse& sp = bundle.sentences[s].emplace();
      try {
        sp.dependency.emplace(std::move(forms), std::move(pos), std::move(heads),
                              std::move(rels));
      } catch (const FormatError& e) {
        throw FormatError("dependency sidecar line " + std::to_string(block.line) +
                          ": " + e.what());
      }
    }
  }
  if (const auto* blocks = pick(const_)) {
    for (const auto& [s, block] : *blocks) {
      const Sentence span = sentence_span(s, block.line, "constituency");
      ConstituencyTree tree;
      try {
        tree = ConstituencyTree::Parse(block.text);
      } catch (const FormatError& e) {
        throw FormatError("constituency sidecar line " +
                          std::to_string(block.line) + ": " + e.what());
      }
      const auto leaves = tree.Leaves();
      if (static_cast<int>(leaves.size()) != span.size()) {
        throw FormatError("constituency sidecar line " +
                          std::to_string(block.line) +
                          ": token-count mismatch for document '" + doc.id() +
                          "' sentence " + std::to_string(s));
      }
      for (int i = 0; i < span.size(); ++i) {
        if (leaves[i] != doc.tokens()[span.first_token + i].text) {
          throw FormatError("constituency sidecar line " +
                            std::to_string(block.line) + ": leaf '" + leaves[i] +
                            "' does not match token '" +
                            doc.tokens()[span.first_token + i].text + "'");
        }
      }
      if (!bundle.sentences[s]) bundle.sentences[s].emplace();
      bundle.sentences[s]->constituency = std::move(tree);
    }
  }
  return bundle;
}

ParseBundle ReadParses(const Document& doc, const std::string& dep_path,
                       const std::string& const_path) {
  return ParseIndex::LoadFiles(dep_path, const_path).ForDocument(doc);
}

void ApplyPos(const ParseBundle& parses, Document* doc) {
  for (size_t s = 0; s < parses.sentences.size(); ++s) {
    const SentenceParse* sp = parses.Find(static_cast<int>(s));
    if (sp == nullptr || !sp->dependency) continue;
    const int first = doc->sentences()[s].first_token;
    for (int i = 0; i < sp->dependency->size(); ++i) {
      doc->set_pos(first + i, sp->dependency->pos(i));
    }
  }
}

}  // namespace timescope::corpus
