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

#ifndef TIMESCOPE_CORPUS_PARSES_H_
#define TIMESCOPE_CORPUS_PARSES_H_

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "timescope/corpus/document.h"

namespace timescope::corpus {

// Sentence-local dependency tree; indices are 0-based within the sentence,
// the root has head -1. Labels follow the Stanford typed inventory
// (neg, nsubj, nsubjpass, npadvmod, aux, auxpass, prep, pobj, advcl, conj...).
class DependencyTree {
 public:
  DependencyTree() = default;
  DependencyTree(std::vector<std::string> forms, std::vector<std::string> pos,
                 std::vector<int> heads, std::vector<std::string> relations);

  int size() const { return static_cast<int>(heads_.size()); }
  int head(int i) const { return heads_[i]; }
  const std::string& relation(int i) const { return relations_[i]; }
  const std::string& pos(int i) const { return pos_[i]; }
  const std::string& form(int i) const { return forms_[i]; }
  int root() const { return root_; }

  const std::vector<int>& children(int i) const { return children_[i]; }
  // i and all of its descendants, sorted.
  std::vector<int> Subtree(int i) const;

 private:
  std::vector<std::string> forms_;
  std::vector<std::string> pos_;
  std::vector<int> heads_;
  std::vector<std::string> relations_;
  std::vector<std::vector<int>> children_;
  int root_ = -1;
};

// Labeled bracketing. Leaves are numbered 0..n-1 in order.
struct ConstituencyNode {
  std::string label;
  std::string word;  // leaves only
  int first_leaf = 0;
  int last_leaf = 0;  // inclusive
  std::vector<std::unique_ptr<ConstituencyNode>> children;

  bool is_leaf() const { return children.empty(); }
};

class ConstituencyTree {
 public:
  ConstituencyTree() = default;
  explicit ConstituencyTree(std::unique_ptr<ConstituencyNode> root);

  // Parses "(S (NP (JJ any) (NN day)) ...)"; an empty outer label "( (S ..))"
  // is accepted. Throws FormatError on unbalanced input.
  static ConstituencyTree Parse(const std::string& bracketed);

  const ConstituencyNode* root() const { return root_.get(); }
  int num_leaves() const { return root_ ? root_->last_leaf + 1 : 0; }
  std::vector<std::string> Leaves() const;

  // Smallest node whose leaf range covers [first, last].
  const ConstituencyNode* SmallestCovering(int first, int last) const;

 private:
  std::shared_ptr<ConstituencyNode> root_;
};

struct SentenceParse {
  std::optional<DependencyTree> dependency;
  std::optional<ConstituencyTree> constituency;
};

// Per-sentence parses for one document; sentences without sidecar blocks
// have no entry.
struct ParseBundle {
  std::vector<std::optional<SentenceParse>> sentences;

  const SentenceParse* Find(int sentence) const {
    if (sentence < 0 || sentence >= static_cast<int>(sentences.size()) ||
        !sentences[sentence]) {
      return nullptr;
    }
    return &*sentences[sentence];
  }
};

// Raw sidecar blocks keyed by document id. Blocks may carry
// "# doc_id = X" and "# sent_index = N" comments; blocks without a doc_id
// belong to every document ("" key) and are numbered sequentially.
class ParseIndex {
 public:
  static ParseIndex Load(std::istream* dep, std::istream* constituency);
  static ParseIndex LoadFiles(const std::string& dep_path,
                              const std::string& const_path);

  // Aligns the blocks for `doc` to its sentences and validates them.
  ParseBundle ForDocument(const Document& doc) const;

  bool empty() const { return dep_.empty() && const_.empty(); }

 private:
  struct DepBlock {
    int line = 0;
    std::vector<std::vector<std::string>> rows;
  };
  struct ConstBlock {
    int line = 0;
    std::string text;
  };
  // doc id -> sentence index -> block
  std::map<std::string, std::map<int, DepBlock>> dep_;
  std::map<std::string, std::map<int, ConstBlock>> const_;
};

// Convenience wrapper over ParseIndex for a single document. Either path may
// be empty.
ParseBundle ReadParses(const Document& doc, const std::string& dep_path,
                       const std::string& const_path);

// Writes POS tags from the bundle's dependency trees into the document.
void ApplyPos(const ParseBundle& parses, Document* doc);

}  // namespace timescope::corpus

#endif  // TIMESCOPE_CORPUS_PARSES_H_
