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

#include "timescope/negation/scope.h"

#include <algorithm>
#include <set>
#include <string>

#include "timescope/error.h"

namespace timescope::negation {
namespace {

bool IsSubjectRelation(const std::string& rel) {
  return rel == "nsubj" || rel == "nsubjpass" || rel == "npadvmod";
}

bool IsAuxRelation(const std::string& rel) { return rel == "aux" || rel == "auxpass"; }

void CheckCue(const Cue& cue, const corpus::DependencyTree& dep) {
  if (cue.first < 0 || cue.last >= dep.size() || cue.last < cue.first) {
    throw ConfigError("cue outside its sentence parse");
  }
}

void AddSubjects(int node, const corpus::DependencyTree& dep, std::set<int>* out,
                 bool* found) {
  for (int c : dep.children(node)) {
    if (!IsSubjectRelation(dep.relation(c))) continue;
    for (int t : dep.Subtree(c)) out->insert(t);
    *found = true;
  }
}

}  // namespace

bool Scope::Contains(int token) const {
  return std::binary_search(tokens.begin(), tokens.end(), token);
}

int CueHead(const Cue& cue, const corpus::DependencyTree& dep) {
  CheckCue(cue, dep);
  for (int t = cue.first; t <= cue.last; ++t) {
    const int h = dep.head(t);
    if (h < cue.first || h > cue.last) return t;
  }
  return cue.last;
}

int Governor(const Cue& cue, const corpus::DependencyTree& dep) {
  const int head = CueHead(cue, dep);
  return dep.head(head) < 0 ? head : dep.head(head);
}

Scope NarrowScope(const Cue& cue, int governor, const corpus::ConstituencyTree* tree,
                  const corpus::DependencyTree& dep) {
  CheckCue(cue, dep);
  int lo = 0, hi = dep.size() - 1;
  if (tree != nullptr && tree->root() != nullptr) {
    const auto* node = tree->SmallestCovering(std::min(cue.first, governor),
                                              std::max(cue.last, governor));
    if (node != nullptr) {
      lo = node->first_leaf;
      hi = node->last_leaf;
    }
  }
  std::vector<int> part;
  for (int t = cue.last + 1; t <= hi; ++t) part.push_back(t);
  if (part.empty()) {
    for (int t = lo; t < cue.first; ++t) part.push_back(t);
  }
  std::set<int> pruned;
  for (int c : dep.children(governor)) {
    if (dep.relation(c) != "advcl") continue;
    for (int t : dep.Subtree(c)) pruned.insert(t);
  }
  Scope s{ScopeKind::kNarrow, {}};
  for (int t : part) {
    if (pruned.count(t) || dep.relation(t) == "punct") continue;
    s.tokens.push_back(t);
  }
  return s;
}

Scope WideScope(int governor, const corpus::DependencyTree& dep) {
  std::set<int> out;
  bool found = false;
  AddSubjects(governor, dep, &out, &found);

  int leftmost_aux = governor;
  for (int c : dep.children(governor)) {
    const std::string& rel = dep.relation(c);
    if (IsAuxRelation(rel) || rel == "neg") leftmost_aux = std::min(leftmost_aux, c);
  }
  for (int c : dep.children(governor)) {
    if (dep.relation(c) == "prep" && c < leftmost_aux) {
      for (int t : dep.Subtree(c)) out.insert(t);
      found = true;
    }
  }
  if (!found) {
    int first = governor;
    while (dep.head(first) >= 0 && dep.relation(first) == "conj") first = dep.head(first);
    if (first != governor) AddSubjects(first, dep, &out, &found);
  }
  for (int c : dep.children(governor)) {
    if (IsAuxRelation(dep.relation(c))) out.insert(c);
  }
  return {ScopeKind::kWide, std::vector<int>(out.begin(), out.end())};
}

}  // namespace timescope::negation
