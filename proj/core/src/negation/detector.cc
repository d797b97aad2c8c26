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

#include "timescope/negation/detector.h"

#include <algorithm>

namespace timescope::negation {
namespace {

// Sorted sentence-local tokens of `entity` that the token set covers.
std::vector<int> Intersect(const corpus::EntitySpan& entity, int offset,
                           const Scope& scope) {
  std::vector<int> out;
  for (int t = entity.first_token; t <= entity.last_token; ++t) {
    if (scope.Contains(t - offset)) out.push_back(t);
  }
  return out;
}

void Negate(const corpus::Document& doc, const Cue& cue, Via via, int first, int last,
            NegationDecision* d) {
  if (d->negated) return;
  d->negated = true;
  d->cue = cue;
  d->via = via;
  d->part_first = first;
  d->part_last = last;
  d->negated_part = doc.SpanText(first, last);
}

}  // namespace

const char* ViaName(Via via) {
  switch (via) {
    case Via::kNone: return "none";
    case Via::kNarrow: return "narrow";
    case Via::kWide: return "wide";
    case Via::kImplied: return "implied";
  }
  return "none";
}

DetectionResult Detect(const corpus::Document& doc,
                       const std::vector<corpus::EntitySpan>& entities,
                       const corpus::ParseBundle& parses, const CueLexicon& lex) {
  DetectionResult result;
  for (const auto& e : entities) {
    NegationDecision d;
    d.entity = e;
    result.decisions.push_back(std::move(d));
  }
  const auto& tokens = doc.tokens();

  for (int s = 0; s < static_cast<int>(doc.sentences().size()); ++s) {
    const corpus::Sentence& sent = doc.sentences()[s];
    std::vector<size_t> members;
    for (size_t i = 0; i < entities.size(); ++i) {
      if (tokens[entities[i].first_token].sentence_index == s) members.push_back(i);
    }
    std::vector<Cue> cues = FindCues(doc, s, lex);
    if (cues.empty()) continue;
    const corpus::SentenceParse* parse = parses.Find(s);
    const corpus::DependencyTree* dep =
        parse && parse->dependency ? &*parse->dependency : nullptr;
    const corpus::ConstituencyTree* tree =
        parse && parse->constituency ? &*parse->constituency : nullptr;

    std::vector<CueAnalysis> explicit_cues, implied_cues;
    for (auto& cue : cues) {
      CueAnalysis a;
      a.cue = cue;
      if (dep) {
        a.parsed = true;
        a.cue.pos = dep->pos(CueHead(cue, *dep));
      }
      (cue.kind == CueKind::kExplicit ? explicit_cues : implied_cues).push_back(a);
    }

    auto negate_sentence = [&](const Cue& cue) {
      for (size_t i : members) {
        Negate(doc, cue, Via::kImplied, entities[i].first_token, entities[i].last_token,
               &result.decisions[i]);
      }
    };

    for (auto& a : explicit_cues) {
      if (!dep) {
        result.warnings.push_back("document '" + doc.id() + "' sentence " +
                                  std::to_string(s) + ": no dependency parse for cue '" +
                                  a.cue.text + "', negating the whole sentence");
        negate_sentence(a.cue);
        continue;
      }
      a.governor = Governor(a.cue, *dep);
      a.narrow = NarrowScope(a.cue, a.governor, tree, *dep);
      a.wide = WideScope(a.governor, *dep);
      std::vector<std::pair<size_t, std::vector<int>>> hits;
      for (size_t i : members) {
        auto part = Intersect(entities[i], sent.first_token, a.narrow);
        if (!part.empty()) hits.emplace_back(i, std::move(part));
      }
      a.narrow_hit = !hits.empty();
      Via via = Via::kNarrow;
      if (!a.narrow_hit) {
        via = Via::kWide;
        for (size_t i : members) {
          auto part = Intersect(entities[i], sent.first_token, a.wide);
          if (!part.empty()) hits.emplace_back(i, std::move(part));
        }
      }
      for (const auto& [i, part] : hits) {
        Negate(doc, a.cue, via, part.front(), part.back(), &result.decisions[i]);
      }
    }

    for (auto& a : implied_cues) {
      for (const auto& x : explicit_cues) {
        for (int t = a.cue.first; t <= a.cue.last; ++t) {
          if (x.parsed && x.narrow.Contains(t)) a.cancelled = true;
        }
      }
      if (!a.cancelled) negate_sentence(a.cue);
    }

    for (auto& a : explicit_cues) result.cues.push_back(std::move(a));
    for (auto& a : implied_cues) result.cues.push_back(std::move(a));
  }
  return result;
}

}  // namespace timescope::negation
