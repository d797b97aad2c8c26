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

#include "timescope/corpus/synthetic.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "timescope/corpus/parses.h"
#include "timescope/corpus/tokenizer.h"
#include "timescope/error.h"
#include "timescope/rng.h"

namespace timescope::corpus {
namespace {

std::vector<std::string> Words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string Capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

std::string ReplaceAll(std::string s, const std::string& from, const std::string& to) {
  for (size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size()) {
    s.replace(pos, from.size(), to);
  }
  return s;
}

// A time expression with its internal parse. heads index into the phrase,
// -1 marks the phrase head; bracket uses {0}, {1}, ... for the words.
struct Phrase {
  std::vector<std::string> forms;
  std::vector<std::string> tags;
  std::vector<int> heads;
  std::vector<std::string> rels;
  std::string bracket;

  std::string Text() const {
    std::string s;
    for (size_t i = 0; i < forms.size(); ++i) s += (i ? " " : "") + forms[i];
    return s;
  }
  int Head() const {
    for (size_t i = 0; i < heads.size(); ++i) {
      if (heads[i] < 0) return static_cast<int>(i);
    }
    return 0;
  }
};

Phrase MakePhrase(const std::string& text, const std::string& tags,
                  const std::string& deps, const std::string& bracket) {
  Phrase p;
  p.forms = Words(text);
  p.tags = Words(tags);
  for (const auto& d : Words(deps)) {
    if (d == "-") {
      p.heads.push_back(-1);
      p.rels.emplace_back();
    } else {
      const auto colon = d.find(':');
      p.heads.push_back(std::stoi(d.substr(0, colon)));
      p.rels.push_back(d.substr(colon + 1));
    }
  }
  p.bracket = bracket;
  if (p.tags.size() != p.forms.size() || p.heads.size() != p.forms.size()) {
    throw std::logic_error("bad phrase spec '" + text + "'");
  }
  return p;
}

const char* const kWeekdays[] = {"Monday", "Tuesday", "Wednesday", "Thursday", "Friday"};
const char* const kClocks[] = {"3pm", "4pm", "10am", "11am", "2pm", "9am"};
const char* const kSpacedClocks[] = {"10:00 am", "2:30 pm"};

struct Pools {
  std::vector<Phrase> relevant;  // any scheduling time
  std::vector<Phrase> weekday;   // scheduling times starting with a weekday
  std::vector<std::string> distractor;
  std::vector<std::string> names = {"Watson", "Holmes", "Irene", "Mycroft", "Lestrade",
                                    "Hudson", "Molly", "Mary", "John", "Greg"};
  std::vector<std::string> homographs = {"May", "April", "June"};

  Pools() {
    const std::string np1 = "(NP (NNP {0}))";
    for (const char* w : kWeekdays) {
      weekday.push_back(MakePhrase(w, "NNP", "-", np1));
      weekday.push_back(MakePhrase(std::string(w) + " morning", "NNP NN", "1:compound -",
                                   "(NP (NNP {0}) (NN {1}))"));
      weekday.push_back(MakePhrase(std::string(w) + " afternoon", "NNP NN",
                                   "1:compound -", "(NP (NNP {0}) (NN {1}))"));
      for (const char* c : kClocks) {
        weekday.push_back(MakePhrase(std::string(w) + " at " + c, "NNP IN CD",
                                     "- 0:prep 1:pobj",
                                     "(NP (NP (NNP {0})) (PP (IN {1}) (NP (CD {2}))))"));
      }
      for (const char* c : kSpacedClocks) {
        weekday.push_back(MakePhrase(std::string(w) + " at " + c, "NNP IN CD NN",
                                     "- 0:prep 3:nummod 1:pobj",
                                     "(NP (NP (NNP {0})) (PP (IN {1}) (NP (CD {2}) (NN {3}))))"));
      }
    }
    relevant = weekday;
    relevant.push_back(MakePhrase("tomorrow", "NN", "-", "(NP (NN {0}))"));
    relevant.push_back(MakePhrase("tomorrow morning", "NN NN", "1:compound -",
                                  "(NP (NN {0}) (NN {1}))"));
    relevant.push_back(MakePhrase("tomorrow afternoon", "NN NN", "1:compound -",
                                  "(NP (NN {0}) (NN {1}))"));
    relevant.push_back(MakePhrase("this afternoon", "DT NN", "1:det -",
                                  "(NP (DT {0}) (NN {1}))"));
    relevant.push_back(MakePhrase("early next week", "RB JJ NN", "2:advmod 2:amod -",
                                  "(NP (RB {0}) (JJ {1}) (NN {2}))"));
    relevant.push_back(MakePhrase("June 5th", "NNP JJ", "- 0:amod", "(NP (NNP {0}) (JJ {1}))"));
    relevant.push_back(MakePhrase("July 12th", "NNP JJ", "- 0:amod", "(NP (NNP {0}) (JJ {1}))"));
    for (int k = 0; k < 4; ++k) {
      relevant.push_back(MakePhrase("next week", "JJ NN", "1:amod -", "(NP (JJ {0}) (NN {1}))"));
    }
    relevant.push_back(MakePhrase("next month", "JJ NN", "1:amod -", "(NP (JJ {0}) (NN {1}))"));
    for (const char* w : kWeekdays) {
      relevant.push_back(MakePhrase(std::string("next ") + w, "JJ NNP", "1:amod -",
                                    "(NP (JJ {0}) (NNP {1}))"));
      relevant.push_back(MakePhrase(w, "NNP", "-", np1));
      relevant.push_back(MakePhrase(w, "NNP", "-", np1));
    }
    distractor = {"yesterday", "last week", "this morning", "today", "today",
                  "last night", "last month", "last year"};
    for (const char* w : kWeekdays) distractor.push_back(std::string("last ") + w);
  }
};

const Pools& GetPools() {
  static const Pools pools;
  return pools;
}

const char* const kScheduling[] = {
    "Can we meet {T}?",
    "Let's set up a meeting for {T}.",
    "Are you free {T}?",
    "Could we schedule a call {T}?",
    "I am available {T}.",
    "How about {T}?",
    "{T} works for me.",
    "Please book a room for {T}.",
    "Would {T} suit you?",
    "Let's sync up {T}.",
    "I can do {T} or {T}.",
    "Please find time for us {T} or {T}.",
    "Can we meet on {W}?",
    "Let's plan to talk on {W}.",
    "Does {T} work for you?",
    "We could meet {T} if that suits you.",
    "Please send an invite for {T}.",
    "{T} would be great for the kickoff.",
};

const char* const kDistractor[] = {
    "I sent the report {D}.",
    "We wrapped up the review {D}.",
    "Thanks for the notes from {D}.",
    "The invoice was paid {D}.",
    "My flight landed {D}.",
    "We spoke about it {D}.",
    "The draft went out {D}.",
    "The server was down {D}.",
    "I sent the report on {DW}.",
    "We finished the budget on {DW}.",
    "{N}, {H} and I met {D}.",
    "{H} and I met {D}.",
    "The contract was signed {D}.",
};

const char* const kHomograph[] = {
    "{H} will join us.",
    "I spoke with {H} about the budget.",
    "{H} sends her regards.",
    "Please loop in {H}.",
    "{H} and I reviewed the slides.",
    "Say hello to {H} for me.",
    "I copied {H} on this thread.",
};

const char* const kFiller[] = {
    "Hope you are well.",      "Thanks for your help.", "Looking forward to it.",
    "Let me know what you think.", "Talk soon.",         "I attached the agenda.",
};

const char* const kGreetings[] = {"Hi {G},", "Hello {G},", "Dear {G},", "{G},"};
const char* const kSignoffs[] = {"Thanks,\n{G}", "Best,\n{G}", "- {G}", "Cheers,\n{G}"};

// Negation sentence with its hand-written parse. Items are
// "form/TAG/head/rel" or "{E1}/head/rel" with 0-based item heads (-1 for the
// root); the bracket embeds {E1} / {E2} as noun phrases. E2 is negated.
struct NegationTemplate {
  const char* text;
  std::vector<const char*> items;
  const char* bracket;
};

const std::vector<NegationTemplate>& NegationTemplates() {
  static const std::vector<NegationTemplate> t = {
      {"Let's meet {E1}, any day except {E2}.",
       {"Let/VB/-1/root", "'s/PRP/2/nsubj", "meet/VB/0/ccomp", "{E1}/2/npadvmod",
        ",/,/2/punct", "any/DT/6/det", "day/NN/2/npadvmod", "except/IN/6/prep",
        "{E2}/7/pobj", "././0/punct"},
       "(S (VP (VB Let) (S (NP (PRP 's)) (VP (VB meet) {E1} (, ,) (NP (NP (DT any) "
       "(NN day)) (PP (IN except) {E2}))))) (. .))"},
      {"Let's set up a meeting for {E1}, any day except {E2}.",
       {"Let/VB/-1/root", "'s/PRP/2/nsubj", "set/VB/0/ccomp", "up/RP/2/prt",
        "a/DT/5/det", "meeting/NN/2/dobj", "for/IN/2/prep", "{E1}/6/pobj",
        ",/,/2/punct", "any/DT/10/det", "day/NN/2/npadvmod", "except/IN/10/prep",
        "{E2}/11/pobj", "././0/punct"},
       "(S (VP (VB Let) (S (NP (PRP 's)) (VP (VB set) (PRT (RP up)) (NP (DT a) (NN "
       "meeting)) (PP (IN for) {E1}) (, ,) (NP (NP (DT any) (NN day)) (PP (IN except) "
       "{E2}))))) (. .))"},
      {"{E2} does not work for me.",
       {"{E2}/3/npadvmod", "does/VBZ/3/aux", "not/RB/3/neg", "work/VB/-1/root",
        "for/IN/3/prep", "me/PRP/4/pobj", "././3/punct"},
       "(S {E2} (VP (VBZ does) (RB not) (VP (VB work) (PP (IN for) (NP (PRP me))))) "
       "(. .))"},
      {"I can't do {E2}, but {E1} works.",
       {"I/PRP/3/nsubj", "ca/MD/3/aux", "n't/RB/3/neg", "do/VB/-1/root",
        "{E2}/3/dobj", ",/,/3/punct", "but/CC/3/cc", "{E1}/8/nsubj",
        "works/VBZ/3/conj", "././3/punct"},
       "(S (S (NP (PRP I)) (VP (MD ca) (RB n't) (VP (VB do) {E2}))) (, ,) (CC but) "
       "(S {E1} (VP (VBZ works))) (. .))"},
      {"I will be out of office {E2}.",
       {"I/PRP/2/nsubj", "will/MD/2/aux", "be/VB/-1/root", "out/IN/2/prep",
        "of/IN/3/prep", "office/NN/4/pobj", "{E2}/2/npadvmod", "././2/punct"},
       "(S (NP (PRP I)) (VP (MD will) (VP (VB be) (PP (IN out) (PP (IN of) (NP (NN "
       "office)))) {E2})) (. .))"},
      {"I will be on vacation {E2}.",
       {"I/PRP/2/nsubj", "will/MD/2/aux", "be/VB/-1/root", "on/IN/2/prep",
        "vacation/NN/3/pobj", "{E2}/2/npadvmod", "././2/punct"},
       "(S (NP (PRP I)) (VP (MD will) (VP (VB be) (PP (IN on) (NP (NN vacation))) "
       "{E2})) (. .))"},
      {"{E2} would not be possible.",
       {"{E2}/4/nsubj", "would/MD/4/aux", "not/RB/4/neg", "be/VB/4/cop",
        "possible/JJ/-1/root", "././4/punct"},
       "(S {E2} (VP (MD would) (RB not) (VP (VB be) (ADJP (JJ possible)))) (. .))"},
  };
  return t;
}

struct PendingEntity {
  int start = 0;
  int end = 0;
  bool relevant = false;
  bool negated = false;
};

struct ExpectedSentence {
  int start = 0;
  std::vector<std::string> forms;
  std::vector<std::string> tags;
  std::vector<int> heads;
  std::vector<std::string> rels;
  std::string bracket;
};

class DocBuilder {
 public:
  explicit DocBuilder(Rng* rng) : rng_(rng) {}

  void Add(const std::string& s) { text_ += s; }

  // Fills {T} {W} {D} {DW} {H} {N} {G} slots and appends the sentence.
  void AddTemplate(const std::string& tmpl) {
    const Pools& pools = GetPools();
    std::vector<std::string> used;
    size_t i = 0;
    while (i < tmpl.size()) {
      if (tmpl[i] != '{') {
        text_ += tmpl[i++];
        continue;
      }
      const size_t close = tmpl.find('}', i);
      const std::string slot = tmpl.substr(i + 1, close - i - 1);
      const bool initial = i == 0;
      i = close + 1;
      std::string surface;
      PendingEntity e;
      bool annotate = false;
      if (slot == "T" || slot == "W") {
        const auto& pool = slot == "T" ? pools.relevant : pools.weekday;
        do {
          surface = rng_->Pick(pool).Text();
        } while (std::find(used.begin(), used.end(), surface) != used.end());
        used.push_back(surface);
        annotate = true;
        e.relevant = true;
      } else if (slot == "D") {
        surface = rng_->Pick(pools.distractor);
        annotate = true;
      } else if (slot == "DW") {
        surface = kWeekdays[rng_->Below(5)];
        annotate = true;
      } else if (slot == "H") {
        surface = rng_->Pick(pools.homographs);
      } else if (slot == "N" || slot == "G") {
        surface = rng_->Pick(pools.names);
      } else {
        throw std::logic_error("unknown slot {" + slot + "}");
      }
      if (initial) surface = Capitalize(surface);
      e.start = Pos();
      text_ += surface;
      e.end = Pos();
      if (annotate) entities_.push_back(e);
    }
  }

  void AddNegation(const NegationTemplate& t, bool with_e1) {
    (void)with_e1;
    const Pools& pools = GetPools();
    const Phrase& e2 = rng_->Pick(pools.relevant);
    const Phrase* e1 = &rng_->Pick(pools.relevant);
    while (e1->Text() == e2.Text()) e1 = &rng_->Pick(pools.relevant);

    ExpectedSentence ex;
    ex.start = Pos();
    std::vector<int> item_head;  // global token of each item's head
    std::vector<std::pair<int, std::string>> item_link;
    for (size_t k = 0; k < t.items.size(); ++k) {
      const auto parts = Split(t.items[k]);
      const bool slot = parts[0][0] == '{';
      const size_t off = slot ? 1 : 2;
      item_link.emplace_back(std::stoi(parts[off]), parts[off + 1]);
      if (!slot) {
        item_head.push_back(static_cast<int>(ex.forms.size()));
        ex.forms.push_back(parts[0]);
        ex.tags.push_back(parts[1]);
        ex.heads.push_back(-2);
        ex.rels.push_back("");
        continue;
      }
      const Phrase& p = parts[0] == "{E1}" ? *e1 : e2;
      const int base = static_cast<int>(ex.forms.size());
      item_head.push_back(base + p.Head());
      for (size_t w = 0; w < p.forms.size(); ++w) {
        ex.forms.push_back(k == 0 && w == 0 ? Capitalize(p.forms[w]) : p.forms[w]);
        ex.tags.push_back(p.tags[w]);
        ex.heads.push_back(p.heads[w] < 0 ? -2 : base + p.heads[w]);
        ex.rels.push_back(p.rels[w]);
      }
    }
    for (size_t k = 0; k < t.items.size(); ++k) {
      const int tok = item_head[k];
      const auto& [h, rel] = item_link[k];
      ex.heads[tok] = h < 0 ? -1 : item_head[h];
      ex.rels[tok] = rel;
    }

    // Text and entity offsets.
    const std::string tmpl = t.text;
    size_t i = 0;
    while (i < tmpl.size()) {
      if (tmpl[i] != '{') {
        text_ += tmpl[i++];
        continue;
      }
      const size_t close = tmpl.find('}', i);
      const bool is_e2 = tmpl.substr(i, close - i + 1) == "{E2}";
      std::string surface = (is_e2 ? e2 : *e1).Text();
      if (i == 0) surface = Capitalize(surface);
      i = close + 1;
      PendingEntity e{Pos(), 0, true, is_e2};
      text_ += surface;
      e.end = Pos();
      entities_.push_back(e);
    }

    std::string bracket = t.bracket;
    const bool e2_first = tmpl.rfind("{E2}", 0) == 0;
    const bool e1_first = tmpl.rfind("{E1}", 0) == 0;
    bracket = ReplaceAll(bracket, "{E1}", PhraseBracket(*e1, e1_first));
    bracket = ReplaceAll(bracket, "{E2}", PhraseBracket(e2, e2_first));
    ex.bracket = bracket;
    expected_.push_back(std::move(ex));
  }

  int Pos() const { return static_cast<int>(text_.size()); }
  const std::string& text() const { return text_; }
  const std::vector<PendingEntity>& entities() const { return entities_; }
  const std::vector<ExpectedSentence>& expected() const { return expected_; }

 private:
  static std::vector<std::string> Split(const std::string& item) {
    std::vector<std::string> parts;
    std::istringstream in(item);
    for (std::string part; std::getline(in, part, '/');) parts.push_back(part);
    return parts;
  }

  static std::string PhraseBracket(const Phrase& p, bool capitalize) {
    std::string b = p.bracket;
    for (size_t w = 0; w < p.forms.size(); ++w) {
      b = ReplaceAll(b, "{" + std::to_string(w) + "}",
                     capitalize && w == 0 ? Capitalize(p.forms[w]) : p.forms[w]);
    }
    return b;
  }

  Rng* rng_;
  std::string text_;
  std::vector<PendingEntity> entities_;
  std::vector<ExpectedSentence> expected_;
};

void EmitSidecars(const Document& doc, const ExpectedSentence& ex, int sentence,
                  std::string* dep, std::string* cons) {
  std::string header = "# doc_id = " + doc.id() + "\n# sent_index = " +
                       std::to_string(sentence) + "\n";
  *dep += header;
  for (size_t i = 0; i < ex.forms.size(); ++i) {
    *dep += std::to_string(i + 1) + "\t" + ex.forms[i] + "\t_\t_\t" + ex.tags[i] +
            "\t_\t" + std::to_string(ex.heads[i] + 1) + "\t" + ex.rels[i] + "\t_\t_\n";
  }
  *dep += "\n";
  *cons += header + ex.bracket + "\n";
}

}  // namespace

SyntheticCorpus GenerateSynthetic(uint64_t seed, int n_docs) {
  if (n_docs < 1) throw ConfigError("synthetic corpus needs at least one document");
  Rng rng(seed);
  const int n_neg = static_cast<int>(std::lround(0.1 * n_docs));
  std::vector<int> negation(n_docs, 0);
  for (int i = 0; i < n_neg; ++i) negation[i] = 1;
  rng.Shuffle(&negation);

  SyntheticCorpus out;
  for (int d = 0; d < n_docs; ++d) {
    char id[32];
    std::snprintf(id, sizeof(id), "syn-%05d", d);
    DocBuilder b(&rng);

    // Body plan: 0 scheduling, 1 distractor, 2 homograph, 3 filler, 4 negation.
    std::vector<int> plan;
    if (negation[d]) {
      plan.push_back(4);
      if (rng.Bernoulli(0.5)) plan.push_back(0);
    } else {
      plan.push_back(0);
      if (rng.Bernoulli(0.4)) plan.push_back(0);
    }
    plan.push_back(1);
    if (rng.Bernoulli(0.5)) plan.push_back(1);
    if (rng.Bernoulli(0.6)) plan.push_back(2);
    if (rng.Bernoulli(0.5)) plan.push_back(3);
    rng.Shuffle(&plan);

    const std::string greeting = rng.Bernoulli(0.15)
                                     ? ReplaceAll(kGreetings[rng.Below(4)], "{G}",
                                                  rng.Pick(GetPools().homographs))
                                     : kGreetings[rng.Below(4)];
    b.AddTemplate(greeting);
    b.Add("\n\n");
    for (size_t k = 0; k < plan.size(); ++k) {
      if (k > 0) b.Add(" ");
      switch (plan[k]) {
        case 0: b.AddTemplate(kScheduling[rng.Below(std::size(kScheduling))]); break;
        case 1: b.AddTemplate(kDistractor[rng.Below(std::size(kDistractor))]); break;
        case 2: b.AddTemplate(kHomograph[rng.Below(std::size(kHomograph))]); break;
        case 3: b.Add(kFiller[rng.Below(std::size(kFiller))]); break;
        default: {
          const auto& all = NegationTemplates();
          b.AddNegation(all[rng.Below(all.size())], true);
        }
      }
    }
    b.Add("\n\n");
    b.AddTemplate(kSignoffs[rng.Below(4)]);

    AnnotatedDocument ad{Tokenize(b.text(), id), {}};
    const Document& doc = ad.doc;
    for (const auto& e : b.entities()) {
      const int first = doc.TokenStartingAt(e.start);
      const int last = doc.TokenEndingAt(e.end);
      if (first < 0 || last < 0) {
        throw std::logic_error("synthetic entity off token boundaries in " +
                               std::string(id));
      }
      ad.entities.push_back({MakeSpan(doc, first, last, "gold"), e.relevant, e.negated});
    }
    std::sort(ad.entities.begin(), ad.entities.end(), [](const auto& a, const auto& b) {
      return a.span.first_token < b.span.first_token;
    });
    ValidateEntities(ad);

    for (const auto& ex : b.expected()) {
      const int tok = doc.TokenStartingAt(ex.start);
      const int s = tok < 0 ? -1 : doc.tokens()[tok].sentence_index;
      bool ok = s >= 0 && doc.sentences()[s].first_token == tok &&
                doc.sentences()[s].size() == static_cast<int>(ex.forms.size());
      for (size_t i = 0; ok && i < ex.forms.size(); ++i) {
        ok = doc.tokens()[tok + i].text == ex.forms[i];
      }
      if (!ok) throw std::logic_error("negation template tokenized unexpectedly in " +
                                      std::string(id));
      DependencyTree(ex.forms, ex.tags, ex.heads, ex.rels);
      if (ConstituencyTree::Parse(ex.bracket).Leaves() != ex.forms) {
        throw std::logic_error("negation bracket leaves differ in " + std::string(id));
      }
      EmitSidecars(doc, ex, s, &out.dependency, &out.constituency);
    }
    out.corpus.push_back(std::move(ad));
  }
  return out;
}

}  // namespace timescope::corpus
