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

#include "timescope/ruletag/extractor.h"

#include <algorithm>
#include <array>
#include <string_view>

#include "timescope/unicode.h"

namespace timescope::ruletag {
namespace {

bool AllDigits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return c >= '0' && c <= '9';
  });
}

int ToInt(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

bool IsMeridiemSuffix(std::string_view s) {
  return s == "am" || s == "pm" || s == "a.m." || s == "p.m." || s == "a.m" ||
         s == "p.m";
}

// h:mm or hh:mm with an optional am/pm suffix.
bool IsClock(std::string_view s) {
  const size_t colon = s.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon > 2) return false;
  const std::string_view h = s.substr(0, colon);
  if (s.size() < colon + 3) return false;
  const std::string_view m = s.substr(colon + 1, 2);
  const std::string_view rest = s.substr(colon + 3);
  if (!AllDigits(h) || !AllDigits(m)) return false;
  if (ToInt(h) > 23 || ToInt(m) > 59) return false;
  return rest.empty() || IsMeridiemSuffix(rest);
}

// 3pm, 11am, 10a.m.
bool IsHourMeridiem(std::string_view s) {
  size_t d = 0;
  while (d < s.size() && d < 2 && s[d] >= '0' && s[d] <= '9') ++d;
  if (d == 0) return false;
  const int h = ToInt(s.substr(0, d));
  return h >= 1 && h <= 12 && IsMeridiemSuffix(s.substr(d));
}

bool IsMilitary(std::string_view s) {
  return s.size() == 4 && AllDigits(s) && ToInt(s.substr(0, 2)) <= 23 &&
         ToInt(s.substr(2)) <= 59;
}

bool IsYear(std::string_view s) {
  return s.size() == 4 && AllDigits(s) && ToInt(s) >= 1900 && ToInt(s) <= 2099;
}

// m/d, m/d/yy, m/d/yyyy, yyyy-mm-dd.
bool IsDate(std::string_view s) {
  auto parts = [](std::string_view v, char sep) {
    std::vector<std::string_view> out;
    size_t b = 0;
    while (true) {
      const size_t e = v.find(sep, b);
      out.push_back(v.substr(b, e == std::string_view::npos ? e : e - b));
      if (e == std::string_view::npos) break;
      b = e + 1;
    }
    return out;
  };
  if (s.find('/') != std::string_view::npos) {
    auto p = parts(s, '/');
    if (p.size() < 2 || p.size() > 3) return false;
    for (auto x : p) {
      if (!AllDigits(x)) return false;
    }
    if (p[0].size() > 2 || p[1].size() > 2) return false;
    const int m = ToInt(p[0]), d = ToInt(p[1]);
    if (m < 1 || m > 12 || d < 1 || d > 31) return false;
    return p.size() == 2 || p[2].size() == 2 || p[2].size() == 4;
  }
  if (s.find('-') != std::string_view::npos) {
    auto p = parts(s, '-');
    return p.size() == 3 && p[0].size() == 4 && p[1].size() == 2 &&
           p[2].size() == 2 && AllDigits(p[0]) && AllDigits(p[1]) &&
           AllDigits(p[2]) && ToInt(p[1]) >= 1 && ToInt(p[1]) <= 12;
  }
  return false;
}

bool IsDigitOrdinal(std::string_view s) {
  if (s.size() < 3 || s.size() > 4) return false;
  const std::string_view num = s.substr(0, s.size() - 2);
  const std::string_view suf = s.substr(s.size() - 2);
  if (!AllDigits(num) || ToInt(num) < 1 || ToInt(num) > 31) return false;
  return suf == "st" || suf == "nd" || suf == "rd" || suf == "th";
}

constexpr std::array<std::string_view, 12> kOrdinalWords = {
    "first", "second", "third", "fourth", "fifth", "sixth", "seventh",
    "eighth", "ninth", "tenth", "eleventh", "twelfth"};

constexpr std::array<std::string_view, 16> kNumberWords = {
    "one", "two", "three", "four", "five", "six", "seven", "eight",
    "nine", "ten", "eleven", "twelve", "fifteen", "twenty", "thirty", "few"};

template <size_t N>
bool In(const std::array<std::string_view, N>& words, std::string_view w) {
  return std::find(words.begin(), words.end(), w) != words.end();
}

struct Interval {
  int first;
  int last;
  std::vector<std::string> rules;
};

}  // namespace

TokenInfo ClassifyToken(const std::string& token, const TimeLexicon& lex) {
  const std::string lw = AsciiLower(token);
  if (auto t = lex.Find(lw)) {
    switch (*t) {
      case TimeType::kUnit: return {TokenClass::kUnit, "UNIT"};
      case TimeType::kModifier: return {TokenClass::kModifier, "MODIFIER"};
      case TimeType::kMeridiem: return {TokenClass::kMeridiem, "MERIDIEM"};
      default: return {TokenClass::kCore, TimeTypeName(*t)};
    }
  }
  if (IsClock(lw)) return {TokenClass::kCore, "CLOCK"};
  if (IsHourMeridiem(lw)) return {TokenClass::kCore, "CLOCK"};
  if (IsMilitary(lw)) return {TokenClass::kCore, "MILITARY"};
  if (IsYear(lw)) return {TokenClass::kCore, "YEAR"};
  if (IsDate(lw)) return {TokenClass::kCore, "DATE"};
  if (IsDigitOrdinal(lw) || In(kOrdinalWords, lw)) return {TokenClass::kOrdinal, ""};
  if ((AllDigits(lw) && lw.size() <= 2) || In(kNumberWords, lw)) {
    return {TokenClass::kNumeral, ""};
  }
  if (lw == "at" || lw == "of") return {TokenClass::kConnector, ""};
  return {};
}

CandidateSet ExtractCandidates(const corpus::Document& doc,
                               const TimeLexicon& lex) {
  CandidateSet out;
  const auto& tokens = doc.tokens();
  std::vector<TokenInfo> info(tokens.size());
  for (size_t i = 0; i < tokens.size(); ++i) {
    info[i] = ClassifyToken(tokens[i].text, lex);
  }
  auto cls = [&](int i) { return info[i].cls; };

  for (const corpus::Sentence& sent : doc.sentences()) {
    const int lo = sent.first_token, hi = sent.last_token;
    auto is_left_attach = [&](int i) {
      return cls(i) == TokenClass::kModifier || cls(i) == TokenClass::kNumeral ||
             cls(i) == TokenClass::kOrdinal;
    };
    auto is_right_attach = [&](int i) {
      return cls(i) == TokenClass::kMeridiem || cls(i) == TokenClass::kNumeral ||
             cls(i) == TokenClass::kOrdinal;
    };
    auto is_core = [&](int i) {
      switch (cls(i)) {
        case TokenClass::kCore:
          return true;
        case TokenClass::kUnit:
          return i > lo && is_left_attach(i - 1);
        case TokenClass::kMeridiem:
          return i > lo && cls(i - 1) == TokenClass::kNumeral;
        case TokenClass::kOrdinal:
          // "21st of May"
          return i + 2 <= hi && cls(i + 1) == TokenClass::kConnector &&
                 info[i + 2].cls == TokenClass::kCore &&
                 info[i + 2].rule == "MONTH";
        default:
          return false;
      }
    };

    std::vector<Interval> groups;
    for (int i = lo; i <= hi; ++i) {
      if (!is_core(i)) continue;
      int first = i, last = i;
      while (first > lo && is_left_attach(first - 1)) --first;
      while (last < hi && (is_right_attach(last + 1) || is_core(last + 1))) {
        ++last;
      }
      std::vector<std::string> rules;
      for (int k = first; k <= last; ++k) {
        if (is_core(k)) {
          const std::string r = info[k].rule.empty() ? "ORDINAL" : info[k].rule;
          if (rules.empty() || rules.back() != r) rules.push_back(r);
        }
      }
      if (!groups.empty() && first <= groups.back().last + 1) {
        groups.back().last = std::max(groups.back().last, last);
        for (auto& r : rules) {
          if (groups.back().rules.back() != r) groups.back().rules.push_back(r);
        }
      } else {
        groups.push_back({first, last, std::move(rules)});
      }
      i = last;
    }

    // Merge groups sandwiching a single connector.
    std::vector<Interval> merged;
    for (auto& g : groups) {
      if (!merged.empty() && g.first == merged.back().last + 2 &&
          cls(g.first - 1) == TokenClass::kConnector) {
        merged.back().last = g.last;
        for (auto& r : g.rules) {
          if (merged.back().rules.back() != r) merged.back().rules.push_back(r);
        }
      } else {
        merged.push_back(std::move(g));
      }
    }

    for (const Interval& g : merged) {
      std::string rule;
      for (const auto& r : g.rules) {
        if (!rule.empty()) rule += "+";
        rule += r;
      }
      out.entities.push_back(corpus::MakeSpan(doc, g.first, g.last, rule));
    }
  }
  return out;
}

}  // namespace timescope::ruletag
