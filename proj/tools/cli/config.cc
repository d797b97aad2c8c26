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

#include "cli/config.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>

#include "timescope/error.h"

namespace timescope::cli {
namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T ParseNumber(const std::string& key, const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("config: bad value '" + value + "' for " + key);
  }
  return out;
}

}  // namespace

void SetConfigValue(PipelineConfig* cfg, const std::string& key, const std::string& value) {
  const std::map<std::string, std::string*> strings = {
      {"corpus", &cfg->corpus},
      {"corpus_format", &cfg->corpus_format},
      {"val_corpus", &cfg->val_corpus},
      {"dependency_parses", &cfg->dependency_parses},
      {"constituency_parses", &cfg->constituency_parses},
      {"lexicon", &cfg->lexicon},
      {"cue_lexicon", &cfg->cue_lexicon},
      {"model", &cfg->model},
      {"predictions", &cfg->predictions},
      {"histogram", &cfg->histogram},
      {"out", &cfg->out},
      {"format", &cfg->format},
  };
  if (auto it = strings.find(key); it != strings.end()) {
    *it->second = value;
  } else if (key == "synthetic_docs") {
    cfg->synthetic_docs = ParseNumber<int>(key, value);
  } else if (key == "val_fraction") {
    cfg->val_fraction = ParseNumber<double>(key, value);
    if (!(cfg->val_fraction > 0 && cfg->val_fraction < 1)) {
      throw ConfigError("config: val_fraction must lie in (0, 1)");
    }
  } else if (key == "seed") {
    cfg->seed = ParseNumber<uint64_t>(key, value);
  } else if (key.rfind("hyper.", 0) == 0) {
    bool ok = false;
    try {
      ok = cfg->hyper.Set(key.substr(6), value);
    } catch (const std::exception&) {
      ok = false;
    }
    if (!ok) throw ConfigError("config: bad hyperparameter " + key + "=" + value);
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

PipelineConfig ParseConfig(std::istream& in) {
  PipelineConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    }
    SetConfigValue(&cfg, Trim(line.substr(0, eq)), Trim(line.substr(eq + 1)));
  }
  return cfg;
}

PipelineConfig LoadConfig(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return ParseConfig(in);
}

}  // namespace timescope::cli
