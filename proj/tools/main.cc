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

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cli/commands.h"
#include "cli/config.h"
#include "timescope/error.h"

namespace {

struct Flags {
  std::string config;
  std::optional<uint64_t> seed;
  std::map<std::string, std::string> values;  // config key -> flag value
};

void AddFlags(CLI::App* cmd, Flags* flags) {
  cmd->add_option("--config", flags->config, "flat key=value config file");
  cmd->add_option("--seed", flags->seed, "random seed");
  const std::pair<const char*, const char*> options[] = {
      {"format", "output format (jsonl)"},
      {"model", "model container path"},
      {"out", "primary output path"},
      {"corpus", "input corpus path"},
      {"corpus-format", "corpus format: jsonl or timeml-lite"},
      {"val-corpus", "validation corpus path"},
      {"dep", "dependency parse sidecar (CoNLL-U)"},
      {"const", "constituency parse sidecar (bracketed)"},
      {"lexicon", "time lexicon additions"},
      {"cue-lexicon", "negation cue lexicon additions"},
      {"predictions", "predictions to evaluate"},
      {"histogram", "localization histogram output"},
      {"docs", "number of synthetic documents"},
  };
  const std::map<std::string, std::string> keys = {
      {"corpus-format", "corpus_format"}, {"val-corpus", "val_corpus"},
      {"dep", "dependency_parses"},       {"const", "constituency_parses"},
      {"cue-lexicon", "cue_lexicon"},     {"docs", "synthetic_docs"},
  };
  for (const auto& [name, help] : options) {
    const auto it = keys.find(name);
    const std::string key = it == keys.end() ? name : it->second;
    cmd->add_option_function<std::string>(
        std::string("--") + name,
        [flags, key](const std::string& v) { flags->values[key] = v; }, help);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"timescope: scheduling-relevant date-time extraction"};
  app.require_subcommand(1);
  Flags flags;
  const std::pair<const char*, const char*> commands[] = {
      {"extract", "rule-based candidate extraction"},
      {"train", "train the relevance scorer"},
      {"pipeline", "extract, score and detect negation"},
      {"negate", "negation decisions for annotated relevant entities"},
      {"eval", "score predictions against a gold corpus"},
      {"generate", "write a synthetic corpus with parse sidecars"},
  };
  for (const auto& [name, help] : commands) AddFlags(app.add_subcommand(name, help), &flags);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : timescope::cli::kExitConfig;
  }
  const std::string name = app.get_subcommands().front()->get_name();

  timescope::cli::PipelineConfig cfg;
  try {
    cfg = timescope::cli::LoadConfig(flags.config);
    for (const auto& [key, value] : flags.values) {
      timescope::cli::SetConfigValue(&cfg, key, value);
    }
    if (flags.seed) cfg.seed = *flags.seed;
  } catch (const timescope::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return timescope::cli::kExitConfig;
  }
  return timescope::cli::RunCommand(name, cfg, std::cout, std::cerr);
}
