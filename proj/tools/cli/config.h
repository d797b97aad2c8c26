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

#ifndef TIMESCOPE_TOOLS_CLI_CONFIG_H_
#define TIMESCOPE_TOOLS_CLI_CONFIG_H_

#include <cstdint>
#include <iosfwd>
#include <string>

#include "timescope/nn/hyper.h"

namespace timescope::cli {

// Settings shared by every subcommand. The config file is flat key=value;
// "hyper.<name>" keys override scorer hyperparameters.
struct PipelineConfig {
  std::string corpus;
  std::string corpus_format = "jsonl";
  std::string val_corpus;
  std::string dependency_parses;
  std::string constituency_parses;
  std::string lexicon;
  std::string cue_lexicon;
  std::string model;
  std::string predictions;
  std::string histogram;
  std::string out;
  std::string format = "jsonl";
  int synthetic_docs = 0;
  double val_fraction = 0.15;
  uint64_t seed = 1;
  nn::Hyper hyper;
};

// Throws ConfigError for unknown keys or malformed values.
void SetConfigValue(PipelineConfig* cfg, const std::string& key, const std::string& value);

// Blank lines and '#' comments are skipped.
PipelineConfig ParseConfig(std::istream& in);
PipelineConfig LoadConfig(const std::string& path);

}  // namespace timescope::cli

#endif  // TIMESCOPE_TOOLS_CLI_CONFIG_H_
