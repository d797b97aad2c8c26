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

#ifndef TIMESCOPE_TOOLS_CLI_COMMANDS_H_
#define TIMESCOPE_TOOLS_CLI_COMMANDS_H_

#include <iosfwd>
#include <string>

#include "cli/config.h"

namespace timescope::cli {

enum ExitCode {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitNumeric = 3,
  kExitPartial = 4,
};

// Each command writes its primary output to `cfg.out` when set and to
// `out` otherwise; progress and warnings go to `log`. They throw
// timescope errors; RunCommand maps those to exit codes.

// One line per candidate: {"doc","entity":[start,end],"text","rule"}.
void CmdExtract(const PipelineConfig& cfg, std::ostream& out, std::ostream& log);

// Trains on `corpus` (or `synthetic_docs` generated documents) and writes
// the container to `model`. The validation set is `val_corpus` or the
// trailing `val_fraction` of the documents.
void CmdTrain(const PipelineConfig& cfg, std::ostream& out, std::ostream& log);

// One line per document: {"doc","entities":[...]} with the relevant
// entities and their negation decisions. Returns the number of documents
// that failed.
int CmdPipeline(const PipelineConfig& cfg, std::ostream& out, std::ostream& log);

// Negation decisions for the corpus's annotated relevant entities, one line
// per entity: {"doc","entity","negated","via","cue","negated_part","part"}, where
// "part" is the character range of the negated portion.
// Returns the number of documents that failed.
int CmdNegate(const PipelineConfig& cfg, std::ostream& out, std::ostream& log);

// Scores `predictions` (pipeline or negate output) against the gold
// `corpus` and writes key=value metrics. A negated prediction counts by its
// "part" range when present. With `model` and `histogram` set,
// also writes the localization overlap histogram of gold relevant entities.
void CmdEval(const PipelineConfig& cfg, std::ostream& out, std::ostream& log);

// Writes `synthetic_docs` synthetic documents to `out` and their parse
// sidecars to `dependency_parses` / `constituency_parses` (default
// <out>.conllu and <out>.ptb).
void CmdGenerate(const PipelineConfig& cfg, std::ostream& out, std::ostream& log);

// Runs a command by name and maps errors to exit codes, printing the
// message to `log`.
int RunCommand(const std::string& name, const PipelineConfig& cfg, std::ostream& out,
               std::ostream& log);

}  // namespace timescope::cli

#endif  // TIMESCOPE_TOOLS_CLI_COMMANDS_H_
