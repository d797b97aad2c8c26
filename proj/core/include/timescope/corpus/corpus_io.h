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

#ifndef TIMESCOPE_CORPUS_CORPUS_IO_H_
#define TIMESCOPE_CORPUS_CORPUS_IO_H_

#include <iosfwd>
#include <string>

#include "timescope/corpus/document.h"

namespace timescope::corpus {

enum class CorpusFormat { kJsonl, kTimemlLite };

CorpusFormat ParseCorpusFormat(const std::string& name);

// JSONL: one {"id","text","entities":[{"start","end","relevant","negated"}]}
// object per line, code-point offsets, end exclusive. Entity offsets must
// fall on token boundaries of Tokenize(text).
//
// timeml-lite: <DOC id="..."><TEXT>... <TIMEX3>span</TIMEX3> ...</TEXT></DOC>
// blocks. Each TIMEX3 becomes a relevant entity unless it carries
// relevant="false"; negated="true" marks a negation constraint. Other tags
// are stripped and TimeML attributes ignored.
Corpus ReadCorpus(std::istream& in, CorpusFormat format);
Corpus ReadCorpus(const std::string& path, CorpusFormat format);

void WriteCorpus(const Corpus& corpus, std::ostream& out);
void WriteCorpus(const Corpus& corpus, const std::string& path);

// Single JSONL record; `line` is used in error messages.
AnnotatedDocument ParseJsonlRecord(const std::string& record, int line);
std::string FormatJsonlRecord(const AnnotatedDocument& doc);

}  // namespace timescope::corpus

#endif  // TIMESCOPE_CORPUS_CORPUS_IO_H_
