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

#ifndef TIMESCOPE_UNICODE_H_
#define TIMESCOPE_UNICODE_H_

#include <string>
#include <string_view>

namespace timescope {

// Decodes UTF-8 into code points. Invalid sequences throw FormatError.
std::u32string DecodeUtf8(std::string_view utf8);

std::string EncodeUtf8(std::u32string_view cps);
void AppendUtf8(char32_t cp, std::string* out);

// Number of code points in a UTF-8 string.
size_t CodePointLength(std::string_view utf8);

// ASCII-only case folding; other code points pass through.
char32_t AsciiLower(char32_t c);
std::string AsciiLower(std::string_view s);

bool IsSpace(char32_t c);
bool IsDigit(char32_t c);
bool IsUpper(char32_t c);
// Letters and digits, counting every non-ASCII code point that is not
// typographic punctuation as a letter.
bool IsWordChar(char32_t c);

}  // namespace timescope

#endif  // TIMESCOPE_UNICODE_H_
