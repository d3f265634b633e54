// Copyright 2026 The avkit Authors.
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

#ifndef AVKIT_TEXT_H_
#define AVKIT_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

// UTF-8 helpers and Unicode character classes shared by every text module.
// A word is a maximal run of non-whitespace code points, whitespace being
// the Unicode White_Space property.
namespace avkit::text {

// Invalid byte sequences decode to U+FFFD.
std::u32string Decode(std::string_view utf8);
void AppendUtf8(char32_t cp, std::string& out);
std::string Encode(std::u32string_view cps);

// Number of code points.
size_t Length(std::string_view utf8);

// Byte offset of the `cp_index`-th code point; Length(utf8) maps to size().
// Returns npos when cp_index is past the end.
size_t ByteOffset(std::string_view utf8, size_t cp_index);

std::vector<std::string_view> Words(std::string_view text);
size_t CountWords(std::string_view text);
std::string Join(const std::vector<std::string_view>& words,
                 std::string_view sep = " ");

std::string_view Trim(std::string_view s);
std::string Lower(std::string_view utf8);

bool IsWhitespace(char32_t cp);
bool IsUpper(char32_t cp);
bool IsLower(char32_t cp);
bool IsDigit(char32_t cp);
bool IsLetter(char32_t cp);
bool IsAlnum(char32_t cp);
// Unicode general categories Pc, Pd, Ps, Pe, Pi, Pf, Po.
bool IsPunctuation(char32_t cp);

}  // namespace avkit::text

#endif  // AVKIT_TEXT_H_
