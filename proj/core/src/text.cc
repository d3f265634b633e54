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

#include "avkit/text.h"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

namespace avkit::text {
namespace {

// Calls fn(code_point, byte_begin, byte_end) for every code point.
template <typename Fn>
void ForEachCodePoint(std::string_view s, Fn&& fn) {
  const auto* p = reinterpret_cast<const uint8_t*>(s.data());
  const int32_t n = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < n) {
    const int32_t begin = i;
    UChar32 c;
    U8_NEXT(p, i, n, c);
    if (c < 0) c = 0xFFFD;
    fn(static_cast<char32_t>(c), static_cast<size_t>(begin),
       static_cast<size_t>(i));
  }
}

bool IsAsciiSpace(unsigned char c) {
  return c == ' ' || (c >= '\t' && c <= '\r');
}

}  // namespace

std::u32string Decode(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  ForEachCodePoint(utf8, [&](char32_t c, size_t, size_t) { out.push_back(c); });
  return out;
}

void AppendUtf8(char32_t cp, std::string& out) {
  uint8_t buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool error = false;
  U8_APPEND(buf, len, U8_MAX_LENGTH, static_cast<UChar32>(cp), error);
  if (error) {
    AppendUtf8(0xFFFD, out);
    return;
  }
  out.append(reinterpret_cast<const char*>(buf), static_cast<size_t>(len));
}

std::string Encode(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t c : cps) AppendUtf8(c, out);
  return out;
}

size_t Length(std::string_view utf8) {
  size_t n = 0;
  ForEachCodePoint(utf8, [&](char32_t, size_t, size_t) { ++n; });
  return n;
}

size_t ByteOffset(std::string_view utf8, size_t cp_index) {
  size_t index = 0;
  size_t result = std::string_view::npos;
  ForEachCodePoint(utf8, [&](char32_t, size_t begin, size_t) {
    if (index == cp_index) result = begin;
    ++index;
  });
  if (index == cp_index) return utf8.size();
  return result;
}

std::vector<std::string_view> Words(std::string_view text) {
  std::vector<std::string_view> words;
  size_t start = std::string_view::npos;
  auto close = [&](size_t end) {
    if (start != std::string_view::npos) {
      words.push_back(text.substr(start, end - start));
      start = std::string_view::npos;
    }
  };
  size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (c < 0x80) {
      if (IsAsciiSpace(c)) {
        close(i);
      } else if (start == std::string_view::npos) {
        start = i;
      }
      ++i;
      continue;
    }
    const auto* p = reinterpret_cast<const uint8_t*>(text.data());
    auto j = static_cast<int32_t>(i);
    UChar32 cp;
    U8_NEXT(p, j, static_cast<int32_t>(text.size()), cp);
    if (cp >= 0 && u_isUWhiteSpace(cp)) {
      close(i);
    } else if (start == std::string_view::npos) {
      start = i;
    }
    i = static_cast<size_t>(j);
  }
  close(text.size());
  return words;
}

size_t CountWords(std::string_view text) { return Words(text).size(); }

std::string Join(const std::vector<std::string_view>& words,
                 std::string_view sep) {
  std::string out;
  size_t total = 0;
  for (auto w : words) total += w.size() + sep.size();
  out.reserve(total);
  for (size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out.append(sep);
    out.append(words[i]);
  }
  return out;
}

std::string_view Trim(std::string_view s) {
  size_t begin = 0;
  size_t end = s.size();
  while (begin < end && IsAsciiSpace(static_cast<unsigned char>(s[begin]))) {
    ++begin;
  }
  while (end > begin && IsAsciiSpace(static_cast<unsigned char>(s[end - 1]))) {
    --end;
  }
  return s.substr(begin, end - begin);
}

std::string Lower(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  ForEachCodePoint(utf8, [&](char32_t c, size_t, size_t) {
    if (c < 0x80) {
      out.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c + 32 : c));
    } else {
      AppendUtf8(static_cast<char32_t>(u_tolower(static_cast<UChar32>(c))),
                 out);
    }
  });
  return out;
}

bool IsWhitespace(char32_t cp) {
  return u_isUWhiteSpace(static_cast<UChar32>(cp));
}
bool IsUpper(char32_t cp) { return u_isupper(static_cast<UChar32>(cp)); }
bool IsLower(char32_t cp) { return u_islower(static_cast<UChar32>(cp)); }
bool IsDigit(char32_t cp) { return u_isdigit(static_cast<UChar32>(cp)); }
bool IsLetter(char32_t cp) { return u_isalpha(static_cast<UChar32>(cp)); }
bool IsAlnum(char32_t cp) { return u_isalnum(static_cast<UChar32>(cp)); }

bool IsPunctuation(char32_t cp) {
  return (U_GET_GC_MASK(static_cast<UChar32>(cp)) & U_GC_P_MASK) != 0;
}

}  // namespace avkit::text
