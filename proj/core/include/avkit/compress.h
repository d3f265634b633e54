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

#ifndef AVKIT_COMPRESS_H_
#define AVKIT_COMPRESS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace avkit {

// Fixed-parameter LZ77 coder used for the compression-based features. The
// output depends only on the input bytes, so compressed sizes are identical
// across platforms and library versions.
//
// Stream layout: LEB128 varint of the decoded length, then groups of one
// flag byte followed by up to eight tokens, least significant flag bit first.
// A clear bit is a literal byte; a set bit is a three-byte match holding the
// 15-bit (distance - 1) little-endian followed by (length - 3).
namespace lz77 {

inline constexpr size_t kWindow = 32768;
inline constexpr size_t kMinMatch = 3;
inline constexpr size_t kMaxMatch = 258;
// Hash-chain candidates examined per position.
inline constexpr size_t kMaxChain = 4096;

std::vector<uint8_t> Compress(std::string_view input);
// Throws DataError on a corrupt stream.
std::string Decompress(std::span<const uint8_t> stream);
size_t CompressedSize(std::string_view input);

}  // namespace lz77

// Normalized compression distance
//   (C(ab) - min(C(a), C(b))) / max(C(a), C(b)),
// clamped below at 0.
double Ncd(std::string_view a, std::string_view b);

}  // namespace avkit

#endif  // AVKIT_COMPRESS_H_
