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

#include "avkit/compress.h"

#include <algorithm>

#include "avkit/error.h"

namespace avkit {
namespace lz77 {
namespace {

constexpr size_t kHashBits = 15;
constexpr size_t kHashSize = size_t{1} << kHashBits;
constexpr uint32_t kNoPos = UINT32_MAX;

inline uint32_t Hash3(const uint8_t* p) {
  const uint32_t v = uint32_t{p[0]} << 16 | uint32_t{p[1]} << 8 | p[2];
  return (v * 2654435761u) >> (32 - kHashBits);
}

void PutVarint(uint64_t v, std::vector<uint8_t>& out) {
  while (v >= 0x80) {
    out.push_back(static_cast<uint8_t>(v | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<uint8_t>(v));
}

class TokenWriter {
 public:
  explicit TokenWriter(std::vector<uint8_t>& out) : out_(out) {}

  void Literal(uint8_t byte) {
    Slot(false);
    out_.push_back(byte);
  }

  void Match(size_t distance, size_t length) {
    Slot(true);
    const size_t d = distance - 1;
    out_.push_back(static_cast<uint8_t>(d & 0xFF));
    out_.push_back(static_cast<uint8_t>((d >> 8) & 0x7F));
    out_.push_back(static_cast<uint8_t>(length - kMinMatch));
  }

 private:
  void Slot(bool is_match) {
    if (count_ == 8) count_ = 0;
    if (count_ == 0) {
      flag_index_ = out_.size();
      out_.push_back(0);
    }
    if (is_match) out_[flag_index_] |= static_cast<uint8_t>(1u << count_);
    ++count_;
  }

  std::vector<uint8_t>& out_;
  size_t flag_index_ = 0;
  int count_ = 0;
};

}  // namespace

std::vector<uint8_t> Compress(std::string_view input) {
  const auto* data = reinterpret_cast<const uint8_t*>(input.data());
  const size_t n = input.size();
  std::vector<uint8_t> out;
  out.reserve(n / 2 + 16);
  PutVarint(n, out);
  TokenWriter writer(out);

  std::vector<uint32_t> head(kHashSize, kNoPos);
  std::vector<uint32_t> prev(kWindow, kNoPos);
  auto insert = [&](size_t pos) {
    if (pos + kMinMatch > n) return;
    const uint32_t h = Hash3(data + pos);
    prev[pos % kWindow] = head[h];
    head[h] = static_cast<uint32_t>(pos);
  };

  size_t i = 0;
  while (i < n) {
    size_t best_len = 0;
    size_t best_dist = 0;
    if (i + kMinMatch <= n) {
      const size_t max_len = std::min(kMaxMatch, n - i);
      uint32_t cand = head[Hash3(data + i)];
      for (size_t chain = 0; cand != kNoPos && chain < kMaxChain; ++chain) {
        const size_t dist = i - cand;
        if (dist > kWindow) break;
        size_t len = 0;
        while (len < max_len && data[cand + len] == data[i + len]) ++len;
        if (len > best_len) {
          best_len = len;
          best_dist = dist;
          if (len == max_len) break;
        }
        const uint32_t next = prev[cand % kWindow];
        // Older entries overwritten in the ring buffer show up as positions
        // at or after cand; stop there.
        if (next == kNoPos || next >= cand) break;
        cand = next;
      }
    }
    if (best_len >= kMinMatch) {
      writer.Match(best_dist, best_len);
      for (size_t k = 0; k < best_len; ++k) insert(i + k);
      i += best_len;
    } else {
      writer.Literal(data[i]);
      insert(i);
      ++i;
    }
  }
  return out;
}

std::string Decompress(std::span<const uint8_t> stream) {
  size_t pos = 0;
  uint64_t n = 0;
  for (int shift = 0;; shift += 7) {
    if (pos >= stream.size() || shift > 63) {
      throw DataError("lz77: truncated length header");
    }
    const uint8_t b = stream[pos++];
    n |= uint64_t{b & 0x7Fu} << shift;
    if (!(b & 0x80)) break;
  }
  std::string out;
  out.reserve(n);
  while (out.size() < n) {
    if (pos >= stream.size()) throw DataError("lz77: truncated stream");
    const uint8_t flags = stream[pos++];
    for (int k = 0; k < 8 && out.size() < n; ++k) {
      if (flags & (1u << k)) {
        if (pos + 3 > stream.size()) throw DataError("lz77: truncated match");
        const size_t dist =
            (size_t{stream[pos]} | size_t{stream[pos + 1]} << 8) + 1;
        const size_t len = size_t{stream[pos + 2]} + kMinMatch;
        pos += 3;
        if (dist > out.size() || out.size() + len > n) {
          throw DataError("lz77: match out of range");
        }
        const size_t from = out.size() - dist;
        for (size_t j = 0; j < len; ++j) out.push_back(out[from + j]);
      } else {
        if (pos >= stream.size()) throw DataError("lz77: truncated literal");
        out.push_back(static_cast<char>(stream[pos++]));
      }
    }
  }
  if (pos != stream.size()) throw DataError("lz77: trailing bytes");
  return out;
}

size_t CompressedSize(std::string_view input) { return Compress(input).size(); }

}  // namespace lz77

double Ncd(std::string_view a, std::string_view b) {
  const double ca = static_cast<double>(lz77::CompressedSize(a));
  const double cb = static_cast<double>(lz77::CompressedSize(b));
  std::string ab;
  ab.reserve(a.size() + b.size());
  ab.append(a).append(b);
  const double cab = static_cast<double>(lz77::CompressedSize(ab));
  return std::max(0.0, (cab - std::min(ca, cb)) / std::max(ca, cb));
}

}  // namespace avkit
