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

#include <string>

#include <gtest/gtest.h>

#include "avkit/error.h"
#include "avkit/random.h"
#include "avkit/synthetic.h"

namespace avkit {
namespace {

const std::string kDante =
    "Nel mezzo del cammin di nostra vita mi ritrovai per una selva oscura, "
    "che la diritta via era smarrita. Ahi quanto a dir qual era e cosa dura "
    "esta selva selvaggia e aspra e forte che nel pensier rinova la paura! "
    "Tant e amara che poco e piu morte; ma per trattar del ben ch'i' vi "
    "trovai, diro de l'altre cose ch'i' v'ho scorte.";

std::string RandomBytes(Rng& rng, size_t n) {
  std::string s(n, '\0');
  for (auto& c : s) c = static_cast<char>(rng.Below(256));
  return s;
}

std::vector<std::string> SyntheticTexts() {
  SyntheticConfig cfg;
  cfg.authors = 10;
  std::vector<std::string> out;
  for (const auto& a : GenerateSyntheticCorpus(cfg).authors) {
    std::string s;
    for (const auto& d : a.documents) {
      s += d.text + " ";
      if (s.size() > 2000) break;
    }
    out.push_back(s);
  }
  return out;
}

TEST(Lz77, RoundTrip) {
  Rng rng(1);
  std::vector<std::string> inputs = {"", "a", "ab", "aaa", kDante,
                                     std::string(100000, 'z'),
                                     RandomBytes(rng, 5000)};
  std::string periodic;
  for (int i = 0; i < 20000; ++i) periodic += static_cast<char>('a' + i % 17);
  inputs.push_back(periodic);
  // repeats farther apart than the window
  const std::string block = RandomBytes(rng, 40000);
  inputs.push_back(block + block);
  for (const auto& in : inputs) {
    const auto z = lz77::Compress(in);
    EXPECT_EQ(z.size(), lz77::CompressedSize(in));
    EXPECT_EQ(lz77::Decompress(z), in) << in.size();
  }
}

TEST(Lz77, FrozenSize) {
  EXPECT_EQ(lz77::CompressedSize(kDante), 324u);
  EXPECT_LT(lz77::CompressedSize(std::string(100000, 'z')), 2000u);
}

TEST(Lz77, CorruptStreamThrows) {
  auto z = lz77::Compress(kDante);
  z.resize(z.size() / 2);
  EXPECT_THROW(lz77::Decompress(z), DataError);
  const std::vector<uint8_t> back_ref = {4, 0x01, 0xff, 0x7f, 0x00};
  EXPECT_THROW(lz77::Decompress(back_ref), DataError);
}

TEST(Ncd, SelfDistanceIsSmall) {
  EXPECT_LE(Ncd(kDante, kDante), 0.3);
  for (const auto& t : SyntheticTexts()) {
    EXPECT_LE(Ncd(t, t), 0.05);
    EXPECT_GE(Ncd(t, t), 0.0);
  }
}

TEST(Ncd, RandomStringsAreFar) {
  Rng rng(2);
  for (int i = 0; i < 30; ++i) {
    const std::string a = RandomBytes(rng, 200 + rng.Below(2000));
    const std::string b = RandomBytes(rng, 200 + rng.Below(2000));
    EXPECT_GE(Ncd(a, b), 0.8);
  }
}

TEST(Ncd, NearlySymmetric) {
  const auto texts = SyntheticTexts();
  for (const auto& a : texts) {
    for (const auto& b : texts) {
      EXPECT_LE(std::abs(Ncd(a, b) - Ncd(b, a)), 0.05);
    }
  }
}

}  // namespace
}  // namespace avkit
