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

#ifndef AVKIT_SYNTHETIC_H_
#define AVKIT_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "avkit/corpus.h"

namespace avkit {

// Generator for corpora with controllable per-author style. Every author
// draws content words from a personal Zipfian ranking mixed with a shared
// one, and has their own function-word rate, punctuation habits and
// sentence length.
struct SyntheticConfig {
  std::string name = "synthetic";
  size_t authors = 60;
  size_t docs_per_author = 12;
  size_t min_doc_words = 40;
  size_t max_doc_words = 120;
  size_t vocabulary = 3000;
  double zipf_exponent = 1.1;
  // Share of content words taken from the author's own ranking.
  double personal_weight = 0.6;
  // Documents cycle through these topics; empty means no topic field.
  std::vector<std::string> topics;
  Genre genre = Genre::kForum;
  uint64_t seed = 1;
};

// Genders alternate F, M, F, ... in author order.
Corpus GenerateSyntheticCorpus(const SyntheticConfig& cfg);

}  // namespace avkit

#endif  // AVKIT_SYNTHETIC_H_
