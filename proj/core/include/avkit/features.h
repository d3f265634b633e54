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

#ifndef AVKIT_FEATURES_H_
#define AVKIT_FEATURES_H_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "avkit/corpus.h"

namespace avkit {

inline constexpr size_t kCoreFeatureCount = 24;
inline constexpr size_t kGenderFeatureCount = 3;
inline constexpr size_t kFullFeatureCount =
    kCoreFeatureCount + kGenderFeatureCount;

// Frozen order. Renaming or reordering invalidates persisted models.
inline constexpr std::array<std::string_view, kFullFeatureCount>
    kFeatureNames = {
        "char2_cosine",
        "char3_cosine",
        "char4_cosine",
        "token_unigram_cosine",
        "token_bigram_cosine",
        "function_word_cosine",
        "punct_char_cosine",
        "punct_bigram_cosine",
        "word_length_cosine",
        "word_shape_cosine",
        "avg_word_length_diff",
        "avg_sentence_length_diff",
        "type_token_ratio_diff",
        "hapax_ratio_diff",
        "uppercase_ratio_diff",
        "digit_ratio_diff",
        "whitespace_ratio_diff",
        "initial_capital_ratio_diff",
        "char_entropy_diff",
        "char_trigram_cross_entropy",
        "char_unigram_jsd",
        "ncd",
        "compression_ratio_diff",
        "conditional_compression",
        "gender_known",
        "gender_unknown",
        "same_gender",
};

enum class FeatureKind {
  kSimilarity,   // cosine in [0, 1]; 1 for identical texts
  kDifference,   // |a - b| or a divergence; 0 for identical texts
  kDirectional,  // depends on which text is known
  kDistance,     // NCD: near 0 for identical texts, roughly symmetric
  kGender,
};

FeatureKind KindOf(size_t index);

struct FeatureVector {
  std::vector<double> values;

  size_t size() const { return values.size(); }
  bool has_gender() const { return values.size() == kFullFeatureCount; }
  std::span<const std::string_view> names() const {
    return std::span(kFeatureNames).first(values.size());
  }
  double operator[](size_t i) const { return values[i]; }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

struct GenderFeatures {
  int gender_known = 0;  // F = 0, M = 1
  int gender_unknown = 0;
  int same_gender = 1;

  static GenderFeatures From(Gender known, Gender unknown);
};

// Throws InvariantError unless v holds exactly the 24 core features.
FeatureVector AppendGender(FeatureVector v, const GenderFeatures& g);

// Identity-free helpers, exposed for tests.
namespace features {

// Cosine similarity of sparse count vectors given as sorted (key, count)
// runs. Two empty vectors are maximally similar (1); empty vs non-empty is 0.
template <typename Key>
using Counts = std::vector<std::pair<Key, long long>>;

template <typename Key>
double Cosine(const Counts<Key>& a, const Counts<Key>& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty() ? 1.0 : 0.0;
  if (a == b) return 1.0;
  // Integer accumulation keeps the result exact up to the final division.
  long long dot = 0;
  long long na = 0;
  long long nb = 0;
  for (const auto& [k, c] : a) na += c * c;
  for (const auto& [k, c] : b) nb += c * c;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      dot += i->second * j->second;
      ++i;
      ++j;
    }
  }
  const double c = static_cast<double>(dot) /
                   std::sqrt(static_cast<double>(na) * static_cast<double>(nb));
  return std::min(1.0, c);
}

Counts<std::u32string> CharNgrams(std::u32string_view cps, size_t n);
double ShannonEntropyBits(std::u32string_view cps);
double JensenShannon(std::u32string_view a, std::u32string_view b);
// Bits per character of `target` under an add-one smoothed character
// trigram model trained on `model`.
double CrossEntropyBits(std::u32string_view model, std::u32string_view target);

}  // namespace features

class FeatureExtractor {
 public:
  // Uses the built-in Italian function-word list.
  FeatureExtractor();
  explicit FeatureExtractor(std::vector<std::string> function_words);

  // One lowercase token per line; blank lines and '#' comments skipped.
  static FeatureExtractor FromWordList(const std::filesystem::path& path);

  // Both texts must be non-empty (DataError otherwise).
  FeatureVector Extract(std::string_view known,
                        std::string_view unknown) const;

  const std::vector<std::string>& function_words() const {
    return function_words_;
  }

 private:
  std::vector<std::string> function_words_;  // sorted, unique
};

FeatureVector Extract(std::string_view known, std::string_view unknown);

std::span<const std::string_view> DefaultItalianFunctionWords();

// Min-max scaling to [0, 1] learned on training vectors. Constant
// dimensions map to 0.5; values outside the training range are clamped.
struct Scaler {
  std::vector<double> min;
  std::vector<double> max;

  static Scaler Fit(std::span<const FeatureVector> train);
  FeatureVector Apply(const FeatureVector& v) const;
  size_t dimension() const { return min.size(); }
};

// CSV with header "problem_id,<feature names>", values with 17 significant
// digits.
void WriteFeatureCsv(const std::filesystem::path& path,
                     std::span<const std::string> problem_ids,
                     std::span<const FeatureVector> vectors);

}  // namespace avkit

#endif  // AVKIT_FEATURES_H_
