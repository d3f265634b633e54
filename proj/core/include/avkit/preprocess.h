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

#ifndef AVKIT_PREPROCESS_H_
#define AVKIT_PREPROCESS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "avkit/corpus.h"

namespace avkit {

// ---------------------------------------------------------------------------
// Bleaching
//
// Each token is rewritten as space-separated abstract fields, in the
// configured order:
//   shape      per code point: U upper, L lower, D digit, X other
//   puncta     J emoji, E emoticon, P punctuation, W per alphanumeric run
//   length     code point count, zero-padded ("05")
//   frequency  round(log(count + 1)) of the token's dataset count
// so "House" becomes "ULLLL W 05 6" when it occurs 403 times.

enum class BleachFeature { kShape, kPunctA, kLength, kFrequency };

std::string_view ToString(BleachFeature f);
// Comma-separated list such as "shape,puncta,length,frequency".
std::vector<BleachFeature> ParseBleachFeatures(std::string_view list);

using FrequencyTable = std::unordered_map<std::string, uint64_t>;

struct BleachConfig {
  std::vector<BleachFeature> features = {
      BleachFeature::kShape, BleachFeature::kPunctA, BleachFeature::kLength,
      BleachFeature::kFrequency};
  FrequencyTable frequency_table;
  int length_pad = 2;
  double log_base = std::numbers::e;

  void Validate() const;
};

std::string ShapeField(std::string_view token);
std::string PunctAField(std::string_view token);
std::string LengthField(std::string_view token, int pad);
int FrequencyBucket(uint64_t count, double log_base);

std::string BleachToken(std::string_view token, const BleachConfig& cfg);
// Whitespace-tokenises and joins the bleached tokens with single spaces.
std::string BleachText(std::string_view text, const BleachConfig& cfg);

// ASCII faces recognised as emoticons, longest first.
std::span<const std::string_view> Emoticons();
bool IsEmoji(char32_t cp);

FrequencyTable BuildFrequencyTable(const Corpus& corpus);
void AddToFrequencyTable(std::string_view text, FrequencyTable& table);
// TSV "token<TAB>count", sorted by token.
void WriteFrequencyTable(const FrequencyTable& table,
                         const std::filesystem::path& path);
FrequencyTable ReadFrequencyTable(const std::filesystem::path& path);

std::vector<VerificationProblem> BleachProblems(
    std::vector<VerificationProblem> problems, const BleachConfig& cfg);

// ---------------------------------------------------------------------------
// Entity masking

enum class EntityLabel { kPer, kLoc, kOrg };

std::string_view ToString(EntityLabel l);

// Code point offsets, end exclusive.
struct EntitySpan {
  size_t start = 0;
  size_t end = 0;
  EntityLabel label = EntityLabel::kPer;

  friend bool operator==(const EntitySpan&, const EntitySpan&) = default;
};

// Replaces every span by its label; the rest of the text is untouched.
// Throws DataError on out-of-range or overlapping spans.
std::string MaskEntities(std::string_view text, std::vector<EntitySpan> spans);

class EntityTagger {
 public:
  virtual ~EntityTagger() = default;
  virtual std::vector<EntitySpan> Tag(const Document& doc) const = 0;
};

using EntityAnnotations =
    std::map<std::string, std::vector<EntitySpan>, std::less<>>;

// JSONL records {doc_id, spans: [{start, end, label}]}. MISC spans are
// skipped; any other label besides PER/LOC/ORG is an error.
EntityAnnotations ReadEntityAnnotations(const std::filesystem::path& path);
EntityAnnotations ParseEntityAnnotations(std::istream& in,
                                         std::string_view source);

// Tagger backed by precomputed annotations, looked up by doc_id.
class AnnotationTagger : public EntityTagger {
 public:
  explicit AnnotationTagger(EntityAnnotations annotations)
      : annotations_(std::move(annotations)) {}

  std::vector<EntitySpan> Tag(const Document& doc) const override;

 private:
  EntityAnnotations annotations_;
};

// Masks every document; word counts are recomputed.
Corpus MaskCorpus(Corpus corpus, const EntityTagger& tagger);

}  // namespace avkit

#endif  // AVKIT_PREPROCESS_H_
