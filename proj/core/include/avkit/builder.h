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

#ifndef AVKIT_BUILDER_H_
#define AVKIT_BUILDER_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "avkit/corpus.h"
#include "avkit/error.h"

namespace avkit {

enum class GenderSetting { kFemaleOnly, kMaleOnly, kMixed };

std::string_view ToString(GenderSetting g);
std::optional<GenderSetting> ParseGenderSetting(std::string_view s);

struct BuildConfig {
  int word_budget = 400;
  GenderSetting gender_setting = GenderSetting::kMixed;
  std::optional<std::string> topic_filter;
  uint64_t seed = 0;
  // Problem ids are <id_prefix><5-digit index>.
  std::string id_prefix = "problem";

  // Throws UsageError unless word_budget is even and >= 2.
  void Validate() const;
};

struct SplitSpec {
  double train_fraction = 0.70;
  uint64_t seed = 0;
};

struct AuthorPair {
  std::string known_text;
  std::string unknown_text;
  std::vector<std::string> known_doc_ids;
  std::vector<std::string> unknown_doc_ids;
};

class IneligibleAuthorError : public DataError {
 public:
  using DataError::DataError;
};

// Shuffles the author's documents with `seed`, fills the known side with
// exactly word_budget/2 words (truncating the document that straddles the
// boundary and discarding its remainder) and then fills the unknown side
// from the following documents. No document feeds both sides. Words are
// re-joined with single spaces.
AuthorPair MakeAuthorPair(const Author& author, int word_budget,
                          uint64_t seed);

// True when MakeAuthorPair would succeed.
bool CanMakeAuthorPair(const Author& author, int word_budget, uint64_t seed);

// Seed for an author's document shuffle. Independent of the budget, which
// keeps eligibility nested across budgets.
uint64_t AuthorSeed(uint64_t seed, const Author& author);

// Authors matching the gender setting, restricted to documents whose topic
// (document topic, else corpus topic) equals topic_filter when one is set.
Corpus FilterCorpus(const Corpus& corpus, GenderSetting gender,
                    const std::optional<std::string>& topic_filter);

// Eligible authors of an already-filtered corpus, in corpus order.
std::vector<const Author*> EligibleAuthors(const Corpus& corpus,
                                           int word_budget, uint64_t seed);

// Balanced problems: the eligible authors are shuffled, each yields a
// same-author pair, and the unknown texts of the second half of the array
// are rotated by one position within that half to create different-author
// negatives. Requires at least 4 eligible authors.
std::vector<VerificationProblem> BuildProblems(const Corpus& corpus,
                                               const BuildConfig& cfg);

struct Split {
  std::vector<VerificationProblem> train;
  std::vector<VerificationProblem> test;
};

// Label-stratified seeded split with |train| = floor(train_fraction * n).
// Both sides keep the input order.
Split SplitProblems(const std::vector<VerificationProblem>& problems,
                    const SplitSpec& spec);

enum class SplitSide { kTrain, kTest };
using SplitManifest = std::map<std::string, SplitSide, std::less<>>;

SplitManifest MakeManifest(const Split& split);
void WriteSplitManifest(const SplitManifest& manifest,
                        const std::filesystem::path& path);
SplitManifest ReadSplitManifest(const std::filesystem::path& path);
// Every problem must be listed in the manifest.
Split ApplySplitManifest(const std::vector<VerificationProblem>& problems,
                         const SplitManifest& manifest);

// For each budget (ascending), the ids of authors eligible at that budget.
// Sets shrink as the budget grows.
std::map<int, std::set<std::string>> NestedEligibility(
    const Corpus& corpus, const std::vector<int>& budgets, uint64_t seed);

}  // namespace avkit

#endif  // AVKIT_BUILDER_H_
