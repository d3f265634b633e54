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

#include "avkit/builder.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string_view>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "avkit/random.h"
#include "avkit/text.h"

namespace avkit {

namespace fs = std::filesystem;

std::string_view ToString(GenderSetting g) {
  switch (g) {
    case GenderSetting::kFemaleOnly:
      return "female_only";
    case GenderSetting::kMaleOnly:
      return "male_only";
    case GenderSetting::kMixed:
      break;
  }
  return "mixed";
}

std::optional<GenderSetting> ParseGenderSetting(std::string_view s) {
  if (s == "female_only") return GenderSetting::kFemaleOnly;
  if (s == "male_only") return GenderSetting::kMaleOnly;
  if (s == "mixed") return GenderSetting::kMixed;
  return std::nullopt;
}

void BuildConfig::Validate() const {
  if (word_budget < 2 || word_budget % 2 != 0) {
    throw UsageError(fmt::format(
        "word budget must be an even integer >= 2, got {}", word_budget));
  }
}

uint64_t AuthorSeed(uint64_t seed, const Author& author) {
  return DeriveSeed(seed, author.author_id);
}

namespace {

std::vector<size_t> ShuffledOrder(const Author& author, uint64_t seed) {
  std::vector<size_t> order(author.documents.size());
  std::iota(order.begin(), order.end(), size_t{0});
  Rng rng(seed);
  rng.Shuffle(std::span<size_t>(order));
  return order;
}

// Word counts consumed by each side under the given document order.
std::pair<size_t, size_t> FillCounts(const Author& author,
                                     const std::vector<size_t>& order,
                                     size_t half) {
  size_t known = 0;
  size_t unknown = 0;
  for (size_t idx : order) {
    const size_t wc = author.documents[idx].word_count;
    if (known < half) {
      known += std::min(wc, half - known);
    } else if (unknown < half) {
      unknown += std::min(wc, half - unknown);
    } else {
      break;
    }
  }
  return {known, unknown};
}

}  // namespace

bool CanMakeAuthorPair(const Author& author, int word_budget, uint64_t seed) {
  if (word_budget < 2 || word_budget % 2 != 0) return false;
  if (author.total_words < static_cast<size_t>(word_budget)) return false;
  const size_t half = static_cast<size_t>(word_budget) / 2;
  const auto [known, unknown] =
      FillCounts(author, ShuffledOrder(author, seed), half);
  return known == half && unknown == half;
}

AuthorPair MakeAuthorPair(const Author& author, int word_budget,
                          uint64_t seed) {
  if (word_budget < 2 || word_budget % 2 != 0) {
    throw UsageError(fmt::format("invalid word budget {}", word_budget));
  }
  if (author.total_words < static_cast<size_t>(word_budget)) {
    throw IneligibleAuthorError(fmt::format(
        "author '{}' has {} words, fewer than the budget {}",
        author.author_id, author.total_words, word_budget));
  }
  const size_t half = static_cast<size_t>(word_budget) / 2;

  AuthorPair pair;
  std::vector<std::string_view> known;
  std::vector<std::string_view> unknown;
  known.reserve(half);
  unknown.reserve(half);
  for (size_t idx : ShuffledOrder(author, seed)) {
    const Document& doc = author.documents[idx];
    std::vector<std::string_view>* side = nullptr;
    if (known.size() < half) {
      side = &known;
      pair.known_doc_ids.push_back(doc.doc_id);
    } else if (unknown.size() < half) {
      side = &unknown;
      pair.unknown_doc_ids.push_back(doc.doc_id);
    } else {
      break;
    }
    for (auto w : text::Words(doc.text)) {
      if (side->size() == half) break;
      side->push_back(w);
    }
  }
  if (unknown.size() < half) {
    throw IneligibleAuthorError(fmt::format(
        "author '{}': documents cannot fill two disjoint sides of {} words",
        author.author_id, half));
  }
  pair.known_text = text::Join(known);
  pair.unknown_text = text::Join(unknown);
  return pair;
}

Corpus FilterCorpus(const Corpus& corpus, GenderSetting gender,
                    const std::optional<std::string>& topic_filter) {
  Corpus out;
  out.name = corpus.name;
  out.genre = corpus.genre;
  out.topic = topic_filter ? topic_filter : corpus.topic;
  for (const auto& author : corpus.authors) {
    if (gender == GenderSetting::kFemaleOnly &&
        author.gender != Gender::kFemale) {
      continue;
    }
    if (gender == GenderSetting::kMaleOnly && author.gender != Gender::kMale) {
      continue;
    }
    Author a;
    a.author_id = author.author_id;
    a.gender = author.gender;
    for (const auto& doc : author.documents) {
      const auto& topic = doc.topic ? doc.topic : corpus.topic;
      if (topic_filter && topic != topic_filter) continue;
      a.documents.push_back(doc);
    }
    a.Recount();
    if (!a.documents.empty()) out.authors.push_back(std::move(a));
  }
  return out;
}

std::vector<const Author*> EligibleAuthors(const Corpus& corpus,
                                           int word_budget, uint64_t seed) {
  std::vector<const Author*> eligible;
  for (const auto& a : corpus.authors) {
    if (CanMakeAuthorPair(a, word_budget, AuthorSeed(seed, a))) {
      eligible.push_back(&a);
    }
  }
  return eligible;
}

std::vector<VerificationProblem> BuildProblems(const Corpus& corpus,
                                               const BuildConfig& cfg) {
  cfg.Validate();
  const Corpus filtered =
      FilterCorpus(corpus, cfg.gender_setting, cfg.topic_filter);
  std::vector<const Author*> authors =
      EligibleAuthors(filtered, cfg.word_budget, cfg.seed);
  if (authors.size() < 4) {
    throw DataError(fmt::format(
        "need at least 4 eligible authors at budget {}, found {}",
        cfg.word_budget, authors.size()));
  }
  Rng rng(DeriveSeed(cfg.seed, "author-order"));
  rng.Shuffle(std::span<const Author*>(authors));

  std::vector<AuthorPair> pairs;
  pairs.reserve(authors.size());
  for (const Author* a : authors) {
    pairs.push_back(MakeAuthorPair(*a, cfg.word_budget, AuthorSeed(cfg.seed, *a)));
  }

  const size_t n = authors.size();
  const size_t half = n / 2;  // [0, half) positive, [half, n) rotated
  const std::string topic = filtered.topic.value_or("");
  std::vector<VerificationProblem> problems;
  problems.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const size_t u = i < half ? i : half + (i - half + 1) % (n - half);
    VerificationProblem p;
    p.problem_id = fmt::format("{}{:05}", cfg.id_prefix, i + 1);
    p.known_text = pairs[i].known_text;
    p.unknown_text = pairs[u].unknown_text;
    p.known_author = authors[i]->author_id;
    p.unknown_author = authors[u]->author_id;
    p.truth = p.known_author == p.unknown_author ? Label::kYes : Label::kNo;
    p.meta.emplace(meta_key::kTopic, topic);
    p.meta.emplace(meta_key::kGenre, ToString(filtered.genre));
    p.meta.emplace(meta_key::kGenderKnown, ToString(authors[i]->gender));
    p.meta.emplace(meta_key::kGenderUnknown, ToString(authors[u]->gender));
    p.meta.emplace(meta_key::kWordBudget, std::to_string(cfg.word_budget));
    problems.push_back(std::move(p));
  }
  return problems;
}

Split SplitProblems(const std::vector<VerificationProblem>& problems,
                    const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw UsageError("train fraction must lie in (0, 1)");
  }
  const size_t n = problems.size();
  if (n < 2) throw DataError("need at least 2 problems to split");

  // The small epsilon keeps products such as 0.7 * 100 from landing just
  // below an integer.
  size_t n_train = static_cast<size_t>(
      std::floor(spec.train_fraction * static_cast<double>(n) + 1e-9));
  n_train = std::clamp<size_t>(n_train, 1, n - 1);

  // Strata: Y, N, unlabelled.
  std::array<std::vector<size_t>, 3> strata;
  for (size_t i = 0; i < n; ++i) {
    const auto& t = problems[i].truth;
    strata[!t ? 2 : (*t == Label::kYes ? 0 : 1)].push_back(i);
  }
  Rng rng(DeriveSeed(spec.seed, "split"));
  for (auto& s : strata) rng.Shuffle(std::span<size_t>(s));

  // Largest-remainder allocation of the train quota across strata; ties go
  // to the earlier stratum.
  std::array<size_t, 3> quota{};
  std::array<double, 3> remainder{};
  size_t assigned = 0;
  for (size_t k = 0; k < 3; ++k) {
    const double exact = static_cast<double>(strata[k].size()) *
                         static_cast<double>(n_train) / static_cast<double>(n);
    quota[k] = static_cast<size_t>(std::floor(exact));
    remainder[k] = exact - static_cast<double>(quota[k]);
    assigned += quota[k];
  }
  while (assigned < n_train) {
    size_t best = 3;
    for (size_t k = 0; k < 3; ++k) {
      if (quota[k] >= strata[k].size()) continue;
      if (best == 3 || remainder[k] > remainder[best]) best = k;
    }
    ++quota[best];
    remainder[best] = -1.0;
    ++assigned;
  }

  std::vector<bool> in_train(n, false);
  for (size_t k = 0; k < 3; ++k) {
    for (size_t j = 0; j < quota[k]; ++j) in_train[strata[k][j]] = true;
  }
  Split split;
  for (size_t i = 0; i < n; ++i) {
    (in_train[i] ? split.train : split.test).push_back(problems[i]);
  }
  return split;
}

SplitManifest MakeManifest(const Split& split) {
  SplitManifest m;
  for (const auto& p : split.train) m.emplace(p.problem_id, SplitSide::kTrain);
  for (const auto& p : split.test) m.emplace(p.problem_id, SplitSide::kTest);
  return m;
}

void WriteSplitManifest(const SplitManifest& manifest, const fs::path& path) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [id, side] : manifest) {
    j[id] = side == SplitSide::kTrain ? "train" : "test";
  }
  WriteFile(path, j.dump(2) + "\n");
}

SplitManifest ReadSplitManifest(const fs::path& path) {
  SplitManifest m;
  try {
    const auto j = nlohmann::json::parse(ReadFile(path));
    if (!j.is_object()) throw DataError("split manifest must be an object");
    for (const auto& [id, side] : j.items()) {
      const auto s = side.get<std::string>();
      if (s == "train") {
        m.emplace(id, SplitSide::kTrain);
      } else if (s == "test") {
        m.emplace(id, SplitSide::kTest);
      } else {
        throw DataError(fmt::format("problem '{}': unknown split '{}'", id, s));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(
        fmt::format("bad split manifest '{}': {}", path.string(), e.what()));
  }
  return m;
}

Split ApplySplitManifest(const std::vector<VerificationProblem>& problems,
                         const SplitManifest& manifest) {
  Split split;
  for (const auto& p : problems) {
    auto it = manifest.find(p.problem_id);
    if (it == manifest.end()) {
      throw DataError(fmt::format("problem '{}' is missing from the split "
                                  "manifest", p.problem_id));
    }
    (it->second == SplitSide::kTrain ? split.train : split.test).push_back(p);
  }
  return split;
}

std::map<int, std::set<std::string>> NestedEligibility(
    const Corpus& corpus, const std::vector<int>& budgets, uint64_t seed) {
  if (!std::is_sorted(budgets.begin(), budgets.end())) {
    throw UsageError("budgets must be sorted ascending");
  }
  std::map<int, std::set<std::string>> sets;
  for (int b : budgets) {
    auto& s = sets[b];
    for (const Author* a : EligibleAuthors(corpus, b, seed)) {
      s.insert(a->author_id);
    }
  }
  return sets;
}

}  // namespace avkit
