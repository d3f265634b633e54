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
#include <set>

#include <fmt/format.h>
#include <gtest/gtest.h>

#include "avkit/error.h"
#include "avkit/text.h"
#include "fuzz_corpus.h"
#include "temp_dir.h"

namespace avkit {
namespace {

using testing::CheckProblems;
using testing::RandomCorpus;
using testing::TempDir;
using testing::TracedAuthor;

Author Plain(std::string id, std::vector<std::string> docs,
             Gender g = Gender::kFemale) {
  Author a;
  a.author_id = std::move(id);
  a.gender = g;
  for (size_t i = 0; i < docs.size(); ++i) {
    a.documents.push_back(
        Document::Make(fmt::format("{}-{}", a.author_id, i), docs[i]));
  }
  a.Recount();
  return a;
}

Corpus UniformCorpus(size_t authors, size_t docs, size_t words) {
  Corpus c;
  c.name = "u";
  for (size_t k = 0; k < authors; ++k) {
    c.authors.push_back(TracedAuthor(fmt::format("a{}", k),
                                     k % 2 ? Gender::kMale : Gender::kFemale,
                                     std::vector<size_t>(docs, words)));
  }
  return c;
}

std::vector<VerificationProblem> Labelled(size_t yes, size_t no) {
  std::vector<VerificationProblem> ps;
  for (size_t i = 0; i < yes + no; ++i) {
    VerificationProblem p;
    p.problem_id = fmt::format("p{:04}", i);
    p.truth = i < yes ? Label::kYes : Label::kNo;
    ps.push_back(p);
  }
  return ps;
}

TEST(AuthorPair, TwoDocumentsOfTwoHundredFifty) {
  const Author a = TracedAuthor("x", Gender::kFemale, {250, 250});
  const AuthorPair p = MakeAuthorPair(a, 400, 1);
  EXPECT_EQ(text::CountWords(p.known_text), 200u);
  EXPECT_EQ(text::CountWords(p.unknown_text), 200u);
  ASSERT_EQ(p.known_doc_ids.size(), 1u);
  ASSERT_EQ(p.unknown_doc_ids.size(), 1u);
  EXPECT_NE(p.known_doc_ids[0], p.unknown_doc_ids[0]);
}

TEST(AuthorPair, SingleDocumentIsIneligible) {
  // Every one-document author at every budget up to its length.
  for (size_t words = 2; words <= 40; ++words) {
    const Author a = TracedAuthor("x", Gender::kMale, {words});
    for (int b = 2; b <= static_cast<int>(words); b += 2) {
      EXPECT_FALSE(CanMakeAuthorPair(a, b, 5));
      EXPECT_THROW(MakeAuthorPair(a, b, 5), IneligibleAuthorError);
    }
  }
}

TEST(AuthorPair, SmallestEvenCase) {
  const Author a = Plain("x", {"a b c", "d e f"});
  const AuthorPair p = MakeAuthorPair(a, 4, 0);
  const bool forward = p.known_text == "a b" && p.unknown_text == "d e";
  const bool reverse = p.known_text == "d e" && p.unknown_text == "a b";
  EXPECT_TRUE(forward || reverse) << p.known_text << " | " << p.unknown_text;
  // Some seed keeps corpus order.
  bool seen_forward = false;
  for (uint64_t s = 0; s < 16 && !seen_forward; ++s) {
    const AuthorPair q = MakeAuthorPair(a, 4, s);
    seen_forward = q.known_text == "a b" && q.unknown_text == "d e";
  }
  EXPECT_TRUE(seen_forward);
}

TEST(AuthorPair, StraddlingRemainderIsDiscarded) {
  // 250 + 150 words cannot give 200 disjoint words to each side.
  const Author a = TracedAuthor("x", Gender::kFemale, {250, 150});
  for (uint64_t s = 0; s < 8; ++s) EXPECT_FALSE(CanMakeAuthorPair(a, 400, s));
  EXPECT_THROW(MakeAuthorPair(a, 400, 0), IneligibleAuthorError);
  EXPECT_THROW(MakeAuthorPair(a, 5000, 0), IneligibleAuthorError);
  EXPECT_THROW(MakeAuthorPair(a, 3, 0), UsageError);
}

TEST(BuildProblems, FourAuthorsShiftSecondHalf) {
  Corpus c = UniformCorpus(4, 3, 20);
  BuildConfig cfg;
  cfg.word_budget = 20;
  cfg.seed = 3;
  const auto ps = BuildProblems(c, cfg);
  ASSERT_EQ(ps.size(), 4u);
  EXPECT_EQ(ps[0].known_author, ps[0].unknown_author);
  EXPECT_EQ(ps[1].known_author, ps[1].unknown_author);
  EXPECT_EQ(ps[2].unknown_author, ps[3].known_author);
  EXPECT_EQ(ps[3].unknown_author, ps[2].known_author);
  EXPECT_EQ(ps[0].truth, Label::kYes);
  EXPECT_EQ(ps[1].truth, Label::kYes);
  EXPECT_EQ(ps[2].truth, Label::kNo);
  EXPECT_EQ(ps[3].truth, Label::kNo);
  EXPECT_EQ(ps[0].problem_id, "problem00001");
  EXPECT_EQ(CheckProblems(ps, cfg.word_budget), "");
}

TEST(BuildProblems, NinetySixAuthorsBalanced) {
  const Corpus c = UniformCorpus(96, 4, 900);
  BuildConfig cfg;
  cfg.word_budget = 3000;
  const auto ps = BuildProblems(c, cfg);
  ASSERT_EQ(ps.size(), 96u);
  const auto yes = std::count_if(ps.begin(), ps.end(), [](const auto& p) {
    return p.truth == Label::kYes;
  });
  EXPECT_EQ(yes, 48);
  EXPECT_EQ(CheckProblems(ps, cfg.word_budget), "");
  const Split s = SplitProblems(ps, SplitSpec{0.7, 1});
  EXPECT_EQ(s.train.size(), 67u);
  EXPECT_EQ(s.test.size(), 29u);
}

TEST(BuildProblems, OddCountsAndMeta) {
  for (size_t n : {5u, 7u, 13u}) {
    BuildConfig cfg;
    cfg.word_budget = 10;
    cfg.id_prefix = "t-";
    const auto ps = BuildProblems(UniformCorpus(n, 2, 6), cfg);
    ASSERT_EQ(ps.size(), n);
    EXPECT_EQ(CheckProblems(ps, 10), "");
    EXPECT_EQ(ps[0].problem_id, "t-00001");
    EXPECT_EQ(ps[0].meta.at("word_budget"), "10");
  }
}

TEST(BuildProblems, TooFewAuthors) {
  BuildConfig cfg;
  cfg.word_budget = 10;
  EXPECT_THROW(BuildProblems(UniformCorpus(3, 2, 10), cfg), DataError);
  Corpus c = UniformCorpus(6, 2, 10);
  cfg.word_budget = 7;
  EXPECT_THROW(BuildProblems(c, cfg), UsageError);
}

TEST(BuildProblems, GenderAndTopicFilters) {
  Corpus c = UniformCorpus(12, 4, 10);
  for (auto& a : c.authors) {
    for (size_t d = 0; d < a.documents.size(); ++d) {
      a.documents[d].topic = d < 2 ? "tv" : "moda";
    }
  }
  BuildConfig cfg;
  cfg.word_budget = 20;
  cfg.gender_setting = GenderSetting::kMaleOnly;
  cfg.topic_filter = "tv";
  const auto ps = BuildProblems(c, cfg);
  ASSERT_EQ(ps.size(), 6u);
  for (const auto& p : ps) {
    EXPECT_EQ(p.meta.at("gender_known"), "M");
    EXPECT_EQ(p.meta.at("gender_unknown"), "M");
    EXPECT_EQ(p.meta.at("topic"), "tv");
    const std::string both = p.known_text + " " + p.unknown_text;
    for (auto w : text::Words(both)) {
      const int doc = std::stoi(testing::Origin(w).second);
      EXPECT_LT(doc, 2);
    }
  }
  cfg.gender_setting = GenderSetting::kFemaleOnly;
  for (const auto& p : BuildProblems(c, cfg)) {
    EXPECT_EQ(p.meta.at("gender_known"), "F");
  }
}

TEST(BuildProblems, Deterministic) {
  Rng rng(4);
  const Corpus c = RandomCorpus(rng, 30, 6, 80);
  BuildConfig cfg;
  cfg.word_budget = 60;
  cfg.seed = 99;
  EXPECT_EQ(BuildProblems(c, cfg), BuildProblems(c, cfg));
  BuildConfig other = cfg;
  other.seed = 100;
  EXPECT_NE(BuildProblems(c, cfg), BuildProblems(c, other));
}

TEST(BuildProblems, FuzzedInvariants) {
  Rng rng(12345);
  for (int trial = 0; trial < 100; ++trial) {
    const Corpus c = RandomCorpus(rng, 4 + rng.Below(60), 8, 60);
    BuildConfig cfg;
    cfg.word_budget = 2 * static_cast<int>(1 + rng.Below(60));
    cfg.seed = rng.Next();
    if (EligibleAuthors(c, cfg.word_budget, cfg.seed).size() < 4) continue;
    EXPECT_EQ(CheckProblems(BuildProblems(c, cfg), cfg.word_budget), "")
        << "trial " << trial;
  }
}

TEST(Split, PaperSizes) {
  const std::pair<size_t, size_t> cases[] = {
      {96, 67}, {229, 160}, {127, 88}, {98, 68}, {10, 7}, {2, 1}, {3, 2}};
  for (auto [n, train] : cases) {
    const Split s = SplitProblems(Labelled(n / 2, n - n / 2), SplitSpec{0.7, 5});
    EXPECT_EQ(s.train.size(), train) << n;
    EXPECT_EQ(s.test.size(), n - train) << n;
  }
}

TEST(Split, StratifiedDisjointDeterministic) {
  const auto ps = Labelled(50, 50);
  const Split a = SplitProblems(ps, SplitSpec{0.7, 8});
  const Split b = SplitProblems(ps, SplitSpec{0.7, 8});
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.test, b.test);
  size_t yes = 0;
  for (const auto& p : a.test) yes += p.truth == Label::kYes;
  EXPECT_EQ(yes, 15u);
  std::set<std::string> ids;
  for (const auto* side : {&a.train, &a.test}) {
    for (const auto& p : *side) EXPECT_TRUE(ids.insert(p.problem_id).second);
  }
  EXPECT_EQ(ids.size(), 100u);
  const Split c = SplitProblems(ps, SplitSpec{0.7, 9});
  EXPECT_NE(a.test, c.test);
  EXPECT_THROW(SplitProblems(Labelled(1, 0), SplitSpec{}), DataError);
  EXPECT_THROW(SplitProblems(ps, SplitSpec{1.0, 0}), UsageError);
}

TEST(Split, ManifestRoundTrip) {
  TempDir tmp;
  const auto ps = Labelled(10, 11);
  const Split s = SplitProblems(ps, SplitSpec{0.7, 2});
  WriteSplitManifest(MakeManifest(s), tmp / "splits.json");
  const Split back = ApplySplitManifest(ps, ReadSplitManifest(tmp / "splits.json"));
  EXPECT_EQ(back.train, s.train);
  EXPECT_EQ(back.test, s.test);
  auto more = ps;
  more.push_back(Labelled(1, 0)[0]);
  more.back().problem_id = "extra";
  EXPECT_THROW(ApplySplitManifest(more, MakeManifest(s)), DataError);
}

TEST(Eligibility, Nested) {
  Corpus c;
  c.authors.push_back(TracedAuthor("small", Gender::kFemale, {250, 250}));
  c.authors.push_back(TracedAuthor("big", Gender::kMale, {1600, 1600}));
  c.authors.push_back(Author{"empty", Gender::kMale, {}, 0});
  const auto sets = NestedEligibility(c, {400, 3000}, 0);
  EXPECT_TRUE(sets.at(400).count("small"));
  EXPECT_FALSE(sets.at(3000).count("small"));
  EXPECT_TRUE(sets.at(3000).count("big"));
  EXPECT_FALSE(sets.at(400).count("empty"));
  EXPECT_THROW(NestedEligibility(c, {3000, 400}, 0), UsageError);
}

TEST(Eligibility, FuzzedMonotone) {
  Rng rng(77);
  const std::vector<int> budgets = {20, 60, 100, 200, 400};
  for (int trial = 0; trial < 50; ++trial) {
    const Corpus c = RandomCorpus(rng, 40, 10, 80);
    const auto sets = NestedEligibility(c, budgets, rng.Next());
    for (size_t i = 1; i < budgets.size(); ++i) {
      for (const auto& id : sets.at(budgets[i])) {
        EXPECT_TRUE(sets.at(budgets[i - 1]).count(id)) << id;
      }
    }
  }
}

}  // namespace
}  // namespace avkit
