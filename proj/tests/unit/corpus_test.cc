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

#include "avkit/corpus.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <gtest/gtest.h>

#include "avkit/error.h"
#include "avkit/text.h"
#include "temp_dir.h"

namespace avkit {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

Corpus Ingest(const std::string& jsonl) {
  std::istringstream in(jsonl);
  return IngestCorpus(in, "test");
}

std::string Record(std::string_view author, std::string_view gender,
                   std::string_view text, std::string_view extra = "") {
  return fmt::format(R"({{"author_id":"{}","gender":"{}","text":"{}"{}}})",
                     author, gender, text, extra) +
         "\n";
}

VerificationProblem Problem(std::string id, std::string k, std::string u,
                            std::optional<Label> truth) {
  VerificationProblem p;
  p.problem_id = std::move(id);
  p.known_text = std::move(k);
  p.unknown_text = std::move(u);
  p.truth = truth;
  p.known_author = "a";
  p.unknown_author = truth == Label::kNo ? "b" : "a";
  p.meta["genre"] = "forum";
  return p;
}

TEST(Ingest, GroupsRecordsByAuthor) {
  const Corpus c = Ingest(Record("a", "F", "uno due tre") +
                          Record("b", "M", "quattro") +
                          Record("a", "F", "cinque sei"));
  ASSERT_EQ(c.authors.size(), 2u);
  EXPECT_EQ(c.DocumentCount(), 3u);
  EXPECT_EQ(c.authors[0].author_id, "a");
  EXPECT_EQ(c.authors[0].documents.size(), 2u);
  EXPECT_EQ(c.authors[0].total_words, 5u);
  EXPECT_EQ(c.authors[1].gender, Gender::kMale);
  EXPECT_EQ(c.WordCount(), 6u);
}

TEST(Ingest, EmptyInput) {
  EXPECT_TRUE(Ingest("").authors.empty());
  EXPECT_TRUE(Ingest("\n\n  \n").authors.empty());
}

TEST(Ingest, UnknownGenderNamesLine) {
  try {
    Ingest(Record("a", "F", "ok") + Record("b", "X", "bad"));
    FAIL() << "expected an error";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(Ingest, MalformedRecords) {
  EXPECT_THROW(Ingest("{not json}\n"), DataError);
  EXPECT_THROW(Ingest("[1,2]\n"), DataError);
  EXPECT_THROW(Ingest(R"({"gender":"F","text":"x"})" "\n"), DataError);
  EXPECT_THROW(Ingest(R"({"author_id":"a","gender":"F","text":7})" "\n"),
               DataError);
  EXPECT_THROW(Ingest(Record("a", "F", "x") + Record("a", "M", "y")),
               DataError);
  EXPECT_THROW(Ingest(Record("a", "F", "x", R"(,"genre":"blog")")), DataError);
  EXPECT_THROW(Ingest(Record("a", "F", "x", R"(,"doc_id":"d")") +
                      Record("b", "F", "y", R"(,"doc_id":"d")")),
               DataError);
}

TEST(Ingest, DropsEmptyTextsAndKeepsMetadata) {
  const Corpus c = Ingest(
      Record("a", "F", "  ", R"(,"topic":"tv","genre":"forum")") +
      Record("a", "F", "ciao", R"(,"topic":"tv","genre":"forum","doc_id":"x")"));
  ASSERT_EQ(c.DocumentCount(), 1u);
  EXPECT_EQ(c.authors[0].documents[0].doc_id, "x");
  EXPECT_EQ(c.topic, "tv");
  EXPECT_EQ(c.genre, Genre::kForum);
  // a text-less author disappears entirely
  EXPECT_TRUE(Ingest(Record("z", "M", "")).authors.empty());
}

TEST(Ingest, MixedMetadataIsNotCommon) {
  const Corpus c = Ingest(Record("a", "F", "x", R"(,"topic":"tv")") +
                          Record("b", "F", "y", R"(,"topic":"moda")"));
  EXPECT_FALSE(c.topic.has_value());
  EXPECT_EQ(c.genre, Genre::kOther);
  EXPECT_EQ(c.authors[1].documents[0].topic, "moda");
}

TEST(Ingest, PreservesWordCounts) {
  const std::string texts[] = {"uno  due\ttre", "  quattro ", "a b c d e f"};
  std::string jsonl;
  size_t expected = 0;
  for (size_t i = 0; i < 3; ++i) {
    jsonl += Record(i == 1 ? "b" : "a", "F",
                    i == 0 ? "uno  due\\ttre" : texts[i]);
    expected += text::CountWords(texts[i]);
  }
  const Corpus c = Ingest(jsonl);
  EXPECT_EQ(c.WordCount(), expected);
  for (const auto& a : c.authors) {
    size_t sum = 0;
    for (const auto& d : a.documents) {
      EXPECT_EQ(d.word_count, text::CountWords(d.text));
      sum += d.word_count;
    }
    EXPECT_EQ(a.total_words, sum);
  }
}

TEST(Ingest, WriteCorpusRoundTrips) {
  const Corpus c = Ingest(
      Record("a", "F", "uno \\\"due\\\"", R"(,"topic":"tv","doc_id":"d1")") +
      Record("b", "M", "tre è", R"(,"genre":"diary","doc_id":"d2")"));
  std::ostringstream out;
  WriteCorpus(c, out);
  const Corpus back = Ingest(out.str());
  ASSERT_EQ(back.authors.size(), 2u);
  EXPECT_EQ(back.authors[0].documents[0].text, "uno \"due\"");
  EXPECT_EQ(back.authors[0].documents[0].topic, "tv");
  EXPECT_EQ(back.authors[1].documents[0].text, "tre è");
  EXPECT_EQ(back.authors[1].gender, Gender::kMale);
}

TEST(FilterUp, RemovesOnlyExactUpComments) {
  const Corpus c = Ingest(Record("a", "F", "up") + Record("a", "F", "hello world") +
                          Record("b", "M", " UP ") +
                          Record("c", "F", "up and down") +
                          Record("d", "M", "up!"));
  const Corpus f = FilterUpComments(c);
  ASSERT_EQ(f.authors.size(), 3u);
  EXPECT_EQ(f.authors[0].author_id, "a");
  EXPECT_EQ(f.authors[0].documents.size(), 1u);
  EXPECT_EQ(f.authors[0].total_words, 2u);
  EXPECT_EQ(f.authors[1].author_id, "c");
  EXPECT_EQ(f.authors[2].author_id, "d");
}

TEST(FilterUp, Idempotent) {
  const Corpus c = Ingest(Record("a", "F", "up") + Record("a", "F", "x y") +
                          Record("b", "M", "Up"));
  const Corpus once = FilterUpComments(c);
  const Corpus twice = FilterUpComments(once);
  ASSERT_EQ(once.authors.size(), twice.authors.size());
  EXPECT_EQ(once.DocumentCount(), twice.DocumentCount());
  EXPECT_EQ(once.WordCount(), twice.WordCount());
}

TEST(Problems, WriteCreatesLayout) {
  TempDir tmp;
  WriteProblems({Problem("p1", "a b", "c d", Label::kYes),
                 Problem("p2", "e f", "g h", Label::kNo)},
                tmp.path());
  EXPECT_TRUE(fs::exists(tmp / "p1/known.txt"));
  EXPECT_TRUE(fs::exists(tmp / "p2/unknown.txt"));
  EXPECT_EQ(ReadFile(tmp / "truth.txt"), "p1 Y\np2 N\n");
  EXPECT_EQ(ReadFile(tmp / "p2/known.txt"), "e f");
}

TEST(Problems, UnlabelledOmittedFromTruth) {
  TempDir tmp;
  WriteProblems({Problem("p1", "a", "b", Label::kYes),
                 Problem("p2", "c", "d", std::nullopt)},
                tmp.path());
  EXPECT_EQ(ReadFile(tmp / "truth.txt"), "p1 Y\n");
}

TEST(Problems, DuplicateIdFailsBeforeWriting) {
  TempDir tmp;
  const fs::path dir = tmp / "out";
  EXPECT_THROW(WriteProblems({Problem("p1", "a", "b", Label::kYes),
                              Problem("p1", "c", "d", Label::kNo)},
                             dir),
               DataError);
  EXPECT_FALSE(fs::exists(dir));
  EXPECT_THROW(WriteProblems({Problem("../x", "a", "b", Label::kYes)}, dir),
               DataError);
}

TEST(Problems, RoundTrip) {
  TempDir tmp;
  std::vector<VerificationProblem> ps;
  for (int i = 0; i < 5; ++i) {
    ps.push_back(Problem(fmt::format("p{}", i), fmt::format("k{} è\nriga", i),
                         fmt::format("  u{}  ", i),
                         i % 2 ? Label::kNo : Label::kYes));
  }
  WriteProblems(ps, tmp.path());
  const auto back = ReadProblems(tmp.path());
  ASSERT_EQ(back.size(), ps.size());
  for (size_t i = 0; i < ps.size(); ++i) {
    EXPECT_EQ(back[i].problem_id, ps[i].problem_id);
    EXPECT_EQ(back[i].known_text, ps[i].known_text);
    EXPECT_EQ(back[i].unknown_text, ps[i].unknown_text);
    EXPECT_EQ(back[i].truth, ps[i].truth);
    EXPECT_EQ(back[i].known_author, ps[i].known_author);
    EXPECT_EQ(back[i].meta, ps[i].meta);
  }
}

TEST(Problems, StrayFilesIgnored) {
  TempDir tmp;
  WriteProblems({Problem("p1", "a", "b", Label::kYes)}, tmp.path());
  WriteFile(tmp / "README", "notes");
  WriteFile(tmp / "p1/extra.txt", "x");
  const auto back = ReadProblems(tmp.path());
  ASSERT_EQ(back.size(), 1u);
}

TEST(Problems, MissingFileNamesProblem) {
  TempDir tmp;
  WriteProblems({Problem("p7", "a", "b", Label::kYes)}, tmp.path());
  fs::remove(tmp / "p7/unknown.txt");
  try {
    ReadProblems(tmp.path());
    FAIL() << "expected an error";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("p7"), std::string::npos);
  }
}

TEST(Problems, BadTruthLabel) {
  std::istringstream in("p1 Y\np2 M\n");
  EXPECT_THROW(ParseTruth(in, "truth.txt"), DataError);
  TempDir tmp;
  WriteProblems({Problem("p1", "a", "b", Label::kYes)}, tmp.path());
  WriteFile(tmp / "truth.txt", "p1 M\n");
  EXPECT_THROW(ReadProblems(tmp.path()), DataError);
}

TEST(Problems, ParseTruth) {
  std::istringstream in("p1 Y\np2 N\n\n");
  const TruthMap t = ParseTruth(in, "truth.txt");
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t.at("p2"), Label::kNo);
}

}  // namespace
}  // namespace avkit
