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

#ifndef AVKIT_CORPUS_H_
#define AVKIT_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace avkit {

enum class Gender { kFemale, kMale };
enum class Genre { kForum, kDiary, kOther };
// Ground truth of a verification problem: same author (Y) or not (N).
enum class Label { kYes, kNo };

std::string_view ToString(Gender g);   // "F" / "M"
std::string_view ToString(Genre g);    // "forum" / "diary" / "other"
std::string_view ToString(Label l);    // "Y" / "N"
std::optional<Gender> ParseGender(std::string_view s);
std::optional<Genre> ParseGenre(std::string_view s);
std::optional<Label> ParseLabel(std::string_view s);

struct Document {
  std::string doc_id;
  std::string text;
  size_t word_count = 0;
  std::optional<std::string> topic;

  static Document Make(std::string doc_id, std::string text,
                       std::optional<std::string> topic = std::nullopt);
};

struct Author {
  std::string author_id;
  Gender gender = Gender::kFemale;
  std::vector<Document> documents;
  size_t total_words = 0;

  // Recomputes total_words from the documents.
  void Recount();
};

struct Corpus {
  std::string name;
  std::optional<std::string> topic;
  Genre genre = Genre::kOther;
  std::vector<Author> authors;

  size_t DocumentCount() const;
  size_t WordCount() const;
  const Author* FindAuthor(std::string_view author_id) const;
};

// Meta keys copied into every built problem.
namespace meta_key {
inline constexpr std::string_view kTopic = "topic";
inline constexpr std::string_view kGenre = "genre";
inline constexpr std::string_view kGenderKnown = "gender_known";
inline constexpr std::string_view kGenderUnknown = "gender_unknown";
inline constexpr std::string_view kWordBudget = "word_budget";
}  // namespace meta_key

struct VerificationProblem {
  std::string problem_id;
  std::string known_text;
  std::string unknown_text;
  std::optional<Label> truth;
  std::string known_author;
  std::string unknown_author;
  std::map<std::string, std::string, std::less<>> meta;

  friend bool operator==(const VerificationProblem&,
                         const VerificationProblem&) = default;
};

enum class CorpusFormat { kJsonl };

// Reads a JSONL corpus: one object per line with author_id, gender (F|M)
// and text; doc_id, topic and genre are optional. Blank lines are skipped
// and records whose text has no words are dropped. Authors keep their order
// of first appearance. The corpus name defaults to the file stem.
Corpus IngestCorpus(const std::filesystem::path& path,
                    CorpusFormat format = CorpusFormat::kJsonl);
Corpus IngestCorpus(std::istream& in, std::string name);

void WriteCorpus(const Corpus& corpus, const std::filesystem::path& path);
void WriteCorpus(const Corpus& corpus, std::ostream& out);

// Drops documents that consist of the single word "up" (case-insensitive,
// surrounding whitespace ignored), then authors left without documents.
Corpus FilterUpComments(Corpus corpus);

// PAN layout: <dir>/<id>/known.txt, <dir>/<id>/unknown.txt, <dir>/truth.txt
// with "<id> <Y|N>" lines. Each problem directory also gets a meta.json
// holding authors and the meta map.
void WriteProblems(const std::vector<VerificationProblem>& problems,
                   const std::filesystem::path& dir);

// Reads a PAN-layout directory; problems come back sorted by id. Files in
// the root other than truth.txt are ignored.
std::vector<VerificationProblem> ReadProblems(const std::filesystem::path& dir);

using TruthMap = std::map<std::string, Label, std::less<>>;
TruthMap ReadTruth(const std::filesystem::path& path);
TruthMap ParseTruth(std::istream& in, std::string_view source);
void WriteTruth(const std::vector<VerificationProblem>& problems,
                const std::filesystem::path& path);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view content);

}  // namespace avkit

#endif  // AVKIT_CORPUS_H_
