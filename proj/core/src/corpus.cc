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

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "avkit/error.h"
#include "avkit/text.h"

namespace avkit {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view ToString(Gender g) {
  return g == Gender::kFemale ? "F" : "M";
}

std::string_view ToString(Genre g) {
  switch (g) {
    case Genre::kForum:
      return "forum";
    case Genre::kDiary:
      return "diary";
    case Genre::kOther:
      break;
  }
  return "other";
}

std::string_view ToString(Label l) { return l == Label::kYes ? "Y" : "N"; }

std::optional<Gender> ParseGender(std::string_view s) {
  if (s == "F") return Gender::kFemale;
  if (s == "M") return Gender::kMale;
  return std::nullopt;
}

std::optional<Genre> ParseGenre(std::string_view s) {
  if (s == "forum") return Genre::kForum;
  if (s == "diary") return Genre::kDiary;
  if (s == "other") return Genre::kOther;
  return std::nullopt;
}

std::optional<Label> ParseLabel(std::string_view s) {
  if (s == "Y") return Label::kYes;
  if (s == "N") return Label::kNo;
  return std::nullopt;
}

Document Document::Make(std::string doc_id, std::string text,
                        std::optional<std::string> topic) {
  Document d;
  d.doc_id = std::move(doc_id);
  d.word_count = text::CountWords(text);
  d.text = std::move(text);
  d.topic = std::move(topic);
  return d;
}

void Author::Recount() {
  total_words = 0;
  for (const auto& d : documents) total_words += d.word_count;
}

size_t Corpus::DocumentCount() const {
  size_t n = 0;
  for (const auto& a : authors) n += a.documents.size();
  return n;
}

size_t Corpus::WordCount() const {
  size_t n = 0;
  for (const auto& a : authors) n += a.total_words;
  return n;
}

const Author* Corpus::FindAuthor(std::string_view author_id) const {
  for (const auto& a : authors) {
    if (a.author_id == author_id) return &a;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Ingestion

namespace {

std::string RequireString(const json& record, const char* field,
                          size_t line) {
  auto it = record.find(field);
  if (it == record.end() || !it->is_string()) {
    throw DataError(fmt::format("line {}: missing or non-string field '{}'",
                                line, field));
  }
  return it->get<std::string>();
}

std::optional<std::string> OptionalString(const json& record,
                                          const char* field, size_t line) {
  auto it = record.find(field);
  if (it == record.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw DataError(
        fmt::format("line {}: field '{}' must be a string", line, field));
  }
  return it->get<std::string>();
}

// Returns the common value when every element agrees, nullopt otherwise.
template <typename T>
std::optional<T> Common(const std::vector<std::optional<T>>& values) {
  if (values.empty() || !values.front()) return std::nullopt;
  for (const auto& v : values) {
    if (v != values.front()) return std::nullopt;
  }
  return values.front();
}

}  // namespace

Corpus IngestCorpus(std::istream& in, std::string name) {
  Corpus corpus;
  corpus.name = std::move(name);
  std::unordered_map<std::string, size_t> author_index;
  std::set<std::string, std::less<>> doc_ids;
  std::vector<std::optional<std::string>> topics;
  std::vector<std::optional<Genre>> genres;

  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::Trim(line).empty()) continue;

    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw DataError(
          fmt::format("line {}: malformed JSON record: {}", line_no, e.what()));
    }
    if (!record.is_object()) {
      throw DataError(fmt::format("line {}: record is not an object", line_no));
    }

    std::string author_id = RequireString(record, "author_id", line_no);
    if (author_id.empty()) {
      throw DataError(fmt::format("line {}: empty author_id", line_no));
    }
    const std::string gender_code = RequireString(record, "gender", line_no);
    const auto gender = ParseGender(gender_code);
    if (!gender) {
      throw DataError(fmt::format("line {}: unknown gender code '{}'", line_no,
                                  gender_code));
    }
    std::string body = RequireString(record, "text", line_no);
    auto topic = OptionalString(record, "topic", line_no);
    std::optional<Genre> genre;
    if (auto g = OptionalString(record, "genre", line_no)) {
      genre = ParseGenre(*g);
      if (!genre) {
        throw DataError(
            fmt::format("line {}: unknown genre '{}'", line_no, *g));
      }
    }
    std::string doc_id = OptionalString(record, "doc_id", line_no)
                             .value_or(fmt::format("line{}", line_no));

    Document doc = Document::Make(std::move(doc_id), std::move(body), topic);
    if (doc.word_count == 0) continue;
    if (!doc_ids.insert(doc.doc_id).second) {
      throw DataError(
          fmt::format("line {}: duplicate doc_id '{}'", line_no, doc.doc_id));
    }
    topics.push_back(topic);
    genres.push_back(genre);

    auto [it, inserted] = author_index.try_emplace(author_id,
                                                   corpus.authors.size());
    if (inserted) {
      Author a;
      a.author_id = std::move(author_id);
      a.gender = *gender;
      corpus.authors.push_back(std::move(a));
    }
    Author& author = corpus.authors[it->second];
    if (author.gender != *gender) {
      throw DataError(fmt::format("line {}: author '{}' has conflicting gender",
                                  line_no, author.author_id));
    }
    author.total_words += doc.word_count;
    author.documents.push_back(std::move(doc));
  }
  if (in.bad()) throw IoError("read failure while ingesting corpus");

  corpus.topic = Common(topics);
  corpus.genre = Common(genres).value_or(Genre::kOther);
  return corpus;
}

Corpus IngestCorpus(const fs::path& path, CorpusFormat format) {
  if (format != CorpusFormat::kJsonl) throw UsageError("unsupported format");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open corpus '{}'", path.string()));
  try {
    return IngestCorpus(in, path.stem().string());
  } catch (const Error& e) {
    throw WithContext(e, path.string());
  }
}

void WriteCorpus(const Corpus& corpus, std::ostream& out) {
  for (const auto& author : corpus.authors) {
    for (const auto& doc : author.documents) {
      json record;
      record["author_id"] = author.author_id;
      record["gender"] = ToString(author.gender);
      record["doc_id"] = doc.doc_id;
      if (auto topic = doc.topic ? doc.topic : corpus.topic) {
        record["topic"] = *topic;
      }
      record["genre"] = ToString(corpus.genre);
      record["text"] = doc.text;
      out << record.dump() << '\n';
    }
  }
}

void WriteCorpus(const Corpus& corpus, const fs::path& path) {
  std::ostringstream out;
  WriteCorpus(corpus, out);
  WriteFile(path, out.str());
}

Corpus FilterUpComments(Corpus corpus) {
  auto is_up = [](const Document& d) {
    const std::string_view t = text::Trim(d.text);
    return t.size() == 2 && (t[0] == 'u' || t[0] == 'U') &&
           (t[1] == 'p' || t[1] == 'P');
  };
  for (auto& author : corpus.authors) {
    std::erase_if(author.documents, is_up);
    author.Recount();
  }
  std::erase_if(corpus.authors,
                [](const Author& a) { return a.documents.empty(); });
  return corpus;
}

// ---------------------------------------------------------------------------
// PAN problem directories

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

void WriteFile(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError(fmt::format("write failed for '{}'", path.string()));
}

namespace {

bool ValidProblemId(std::string_view id) {
  if (id.empty() || id == "." || id == "..") return false;
  return std::none_of(id.begin(), id.end(), [](char c) {
    return c == '/' || c == '\\' || c == ' ' || c == '\n' || c == '\t' ||
           c == '\0';
  });
}

}  // namespace

void WriteTruth(const std::vector<VerificationProblem>& problems,
                const fs::path& path) {
  std::string out;
  for (const auto& p : problems) {
    if (!p.truth) continue;
    out += p.problem_id;
    out += ' ';
    out += ToString(*p.truth);
    out += '\n';
  }
  WriteFile(path, out);
}

void WriteProblems(const std::vector<VerificationProblem>& problems,
                   const fs::path& dir) {
  std::set<std::string_view> ids;
  for (const auto& p : problems) {
    if (!ValidProblemId(p.problem_id)) {
      throw DataError(fmt::format("invalid problem id '{}'", p.problem_id));
    }
    if (!ids.insert(p.problem_id).second) {
      throw DataError(fmt::format("duplicate problem id '{}'", p.problem_id));
    }
  }

  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError(fmt::format("cannot create '{}': {}", dir.string(),
                              ec.message()));
  }
  for (const auto& p : problems) {
    const fs::path sub = dir / p.problem_id;
    fs::create_directories(sub, ec);
    if (ec) {
      throw IoError(fmt::format("cannot create '{}': {}", sub.string(),
                                ec.message()));
    }
    WriteFile(sub / "known.txt", p.known_text);
    WriteFile(sub / "unknown.txt", p.unknown_text);
    json meta;
    meta["known_author"] = p.known_author;
    meta["unknown_author"] = p.unknown_author;
    meta["meta"] = json::object();
    for (const auto& [k, v] : p.meta) meta["meta"][k] = v;
    WriteFile(sub / "meta.json", meta.dump(2) + "\n");
  }
  WriteTruth(problems, dir / "truth.txt");
}

TruthMap ParseTruth(std::istream& in, std::string_view source) {
  TruthMap truth;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const size_t space = line.find(' ');
    if (space == std::string::npos || space == 0) {
      throw DataError(
          fmt::format("{}:{}: expected '<problem_id> <Y|N>'", source, line_no));
    }
    const std::string id = line.substr(0, space);
    const auto label = ParseLabel(std::string_view(line).substr(space + 1));
    if (!label) {
      throw DataError(fmt::format("{}:{}: invalid truth label '{}'", source,
                                  line_no, line.substr(space + 1)));
    }
    if (!truth.emplace(id, *label).second) {
      throw DataError(
          fmt::format("{}:{}: duplicate problem id '{}'", source, line_no, id));
    }
  }
  return truth;
}

TruthMap ReadTruth(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  return ParseTruth(in, path.string());
}

std::vector<VerificationProblem> ReadProblems(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw IoError(fmt::format("'{}' is not a directory", dir.string()));
  }
  std::vector<fs::path> subdirs;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory()) subdirs.push_back(entry.path());
  }
  std::sort(subdirs.begin(), subdirs.end());

  TruthMap truth;
  if (fs::exists(dir / "truth.txt")) truth = ReadTruth(dir / "truth.txt");

  std::vector<VerificationProblem> problems;
  problems.reserve(subdirs.size());
  for (const auto& sub : subdirs) {
    VerificationProblem p;
    p.problem_id = sub.filename().string();
    for (const char* name : {"known.txt", "unknown.txt"}) {
      if (!fs::is_regular_file(sub / name)) {
        throw DataError(
            fmt::format("problem '{}': missing {}", p.problem_id, name));
      }
    }
    p.known_text = ReadFile(sub / "known.txt");
    p.unknown_text = ReadFile(sub / "unknown.txt");
    if (fs::is_regular_file(sub / "meta.json")) {
      try {
        const json meta = json::parse(ReadFile(sub / "meta.json"));
        p.known_author = meta.value("known_author", "");
        p.unknown_author = meta.value("unknown_author", "");
        if (auto it = meta.find("meta"); it != meta.end()) {
          for (const auto& [k, v] : it->items()) {
            p.meta[k] = v.get<std::string>();
          }
        }
      } catch (const json::exception& e) {
        throw DataError(fmt::format("problem '{}': bad meta.json: {}",
                                    p.problem_id, e.what()));
      }
    }
    if (auto it = truth.find(p.problem_id); it != truth.end()) {
      p.truth = it->second;
      truth.erase(it);
    }
    problems.push_back(std::move(p));
  }
  if (!truth.empty()) {
    throw DataError(fmt::format("truth.txt names unknown problem '{}'",
                                truth.begin()->first));
  }
  return problems;
}

}  // namespace avkit
