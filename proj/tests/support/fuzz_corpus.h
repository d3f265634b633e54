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

// Random corpora whose words record their origin, so that built problems
// can be traced back to source documents.

#ifndef AVKIT_TESTS_SUPPORT_FUZZ_CORPUS_H_
#define AVKIT_TESTS_SUPPORT_FUZZ_CORPUS_H_

#include <map>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "avkit/builder.h"
#include "avkit/corpus.h"
#include "avkit/random.h"
#include "avkit/text.h"

namespace avkit::testing {

// Word i of document d of author a is "a~d~i".
inline Author TracedAuthor(const std::string& id, Gender g,
                           const std::vector<size_t>& doc_words) {
  Author a;
  a.author_id = id;
  a.gender = g;
  for (size_t d = 0; d < doc_words.size(); ++d) {
    std::string body;
    for (size_t i = 0; i < doc_words[d]; ++i) {
      if (i) body += (i % 7 == 0) ? "\n" : " ";
      body += fmt::format("{}~{}~{}", id, d, i);
    }
    a.documents.push_back(Document::Make(fmt::format("{}-d{}", id, d), body));
  }
  a.Recount();
  return a;
}

inline Corpus RandomCorpus(Rng& rng, size_t authors, size_t max_docs,
                           size_t max_words) {
  Corpus c;
  c.name = "fuzz";
  for (size_t k = 0; k < authors; ++k) {
    std::vector<size_t> docs(1 + rng.Below(max_docs));
    for (auto& w : docs) w = 1 + rng.Below(max_words);
    c.authors.push_back(TracedAuthor(fmt::format("a{}", k),
                                     rng.Bernoulli(0.5) ? Gender::kFemale
                                                        : Gender::kMale,
                                     docs));
  }
  return c;
}

// (author, document) of a traced word.
inline std::pair<std::string, std::string> Origin(std::string_view word) {
  const size_t a = word.find('~');
  const size_t b = word.find('~', a + 1);
  return {std::string(word.substr(0, a)),
          std::string(word.substr(a + 1, b - a - 1))};
}

// Empty when every builder invariant holds, otherwise a description of the
// first violation.
inline std::string CheckProblems(const std::vector<VerificationProblem>& ps,
                                 int budget) {
  size_t yes = 0;
  size_t no = 0;
  for (const auto& p : ps) {
    const auto k = text::Words(p.known_text);
    const auto u = text::Words(p.unknown_text);
    if (k.size() != static_cast<size_t>(budget / 2) ||
        u.size() != static_cast<size_t>(budget / 2)) {
      return fmt::format("{}: sides hold {} and {} words, want {}",
                         p.problem_id, k.size(), u.size(), budget / 2);
    }
    std::set<std::pair<std::string, std::string>> known_docs;
    for (auto w : k) {
      const auto o = Origin(w);
      if (o.first != p.known_author) {
        return fmt::format("{}: known word {} not by {}", p.problem_id, w,
                           p.known_author);
      }
      known_docs.insert(o);
    }
    for (auto w : u) {
      const auto o = Origin(w);
      if (o.first != p.unknown_author) {
        return fmt::format("{}: unknown word {} not by {}", p.problem_id, w,
                           p.unknown_author);
      }
      if (known_docs.count(o)) {
        return fmt::format("{}: document {} feeds both sides", p.problem_id,
                           o.second);
      }
    }
    if (!p.truth) return fmt::format("{}: no label", p.problem_id);
    const bool same = p.known_author == p.unknown_author;
    if (same != (*p.truth == Label::kYes)) {
      return fmt::format("{}: label disagrees with authors", p.problem_id);
    }
    (*p.truth == Label::kYes ? yes : no)++;
  }
  if ((yes > no ? yes - no : no - yes) > 1) {
    return fmt::format("unbalanced labels: {} Y, {} N", yes, no);
  }
  return {};
}

}  // namespace avkit::testing

#endif  // AVKIT_TESTS_SUPPORT_FUZZ_CORPUS_H_
