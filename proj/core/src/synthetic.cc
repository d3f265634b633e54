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

#include "avkit/synthetic.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "avkit/error.h"
#include "avkit/features.h"
#include "avkit/random.h"

namespace avkit {
namespace {

std::vector<std::string> MakeVocabulary(size_t size, Rng& rng) {
  static constexpr std::array<std::string_view, 16> kOnsets = {
      "b", "c", "d", "f", "g", "l", "m", "n", "p", "r", "s", "t", "v", "z",
      "ch", "gl"};
  static constexpr std::array<std::string_view, 5> kVowels = {"a", "e", "i",
                                                              "o", "u"};
  std::set<std::string> seen;
  std::vector<std::string> words;
  while (words.size() < size) {
    const size_t syllables = 1 + rng.Below(4);
    std::string w;
    for (size_t s = 0; s < syllables; ++s) {
      w += kOnsets[rng.Below(kOnsets.size())];
      w += kVowels[rng.Below(kVowels.size())];
    }
    if (seen.insert(w).second) words.push_back(std::move(w));
  }
  return words;
}

std::vector<double> ZipfCdf(size_t n, double exponent) {
  std::vector<double> cdf(n);
  double total = 0.0;
  for (size_t r = 0; r < n; ++r) {
    total += 1.0 / std::pow(static_cast<double>(r + 1), exponent);
    cdf[r] = total;
  }
  for (double& c : cdf) c /= total;
  return cdf;
}

size_t SampleCdf(const std::vector<double>& cdf, Rng& rng) {
  const double u = rng.Uniform();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min<size_t>(static_cast<size_t>(it - cdf.begin()), cdf.size() - 1);
}

struct Style {
  std::vector<size_t> ranking;   // personal rank -> vocabulary index
  std::vector<size_t> fw_ranking;
  double function_word_rate;
  double comma_rate;
  double sentence_mean;
  std::string_view sentence_end;
  std::string_view pet_punct;
  double pet_punct_rate;
  double capital_rate;  // sentence-initial capitalisation
};

}  // namespace

Corpus GenerateSyntheticCorpus(const SyntheticConfig& cfg) {
  if (cfg.authors == 0 || cfg.docs_per_author == 0 || cfg.vocabulary < 10 ||
      cfg.min_doc_words == 0 || cfg.max_doc_words < cfg.min_doc_words) {
    throw UsageError("invalid synthetic corpus configuration");
  }
  Rng rng(DeriveSeed(cfg.seed, "synthetic-corpus"));
  const std::vector<std::string> vocab = MakeVocabulary(cfg.vocabulary, rng);
  const auto fw_span = DefaultItalianFunctionWords();
  const std::vector<std::string_view> function_words(fw_span.begin(),
                                                     fw_span.end());
  const std::vector<double> content_cdf = ZipfCdf(vocab.size(), cfg.zipf_exponent);
  const std::vector<double> fw_cdf = ZipfCdf(function_words.size(), 1.0);

  static constexpr std::array<std::string_view, 4> kEnds = {".", "!", "...",
                                                            "?"};
  static constexpr std::array<std::string_view, 5> kPets = {";", ":", "!!",
                                                            ":)", "-"};

  Corpus corpus;
  corpus.name = cfg.name;
  corpus.genre = cfg.genre;
  if (cfg.topics.size() == 1) corpus.topic = cfg.topics.front();

  for (size_t a = 0; a < cfg.authors; ++a) {
    Style st;
    st.ranking.resize(vocab.size());
    std::iota(st.ranking.begin(), st.ranking.end(), size_t{0});
    rng.Shuffle(std::span<size_t>(st.ranking));
    st.fw_ranking.resize(function_words.size());
    std::iota(st.fw_ranking.begin(), st.fw_ranking.end(), size_t{0});
    rng.Shuffle(std::span<size_t>(st.fw_ranking));
    st.function_word_rate = 0.15 + 0.35 * rng.Uniform();
    st.comma_rate = 0.02 + 0.15 * rng.Uniform();
    st.sentence_mean = 5.0 + 20.0 * rng.Uniform();
    st.sentence_end = kEnds[rng.Below(kEnds.size())];
    st.pet_punct = kPets[rng.Below(kPets.size())];
    st.pet_punct_rate = 0.1 * rng.Uniform();
    st.capital_rate = rng.Uniform();

    Author author;
    author.author_id = fmt::format("{}-a{:03}", cfg.name, a + 1);
    author.gender = a % 2 == 0 ? Gender::kFemale : Gender::kMale;
    for (size_t d = 0; d < cfg.docs_per_author; ++d) {
      const size_t words =
          cfg.min_doc_words + rng.Below(cfg.max_doc_words - cfg.min_doc_words + 1);
      std::string body;
      bool sentence_start = true;
      for (size_t w = 0; w < words; ++w) {
        std::string token;
        if (rng.Bernoulli(st.function_word_rate)) {
          token = function_words[st.fw_ranking[SampleCdf(fw_cdf, rng)]];
        } else if (rng.Bernoulli(cfg.personal_weight)) {
          token = vocab[st.ranking[SampleCdf(content_cdf, rng)]];
        } else {
          token = vocab[SampleCdf(content_cdf, rng)];
        }
        if (sentence_start && rng.Bernoulli(st.capital_rate) &&
            token[0] >= 'a' && token[0] <= 'z') {
          token[0] = static_cast<char>(token[0] - 32);
        }
        sentence_start = false;
        if (w + 1 == words || rng.Bernoulli(1.0 / st.sentence_mean)) {
          token += st.sentence_end;
          sentence_start = true;
        } else if (rng.Bernoulli(st.comma_rate)) {
          token += ',';
        } else if (rng.Bernoulli(st.pet_punct_rate)) {
          token += ' ';
          token += st.pet_punct;
        }
        if (!body.empty()) body += ' ';
        body += token;
      }
      std::optional<std::string> topic;
      if (!cfg.topics.empty()) topic = cfg.topics[d % cfg.topics.size()];
      author.documents.push_back(Document::Make(
          fmt::format("{}-d{:03}", author.author_id, d + 1), std::move(body),
          topic));
    }
    author.Recount();
    corpus.authors.push_back(std::move(author));
  }
  return corpus;
}

}  // namespace avkit
