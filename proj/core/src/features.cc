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

#include "avkit/features.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include <fmt/format.h>

#include "avkit/compress.h"
#include "avkit/error.h"
#include "avkit/preprocess.h"
#include "avkit/text.h"

namespace avkit {

namespace fs = std::filesystem;

FeatureKind KindOf(size_t index) {
  if (index < 10) return FeatureKind::kSimilarity;
  if (index < 19) return FeatureKind::kDifference;
  switch (index) {
    case 19:
    case 23:
      return FeatureKind::kDirectional;
    case 20:
    case 22:
      return FeatureKind::kDifference;
    case 21:
      return FeatureKind::kDistance;
    default:
      break;
  }
  return FeatureKind::kGender;
}

GenderFeatures GenderFeatures::From(Gender known, Gender unknown) {
  GenderFeatures g;
  g.gender_known = known == Gender::kMale ? 1 : 0;
  g.gender_unknown = unknown == Gender::kMale ? 1 : 0;
  g.same_gender = known == unknown ? 1 : 0;
  return g;
}

FeatureVector AppendGender(FeatureVector v, const GenderFeatures& g) {
  if (v.size() != kCoreFeatureCount) {
    throw InvariantError(fmt::format(
        "gender features need a {}-entry vector, got {} (already appended?)",
        kCoreFeatureCount, v.size()));
  }
  v.values.push_back(g.gender_known);
  v.values.push_back(g.gender_unknown);
  v.values.push_back(g.same_gender);
  return v;
}

namespace features {

template <typename Key>
Counts<Key> Tally(std::vector<Key> keys) {
  std::sort(keys.begin(), keys.end());
  Counts<Key> out;
  for (auto& k : keys) {
    if (!out.empty() && out.back().first == k) {
      ++out.back().second;
    } else {
      out.emplace_back(std::move(k), 1);
    }
  }
  return out;
}

Counts<std::u32string> CharNgrams(std::u32string_view cps, size_t n) {
  std::vector<std::u32string> grams;
  if (cps.size() >= n) {
    grams.reserve(cps.size() - n + 1);
    for (size_t i = 0; i + n <= cps.size(); ++i) {
      grams.emplace_back(cps.substr(i, n));
    }
  }
  return Tally(std::move(grams));
}

namespace {

// Probability distribution over code points, as sorted runs.
std::vector<std::pair<char32_t, double>> Distribution(
    std::u32string_view cps) {
  std::vector<char32_t> keys(cps.begin(), cps.end());
  const auto counts = Tally(std::move(keys));
  std::vector<std::pair<char32_t, double>> dist;
  dist.reserve(counts.size());
  const double total = static_cast<double>(cps.size());
  for (const auto& [c, n] : counts) {
    dist.emplace_back(c, static_cast<double>(n) / total);
  }
  return dist;
}

constexpr uint64_t kBoundary = 0x1FFFFF;  // outside the Unicode range

uint64_t Pack(uint64_t a, uint64_t b) { return a << 21 | b; }
uint64_t Pack(uint64_t a, uint64_t b, uint64_t c) {
  return a << 42 | b << 21 | c;
}

}  // namespace

double ShannonEntropyBits(std::u32string_view cps) {
  if (cps.empty()) return 0.0;
  double h = 0.0;
  for (const auto& [c, p] : Distribution(cps)) h -= p * std::log2(p);
  return h;
}

double JensenShannon(std::u32string_view a, std::u32string_view b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty() ? 0.0 : 1.0;
  const auto p = Distribution(a);
  const auto q = Distribution(b);
  double js = 0.0;
  size_t i = 0;
  size_t j = 0;
  while (i < p.size() || j < q.size()) {
    double pi = 0.0;
    double qj = 0.0;
    if (j == q.size() || (i < p.size() && p[i].first < q[j].first)) {
      pi = p[i++].second;
    } else if (i == p.size() || q[j].first < p[i].first) {
      qj = q[j++].second;
    } else {
      pi = p[i++].second;
      qj = q[j++].second;
    }
    const double m = (pi + qj) / 2.0;
    const double tp = pi > 0.0 ? 0.5 * pi * std::log2(pi / m) : 0.0;
    const double tq = qj > 0.0 ? 0.5 * qj * std::log2(qj / m) : 0.0;
    js += tp + tq;
  }
  return std::clamp(js, 0.0, 1.0);
}

double CrossEntropyBits(std::u32string_view model,
                        std::u32string_view target) {
  if (target.empty()) return 0.0;
  std::unordered_map<uint64_t, uint32_t> trigrams;
  std::unordered_map<uint64_t, uint32_t> contexts;
  trigrams.reserve(model.size());
  contexts.reserve(model.size());
  uint64_t c1 = kBoundary;
  uint64_t c2 = kBoundary;
  for (char32_t ch : model) {
    ++trigrams[Pack(c1, c2, ch)];
    ++contexts[Pack(c1, c2)];
    c1 = c2;
    c2 = ch;
  }
  std::u32string alphabet(model);
  alphabet.append(target);
  std::sort(alphabet.begin(), alphabet.end());
  const double vocab = static_cast<double>(
      std::unique(alphabet.begin(), alphabet.end()) - alphabet.begin());

  double bits = 0.0;
  c1 = kBoundary;
  c2 = kBoundary;
  for (char32_t ch : target) {
    auto t = trigrams.find(Pack(c1, c2, ch));
    auto c = contexts.find(Pack(c1, c2));
    const double num = (t == trigrams.end() ? 0.0 : t->second) + 1.0;
    const double den = (c == contexts.end() ? 0.0 : c->second) + vocab;
    bits -= std::log2(num / den);
    c1 = c2;
    c2 = ch;
  }
  return bits / static_cast<double>(target.size());
}

}  // namespace features

// ---------------------------------------------------------------------------

namespace {

using features::Counts;
using features::Tally;

// Everything a pair feature needs from a single text.
struct Profile {
  std::u32string cps;
  std::array<Counts<std::u32string>, 3> char_ngrams;  // n = 2, 3, 4
  Counts<std::string> unigrams;
  Counts<std::string> bigrams;
  Counts<size_t> function_words;
  Counts<char32_t> punct;
  Counts<std::u32string> punct_bigrams;
  Counts<size_t> word_lengths;
  Counts<std::string> word_shapes;
  double avg_word_length = 0;
  double avg_sentence_length = 0;
  double type_token_ratio = 0;
  double hapax_ratio = 0;
  double uppercase_ratio = 0;
  double digit_ratio = 0;
  double whitespace_ratio = 0;
  double initial_capital_ratio = 0;
  double entropy = 0;
  double compressed = 0;  // C(text)
  double compression_ratio = 0;
};

double Ratio(size_t num, size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string CollapsedShape(std::string_view token) {
  std::string shape = ShapeField(token);
  shape.erase(std::unique(shape.begin(), shape.end()), shape.end());
  return shape;
}

// Average words per sentence, with sentences delimited by runs of . ! ?
double AverageSentenceLength(std::string_view text) {
  size_t sentences = 0;
  size_t words = 0;
  size_t start = 0;
  auto flush = [&](size_t end) {
    const size_t n = text::CountWords(text.substr(start, end - start));
    if (n > 0) {
      ++sentences;
      words += n;
    }
  };
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.' || c == '!' || c == '?') {
      flush(i);
      while (i + 1 < text.size() &&
             (text[i + 1] == '.' || text[i + 1] == '!' || text[i + 1] == '?')) {
        ++i;
      }
      start = i + 1;
    }
  }
  flush(text.size());
  return Ratio(words, sentences);
}

Profile MakeProfile(std::string_view text,
                    const std::vector<std::string>& function_words) {
  Profile p;
  p.cps = text::Decode(text);
  for (size_t n = 2; n <= 4; ++n) {
    p.char_ngrams[n - 2] = features::CharNgrams(p.cps, n);
  }

  const auto tokens = text::Words(text);
  std::vector<std::string> lowered;
  lowered.reserve(tokens.size());
  for (auto t : tokens) lowered.push_back(text::Lower(t));

  std::vector<std::string> bigram_keys;
  for (size_t i = 0; i + 1 < lowered.size(); ++i) {
    bigram_keys.push_back(lowered[i] + ' ' + lowered[i + 1]);
  }
  p.unigrams = Tally(lowered);
  p.bigrams = Tally(std::move(bigram_keys));

  // Function words are matched on letter runs, so "dell'anno" counts "dell".
  std::vector<size_t> fw_hits;
  for (const auto& token : lowered) {
    const std::u32string cps = text::Decode(token);
    size_t i = 0;
    while (i < cps.size()) {
      if (!text::IsLetter(cps[i])) {
        ++i;
        continue;
      }
      size_t j = i;
      while (j < cps.size() && text::IsLetter(cps[j])) ++j;
      const std::string run = text::Encode(std::u32string_view(cps).substr(i, j - i));
      auto it = std::lower_bound(function_words.begin(), function_words.end(),
                                 run);
      if (it != function_words.end() && *it == run) {
        fw_hits.push_back(static_cast<size_t>(it - function_words.begin()));
      }
      i = j;
    }
  }
  p.function_words = Tally(std::move(fw_hits));

  std::u32string punct;
  size_t upper = 0;
  size_t letters = 0;
  size_t digits = 0;
  size_t spaces = 0;
  for (char32_t c : p.cps) {
    if (text::IsPunctuation(c)) punct.push_back(c);
    if (text::IsLetter(c)) {
      ++letters;
      if (text::IsUpper(c)) ++upper;
    }
    if (text::IsDigit(c)) ++digits;
    if (text::IsWhitespace(c)) ++spaces;
  }
  p.punct = Tally(std::vector<char32_t>(punct.begin(), punct.end()));
  p.punct_bigrams = features::CharNgrams(punct, 2);

  std::vector<size_t> lengths;
  std::vector<std::string> shapes;
  size_t total_length = 0;
  size_t initial_caps = 0;
  for (auto t : tokens) {
    const size_t len = text::Length(t);
    total_length += len;
    lengths.push_back(std::min<size_t>(len, 15));
    shapes.push_back(CollapsedShape(t));
    const std::u32string first = text::Decode(t.substr(0, 4));
    if (!first.empty() && text::IsUpper(first.front())) ++initial_caps;
  }
  p.word_lengths = Tally(std::move(lengths));
  p.word_shapes = Tally(std::move(shapes));

  size_t hapax = 0;
  for (const auto& [w, c] : p.unigrams) hapax += c == 1 ? 1 : 0;

  p.avg_word_length = Ratio(total_length, tokens.size());
  p.avg_sentence_length = AverageSentenceLength(text);
  p.type_token_ratio = Ratio(p.unigrams.size(), tokens.size());
  p.hapax_ratio = Ratio(hapax, tokens.size());
  p.uppercase_ratio = Ratio(upper, letters);
  p.digit_ratio = Ratio(digits, p.cps.size());
  p.whitespace_ratio = Ratio(spaces, p.cps.size());
  p.initial_capital_ratio = Ratio(initial_caps, tokens.size());
  p.entropy = features::ShannonEntropyBits(p.cps);
  p.compressed = static_cast<double>(lz77::CompressedSize(text));
  p.compression_ratio = Ratio(static_cast<size_t>(p.compressed), text.size());
  return p;
}

std::vector<std::string> Normalise(std::vector<std::string> words) {
  for (auto& w : words) w = text::Lower(text::Trim(w));
  std::erase_if(words, [](const std::string& w) { return w.empty(); });
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return words;
}

}  // namespace

FeatureExtractor::FeatureExtractor() {
  const auto defaults = DefaultItalianFunctionWords();
  function_words_ = Normalise({defaults.begin(), defaults.end()});
}

FeatureExtractor::FeatureExtractor(std::vector<std::string> function_words)
    : function_words_(Normalise(std::move(function_words))) {}

FeatureExtractor FeatureExtractor::FromWordList(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = text::Trim(line);
    if (t.empty() || t.front() == '#') continue;
    words.emplace_back(t);
  }
  return FeatureExtractor(std::move(words));
}

FeatureVector FeatureExtractor::Extract(std::string_view known,
                                        std::string_view unknown) const {
  if (text::CountWords(known) == 0 || text::CountWords(unknown) == 0) {
    throw DataError("feature extraction needs two non-empty texts");
  }
  const Profile k = MakeProfile(known, function_words_);
  const Profile u = MakeProfile(unknown, function_words_);

  std::string ku;
  ku.reserve(known.size() + unknown.size());
  ku.append(known).append(unknown);
  const double c_ku = static_cast<double>(lz77::CompressedSize(ku));

  using features::Cosine;
  FeatureVector v;
  v.values = {
      Cosine(k.char_ngrams[0], u.char_ngrams[0]),
      Cosine(k.char_ngrams[1], u.char_ngrams[1]),
      Cosine(k.char_ngrams[2], u.char_ngrams[2]),
      Cosine(k.unigrams, u.unigrams),
      Cosine(k.bigrams, u.bigrams),
      Cosine(k.function_words, u.function_words),
      Cosine(k.punct, u.punct),
      Cosine(k.punct_bigrams, u.punct_bigrams),
      Cosine(k.word_lengths, u.word_lengths),
      Cosine(k.word_shapes, u.word_shapes),
      std::abs(k.avg_word_length - u.avg_word_length),
      std::abs(k.avg_sentence_length - u.avg_sentence_length),
      std::abs(k.type_token_ratio - u.type_token_ratio),
      std::abs(k.hapax_ratio - u.hapax_ratio),
      std::abs(k.uppercase_ratio - u.uppercase_ratio),
      std::abs(k.digit_ratio - u.digit_ratio),
      std::abs(k.whitespace_ratio - u.whitespace_ratio),
      std::abs(k.initial_capital_ratio - u.initial_capital_ratio),
      std::abs(k.entropy - u.entropy),
      features::CrossEntropyBits(k.cps, u.cps),
      features::JensenShannon(k.cps, u.cps),
      std::max(0.0, (c_ku - std::min(k.compressed, u.compressed)) /
                        std::max(k.compressed, u.compressed)),
      std::abs(k.compression_ratio - u.compression_ratio),
      (c_ku - k.compressed) / u.compressed,
  };
  return v;
}

FeatureVector Extract(std::string_view known, std::string_view unknown) {
  static const FeatureExtractor extractor;
  return extractor.Extract(known, unknown);
}

// ---------------------------------------------------------------------------

Scaler Scaler::Fit(std::span<const FeatureVector> train) {
  if (train.empty()) throw DataError("scaler needs at least 1 vector");
  Scaler s;
  s.min = train.front().values;
  s.max = train.front().values;
  for (const auto& v : train) {
    if (v.size() != s.dimension()) {
      throw DataError("scaler: feature dimension mismatch");
    }
    for (size_t d = 0; d < v.size(); ++d) {
      s.min[d] = std::min(s.min[d], v[d]);
      s.max[d] = std::max(s.max[d], v[d]);
    }
  }
  return s;
}

FeatureVector Scaler::Apply(const FeatureVector& v) const {
  if (v.size() != dimension()) {
    throw DataError(fmt::format("scaler expects {} features, got {}",
                                dimension(), v.size()));
  }
  FeatureVector out;
  out.values.resize(v.size());
  for (size_t d = 0; d < v.size(); ++d) {
    const double range = max[d] - min[d];
    out.values[d] = range > 0.0
                        ? std::clamp((v[d] - min[d]) / range, 0.0, 1.0)
                        : 0.5;
  }
  return out;
}

void WriteFeatureCsv(const fs::path& path,
                     std::span<const std::string> problem_ids,
                     std::span<const FeatureVector> vectors) {
  if (problem_ids.size() != vectors.size()) {
    throw InvariantError("feature CSV: id and vector counts differ");
  }
  std::string out = "problem_id";
  const size_t dim = vectors.empty() ? kCoreFeatureCount : vectors[0].size();
  for (size_t d = 0; d < dim; ++d) {
    out += ',';
    out += kFeatureNames[d];
  }
  out += '\n';
  for (size_t i = 0; i < vectors.size(); ++i) {
    out += problem_ids[i];
    for (double x : vectors[i].values) out += fmt::format(",{:.17g}", x);
    out += '\n';
  }
  WriteFile(path, out);
}

}  // namespace avkit
