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

#include "avkit/preprocess.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "avkit/error.h"
#include "avkit/text.h"

namespace avkit {

namespace fs = std::filesystem;

std::string_view ToString(BleachFeature f) {
  switch (f) {
    case BleachFeature::kShape:
      return "shape";
    case BleachFeature::kPunctA:
      return "puncta";
    case BleachFeature::kLength:
      return "length";
    case BleachFeature::kFrequency:
      break;
  }
  return "frequency";
}

std::vector<BleachFeature> ParseBleachFeatures(std::string_view list) {
  std::vector<BleachFeature> out;
  while (!list.empty()) {
    const size_t comma = list.find(',');
    const std::string_view item = text::Trim(list.substr(0, comma));
    list = comma == std::string_view::npos ? std::string_view{}
                                           : list.substr(comma + 1);
    if (item == "shape") {
      out.push_back(BleachFeature::kShape);
    } else if (item == "puncta") {
      out.push_back(BleachFeature::kPunctA);
    } else if (item == "length") {
      out.push_back(BleachFeature::kLength);
    } else if (item == "frequency") {
      out.push_back(BleachFeature::kFrequency);
    } else {
      throw UsageError(fmt::format("unknown bleaching feature '{}'", item));
    }
  }
  if (out.empty()) throw UsageError("empty bleaching feature list");
  return out;
}

void BleachConfig::Validate() const {
  if (features.empty()) throw UsageError("bleaching needs at least 1 feature");
  if (length_pad < 0 || length_pad > 9) throw UsageError("bad length pad");
  if (!(log_base > 1.0)) throw UsageError("log base must exceed 1");
}

namespace {

constexpr auto kEmoticons = [] {
  std::array<std::string_view, 52> faces = {
      ":-)", ":)",  ":-(", ":(",  ";-)", ";)",  ":-D", ":D",  ";D",
      ":-P", ":P",  ":-p", ":p",  ";-P", ";P",  ":'(", ":'-(", ":-/",
      ":/",  ":-\\", ":-|", ":|", ":-O", ":O",  ":-o", ":o",  ":-*",
      ":*",  ":-]", ":]",  ":-[", ":[",  ":3",  "=)",  "=(",  "=D",
      "=P",  "<3",  "</3", "^^",  "^_^", "-_-", "o.O", "O.o", "XD",
      "xD",  "8)",  "8-)", "B)",  "B-)", ">:(", ":@"};
  // Longest first so the greedy scan prefers ":-)" over ":)".
  std::sort(faces.begin(), faces.end(), [](auto a, auto b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  return faces;
}();

bool StartsAlnum(std::string_view face) {
  const char c = face.front();
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z');
}

// Length in code points of the emoticon starting at `pos`, or 0.
size_t MatchEmoticon(std::u32string_view token, size_t pos) {
  for (std::string_view face : kEmoticons) {
    if (pos + face.size() > token.size()) continue;
    bool match = true;
    for (size_t k = 0; k < face.size() && match; ++k) {
      match = token[pos + k] == static_cast<char32_t>(face[k]);
    }
    if (!match) continue;
    // Faces that begin with a letter or digit only count as the whole token.
    if (StartsAlnum(face) && !(pos == 0 && face.size() == token.size())) {
      continue;
    }
    return face.size();
  }
  return 0;
}

// Zero-width joiner, variation selector 16 and the skin tone modifiers
// attach to the preceding emoji.
bool IsEmojiJoiner(char32_t cp) {
  return cp == 0x200D || cp == 0xFE0F || (cp >= 0x1F3FB && cp <= 0x1F3FF);
}

}  // namespace

std::span<const std::string_view> Emoticons() { return kEmoticons; }

bool IsEmoji(char32_t cp) {
  return (cp >= 0x1F300 && cp <= 0x1F5FF) ||  // Misc Symbols and Pictographs
         (cp >= 0x1F600 && cp <= 0x1F64F) ||  // Emoticons
         (cp >= 0x1F680 && cp <= 0x1F6FF) ||  // Transport and Map
         (cp >= 0x1F900 && cp <= 0x1F9FF);    // Supplemental Symbols
}

std::string ShapeField(std::string_view token) {
  std::string out;
  for (char32_t c : text::Decode(token)) {
    if (text::IsUpper(c)) {
      out.push_back('U');
    } else if (text::IsLower(c)) {
      out.push_back('L');
    } else if (text::IsDigit(c)) {
      out.push_back('D');
    } else {
      out.push_back('X');
    }
  }
  return out;
}

std::string PunctAField(std::string_view token) {
  const std::u32string cps = text::Decode(token);
  std::string out;
  size_t i = 0;
  while (i < cps.size()) {
    if (size_t len = MatchEmoticon(cps, i)) {
      out.push_back('E');
      i += len;
    } else if (IsEmojiJoiner(cps[i])) {
      ++i;
    } else if (IsEmoji(cps[i])) {
      out.push_back('J');
      ++i;
    } else if (text::IsAlnum(cps[i])) {
      out.push_back('W');
      while (i < cps.size() && text::IsAlnum(cps[i])) ++i;
    } else {
      out.push_back('P');
      ++i;
    }
  }
  // A token made only of joiners still needs a field.
  if (out.empty() && !cps.empty()) out.push_back('P');
  return out;
}

std::string LengthField(std::string_view token, int pad) {
  return fmt::format("{:0{}}", text::Length(token), pad);
}

int FrequencyBucket(uint64_t count, double log_base) {
  const double x = std::log(static_cast<double>(count) + 1.0);
  return static_cast<int>(std::lround(
      log_base == std::numbers::e ? x : x / std::log(log_base)));
}

std::string BleachToken(std::string_view token, const BleachConfig& cfg) {
  std::string out;
  for (BleachFeature f : cfg.features) {
    if (!out.empty()) out.push_back(' ');
    switch (f) {
      case BleachFeature::kShape:
        out += ShapeField(token);
        break;
      case BleachFeature::kPunctA:
        out += PunctAField(token);
        break;
      case BleachFeature::kLength:
        out += LengthField(token, cfg.length_pad);
        break;
      case BleachFeature::kFrequency: {
        auto it = cfg.frequency_table.find(std::string(token));
        const uint64_t count =
            it == cfg.frequency_table.end() ? 0 : it->second;
        out += std::to_string(FrequencyBucket(count, cfg.log_base));
        break;
      }
    }
  }
  return out;
}

std::string BleachText(std::string_view text, const BleachConfig& cfg) {
  std::string out;
  for (auto token : text::Words(text)) {
    if (!out.empty()) out.push_back(' ');
    out += BleachToken(token, cfg);
  }
  return out;
}

void AddToFrequencyTable(std::string_view text, FrequencyTable& table) {
  for (auto token : text::Words(text)) ++table[std::string(token)];
}

FrequencyTable BuildFrequencyTable(const Corpus& corpus) {
  FrequencyTable table;
  for (const auto& a : corpus.authors) {
    for (const auto& d : a.documents) AddToFrequencyTable(d.text, table);
  }
  return table;
}

void WriteFrequencyTable(const FrequencyTable& table, const fs::path& path) {
  std::vector<std::pair<std::string_view, uint64_t>> rows(table.begin(),
                                                          table.end());
  std::sort(rows.begin(), rows.end());
  std::string out;
  for (const auto& [token, count] : rows) {
    out += token;
    out += '\t';
    out += std::to_string(count);
    out += '\n';
  }
  WriteFile(path, out);
}

FrequencyTable ReadFrequencyTable(const fs::path& path) {
  std::istringstream in(ReadFile(path));
  FrequencyTable table;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw DataError(
          fmt::format("{}:{}: expected token<TAB>count", path.string(), line_no));
    }
    uint64_t count = 0;
    try {
      size_t used = 0;
      count = std::stoull(line.substr(tab + 1), &used);
      if (used != line.size() - tab - 1) throw std::invalid_argument("tail");
    } catch (const std::exception&) {
      throw DataError(
          fmt::format("{}:{}: invalid count", path.string(), line_no));
    }
    table[line.substr(0, tab)] += count;
  }
  return table;
}

std::vector<VerificationProblem> BleachProblems(
    std::vector<VerificationProblem> problems, const BleachConfig& cfg) {
  cfg.Validate();
  for (auto& p : problems) {
    p.known_text = BleachText(p.known_text, cfg);
    p.unknown_text = BleachText(p.unknown_text, cfg);
  }
  return problems;
}

// ---------------------------------------------------------------------------
// Entity masking

std::string_view ToString(EntityLabel l) {
  switch (l) {
    case EntityLabel::kPer:
      return "PER";
    case EntityLabel::kLoc:
      return "LOC";
    case EntityLabel::kOrg:
      break;
  }
  return "ORG";
}

std::string MaskEntities(std::string_view text,
                         std::vector<EntitySpan> spans) {
  if (spans.empty()) return std::string(text);
  std::sort(spans.begin(), spans.end(),
            [](const EntitySpan& a, const EntitySpan& b) {
              return a.start != b.start ? a.start < b.start : a.end < b.end;
            });
  const size_t length = text::Length(text);
  for (size_t i = 0; i < spans.size(); ++i) {
    const auto& s = spans[i];
    if (s.start >= s.end || s.end > length) {
      throw DataError(fmt::format("entity span [{}, {}) out of range for a "
                                  "text of {} characters",
                                  s.start, s.end, length));
    }
    if (i > 0 && s.start < spans[i - 1].end) {
      throw DataError(fmt::format("entity spans [{}, {}) and [{}, {}) overlap",
                                  spans[i - 1].start, spans[i - 1].end,
                                  s.start, s.end));
    }
  }
  std::string out(text);
  // Right to left keeps the offsets of earlier spans valid.
  for (auto it = spans.rbegin(); it != spans.rend(); ++it) {
    const size_t b = text::ByteOffset(text, it->start);
    const size_t e = text::ByteOffset(text, it->end);
    out.replace(b, e - b, ToString(it->label));
  }
  return out;
}

EntityAnnotations ParseEntityAnnotations(std::istream& in,
                                         std::string_view source) {
  EntityAnnotations out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::Trim(line).empty()) continue;
    try {
      const auto record = nlohmann::json::parse(line);
      const auto doc_id = record.at("doc_id").get<std::string>();
      auto& spans = out[doc_id];
      for (const auto& s : record.at("spans")) {
        const auto label = s.at("label").get<std::string>();
        EntitySpan span;
        span.start = s.at("start").get<size_t>();
        span.end = s.at("end").get<size_t>();
        if (label == "PER") {
          span.label = EntityLabel::kPer;
        } else if (label == "LOC") {
          span.label = EntityLabel::kLoc;
        } else if (label == "ORG") {
          span.label = EntityLabel::kOrg;
        } else if (label == "MISC") {
          continue;
        } else {
          throw DataError(fmt::format("{}:{}: unknown entity label '{}'",
                                      source, line_no, label));
        }
        spans.push_back(span);
      }
    } catch (const nlohmann::json::exception& e) {
      throw DataError(fmt::format("{}:{}: malformed annotation: {}", source,
                                  line_no, e.what()));
    }
  }
  return out;
}

EntityAnnotations ReadEntityAnnotations(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  return ParseEntityAnnotations(in, path.string());
}

std::vector<EntitySpan> AnnotationTagger::Tag(const Document& doc) const {
  auto it = annotations_.find(doc.doc_id);
  return it == annotations_.end() ? std::vector<EntitySpan>{} : it->second;
}

Corpus MaskCorpus(Corpus corpus, const EntityTagger& tagger) {
  for (auto& author : corpus.authors) {
    for (auto& doc : author.documents) {
      try {
        doc.text = MaskEntities(doc.text, tagger.Tag(doc));
      } catch (const Error& e) {
        throw WithContext(e, fmt::format("document '{}'", doc.doc_id));
      }
      doc.word_count = text::CountWords(doc.text);
    }
    author.Recount();
  }
  return corpus;
}

}  // namespace avkit
