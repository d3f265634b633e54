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

#include "avkit/runner.h"

#include <algorithm>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <toml.hpp>

#include "avkit/corpus.h"
#include "avkit/error.h"
#include "avkit/features.h"
#include "avkit/parallel.h"
#include "avkit/random.h"
#include "avkit/text.h"

namespace avkit {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view ToString(TopicMode m) {
  switch (m) {
    case TopicMode::kSameTopic:
      return "same_topic";
    case TopicMode::kCrossTopic:
      return "cross_topic";
    case TopicMode::kDifferentTopic:
      break;
  }
  return "different_topic";
}

std::string_view ToString(Preprocessing p) {
  switch (p) {
    case Preprocessing::kMasked:
      return "masked";
    case Preprocessing::kBleached:
      return "bleached";
    case Preprocessing::kRaw:
      break;
  }
  return "raw";
}

void ExperimentConfig::Validate() const {
  if (train_corpus.empty()) throw UsageError("config: train_corpus is required");
  if (word_budgets.empty()) throw UsageError("config: word_budgets is empty");
  for (size_t i = 0; i < word_budgets.size(); ++i) {
    const int b = word_budgets[i];
    if (b < 2 || b % 2 != 0) {
      throw UsageError(fmt::format("config: word budget {} must be even and "
                                   ">= 2", b));
    }
    if (i > 0 && b <= word_budgets[i - 1]) {
      throw UsageError("config: word_budgets must be strictly ascending");
    }
  }
  switch (topic_mode) {
    case TopicMode::kSameTopic:
      if (!train_topic) throw UsageError("config: same_topic needs train_topic");
      if (test_topic && test_topic != train_topic) {
        throw UsageError("config: same_topic needs test_topic == train_topic");
      }
      break;
    case TopicMode::kCrossTopic:
      if (!train_topic || !test_topic) {
        throw UsageError("config: cross_topic needs train_topic and test_topic");
      }
      if (train_topic == test_topic) {
        throw UsageError("config: cross_topic needs two different topics");
      }
      break;
    case TopicMode::kDifferentTopic:
      if (train_topic || test_topic) {
        throw UsageError("config: different_topic takes no topic filters");
      }
      break;
  }
  if (preprocessing == Preprocessing::kMasked) {
    if (!train_entities) throw UsageError("config: masked needs train_entities");
    if (test_corpus && !test_entities) {
      throw UsageError("config: masked with a test_corpus needs test_entities");
    }
  }
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw UsageError("config: train_fraction must lie in (0, 1)");
  }
  if (bleach_features.empty()) throw UsageError("config: no bleach features");
  if (!(bleach_log_base > 1.0)) throw UsageError("config: log base must exceed 1");
  model.Validate();
}

// ---------------------------------------------------------------------------
// Config parsing

namespace {

template <typename T>
T Get(const json& j, const char* key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw UsageError(fmt::format("config: '{}' has the wrong type", key));
  }
}

void RejectUnknown(const json& j, std::initializer_list<std::string_view> keys,
                   std::string_view where) {
  for (const auto& [k, v] : j.items()) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
      throw UsageError(fmt::format("config: unknown key '{}{}'", where, k));
    }
  }
}

fs::path Resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

}  // namespace

ExperimentConfig ParseExperimentConfig(std::string_view content, bool is_toml,
                                       const fs::path& base_dir) {
  json j;
  if (is_toml) {
    try {
      const toml::table table = toml::parse(content);
      std::ostringstream ss;
      ss << toml::json_formatter{table};
      j = json::parse(ss.str());
    } catch (const toml::parse_error& e) {
      throw UsageError(fmt::format("config: TOML error: {}", e.description()));
    }
  } else {
    try {
      j = json::parse(content);
    } catch (const json::parse_error& e) {
      throw UsageError(fmt::format("config: JSON error: {}", e.what()));
    }
  }
  if (!j.is_object()) throw UsageError("config: top level must be a table");
  RejectUnknown(j,
                {"name", "train_corpus", "test_corpus", "topic_mode",
                 "train_topic", "test_topic", "gender_setting",
                 "gender_feature", "word_budgets", "preprocessing",
                 "train_entities", "test_entities", "bleach", "function_words",
                 "filter_up_comments", "train_fraction", "model",
                 "write_problems", "seed", "output_dir"},
                "");

  ExperimentConfig cfg;
  auto str = [&](const char* key) { return Get<std::string>(j.at(key), key); };
  auto path = [&](const char* key) { return Resolve(base_dir, str(key)); };
  if (j.contains("name")) cfg.name = str("name");
  if (j.contains("train_corpus")) cfg.train_corpus = path("train_corpus");
  if (j.contains("test_corpus")) cfg.test_corpus = path("test_corpus");
  if (j.contains("topic_mode")) {
    const auto m = str("topic_mode");
    if (m == "same_topic") {
      cfg.topic_mode = TopicMode::kSameTopic;
    } else if (m == "different_topic") {
      cfg.topic_mode = TopicMode::kDifferentTopic;
    } else if (m == "cross_topic") {
      cfg.topic_mode = TopicMode::kCrossTopic;
    } else {
      throw UsageError(fmt::format("config: unknown topic_mode '{}'", m));
    }
  }
  if (j.contains("train_topic")) cfg.train_topic = str("train_topic");
  if (j.contains("test_topic")) cfg.test_topic = str("test_topic");
  if (j.contains("gender_setting")) {
    const auto g = ParseGenderSetting(str("gender_setting"));
    if (!g) throw UsageError("config: unknown gender_setting");
    cfg.gender_setting = *g;
  }
  if (j.contains("gender_feature")) {
    cfg.gender_feature = Get<bool>(j["gender_feature"], "gender_feature");
  }
  if (j.contains("word_budgets")) {
    cfg.word_budgets = Get<std::vector<int>>(j["word_budgets"], "word_budgets");
  }
  if (j.contains("preprocessing")) {
    const auto p = str("preprocessing");
    if (p == "raw") {
      cfg.preprocessing = Preprocessing::kRaw;
    } else if (p == "masked") {
      cfg.preprocessing = Preprocessing::kMasked;
    } else if (p == "bleached") {
      cfg.preprocessing = Preprocessing::kBleached;
    } else {
      throw UsageError(fmt::format("config: unknown preprocessing '{}'", p));
    }
  }
  if (j.contains("train_entities")) cfg.train_entities = path("train_entities");
  if (j.contains("test_entities")) cfg.test_entities = path("test_entities");
  if (j.contains("bleach")) {
    const json& b = j["bleach"];
    RejectUnknown(b, {"features", "frequency_table", "log_base"}, "bleach.");
    if (b.contains("features")) {
      const auto names = Get<std::vector<std::string>>(b["features"], "features");
      std::string joined;
      for (const auto& n : names) joined += n + ",";
      cfg.bleach_features = ParseBleachFeatures(joined);
    }
    if (b.contains("frequency_table")) {
      cfg.frequency_table = Resolve(
          base_dir, Get<std::string>(b["frequency_table"], "frequency_table"));
    }
    if (b.contains("log_base")) {
      cfg.bleach_log_base = Get<double>(b["log_base"], "log_base");
    }
  }
  if (j.contains("function_words")) cfg.function_words = path("function_words");
  if (j.contains("filter_up_comments")) {
    cfg.filter_up_comments =
        Get<bool>(j["filter_up_comments"], "filter_up_comments");
  }
  if (j.contains("train_fraction")) {
    cfg.train_fraction = Get<double>(j["train_fraction"], "train_fraction");
  }
  if (j.contains("model")) {
    const json& m = j["model"];
    RejectUnknown(m, {"C", "gamma", "tolerance", "max_passes",
                      "abstain_epsilon", "grid_search"}, "model.");
    if (m.contains("C")) cfg.model.C = Get<double>(m["C"], "C");
    if (m.contains("gamma")) cfg.model.gamma = Get<double>(m["gamma"], "gamma");
    if (m.contains("tolerance")) {
      cfg.model.tolerance = Get<double>(m["tolerance"], "tolerance");
    }
    if (m.contains("max_passes")) {
      cfg.model.max_passes = Get<int>(m["max_passes"], "max_passes");
    }
    if (m.contains("abstain_epsilon")) {
      cfg.model.abstain_epsilon =
          Get<double>(m["abstain_epsilon"], "abstain_epsilon");
    }
    if (m.contains("grid_search")) {
      cfg.grid_search = Get<bool>(m["grid_search"], "grid_search");
    }
  }
  if (j.contains("write_problems")) {
    cfg.write_problems = Get<bool>(j["write_problems"], "write_problems");
  }
  if (j.contains("seed")) cfg.seed = Get<uint64_t>(j["seed"], "seed");
  if (j.contains("output_dir")) cfg.output_dir = path("output_dir");
  cfg.model.seed = cfg.seed;
  cfg.Validate();
  return cfg;
}

ExperimentConfig LoadExperimentConfig(const fs::path& path) {
  const std::string content = ReadFile(path);
  const std::string ext = path.extension().string();
  bool is_toml = ext == ".toml";
  if (ext != ".toml" && ext != ".json") {
    const auto t = text::Trim(content);
    is_toml = t.empty() || t.front() != '{';
  }
  return ParseExperimentConfig(content, is_toml, path.parent_path());
}

// ---------------------------------------------------------------------------
// Running

namespace {

std::string Sanitize(std::string_view s) {
  std::string out;
  for (char c : s) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      (c >= '0' && c <= '9') || c == '-' || c == '_';
    out.push_back(keep ? c : '_');
  }
  return out.empty() ? "corpus" : out;
}

struct Source {
  Corpus corpus;
  std::optional<std::string> topic;
  FrequencyTable frequency;
  std::string id_prefix;

  bool SameAs(const Source& other, const fs::path& a, const fs::path& b) const {
    return a == b && topic == other.topic;
  }
};

Source LoadSource(const ExperimentConfig& cfg, const fs::path& path,
                  const std::optional<fs::path>& entities,
                  std::optional<std::string> topic) {
  Source s;
  s.corpus = IngestCorpus(path);
  if (cfg.filter_up_comments) s.corpus = FilterUpComments(std::move(s.corpus));
  if (cfg.preprocessing == Preprocessing::kMasked) {
    s.corpus = MaskCorpus(std::move(s.corpus),
                          AnnotationTagger(ReadEntityAnnotations(*entities)));
  }
  if (cfg.preprocessing == Preprocessing::kBleached) {
    s.frequency = cfg.frequency_table ? ReadFrequencyTable(*cfg.frequency_table)
                                      : BuildFrequencyTable(s.corpus);
  }
  s.id_prefix = Sanitize(s.corpus.name);
  if (topic) s.id_prefix += "-" + Sanitize(*topic);
  s.id_prefix += "-";
  s.topic = std::move(topic);
  return s;
}

std::vector<VerificationProblem> Build(const ExperimentConfig& cfg,
                                       const Source& src, int budget) {
  BuildConfig bc;
  bc.word_budget = budget;
  bc.gender_setting = cfg.gender_setting;
  bc.topic_filter = src.topic;
  bc.seed = cfg.seed;
  bc.id_prefix = src.id_prefix;
  auto problems = BuildProblems(src.corpus, bc);
  if (cfg.preprocessing == Preprocessing::kBleached) {
    BleachConfig bleach;
    bleach.features = cfg.bleach_features;
    bleach.frequency_table = src.frequency;
    bleach.log_base = cfg.bleach_log_base;
    problems = BleachProblems(std::move(problems), bleach);
  }
  return problems;
}

std::vector<std::string> Ids(const std::vector<VerificationProblem>& ps) {
  std::vector<std::string> ids;
  ids.reserve(ps.size());
  for (const auto& p : ps) ids.push_back(p.problem_id);
  return ids;
}

size_t DistinctAuthors(const Split& split) {
  std::set<std::string_view> authors;
  for (const auto* side : {&split.train, &split.test}) {
    for (const auto& p : *side) {
      authors.insert(p.known_author);
      authors.insert(p.unknown_author);
    }
  }
  return authors.size();
}

}  // namespace

std::vector<FeatureVector> ExtractProblemFeatures(
    const FeatureExtractor& extractor,
    std::span<const VerificationProblem> problems, bool gender_feature) {
  std::vector<FeatureVector> out(problems.size());
  ParallelFor(problems.size(), [&](size_t i) {
    const auto& p = problems[i];
    FeatureVector v = extractor.Extract(p.known_text, p.unknown_text);
    if (gender_feature) {
      auto meta_gender = [&](std::string_view key) {
        auto it = p.meta.find(key);
        const auto g = it == p.meta.end() ? std::nullopt : ParseGender(it->second);
        if (!g) {
          throw DataError(fmt::format("problem '{}' lacks '{}' metadata",
                                      p.problem_id, key));
        }
        return *g;
      };
      v = AppendGender(std::move(v),
                       GenderFeatures::From(meta_gender(meta_key::kGenderKnown),
                                            meta_gender(meta_key::kGenderUnknown)));
    }
    out[i] = std::move(v);
  });
  return out;
}

ExperimentResult RunExperiment(const ExperimentConfig& cfg) {
  cfg.Validate();
  const FeatureExtractor extractor =
      cfg.function_words ? FeatureExtractor::FromWordList(*cfg.function_words)
                         : FeatureExtractor();

  std::optional<std::string> train_topic = cfg.train_topic;
  std::optional<std::string> test_topic =
      cfg.topic_mode == TopicMode::kCrossTopic ? cfg.test_topic : cfg.train_topic;
  const fs::path test_path = cfg.test_corpus.value_or(cfg.train_corpus);
  const auto test_entities =
      cfg.test_corpus ? cfg.test_entities : cfg.train_entities;

  Source train_src;
  Source test_src;
  bool shared = false;
  try {
    train_src = LoadSource(cfg, cfg.train_corpus, cfg.train_entities, train_topic);
    shared = test_path == cfg.train_corpus && test_topic == train_topic;
    if (!shared) test_src = LoadSource(cfg, test_path, test_entities, test_topic);
  } catch (const Error& e) {
    throw WithContext(e, fmt::format("experiment '{}'", cfg.name));
  }
  const Source& test_source = shared ? train_src : test_src;

  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) {
    throw IoError(fmt::format("cannot create '{}': {}",
                              cfg.output_dir.string(), ec.message()));
  }

  ExperimentResult result;
  for (int budget : cfg.word_budgets) {
    try {
      const SplitSpec spec{cfg.train_fraction, cfg.seed};
      const auto train_all = Build(cfg, train_src, budget);
      Split split = SplitProblems(train_all, spec);
      if (!shared) {
        split.test = SplitProblems(Build(cfg, test_source, budget), spec).test;
      }

      std::vector<Label> train_labels;
      for (const auto& p : split.train) train_labels.push_back(*p.truth);
      TruthMap truth;
      for (const auto& p : split.test) truth.emplace(p.problem_id, *p.truth);

      const auto train_x = ExtractProblemFeatures(extractor, split.train, cfg.gender_feature);
      const auto test_x = ExtractProblemFeatures(extractor, split.test, cfg.gender_feature);
      ModelParams params = cfg.model;
      params.seed = cfg.seed;
      if (cfg.grid_search) params = GridSearch(train_x, train_labels, params);
      const TrainedModel model = Train(train_x, train_labels, params);

      std::vector<Verdict> verdicts;
      verdicts.reserve(split.test.size());
      for (size_t i = 0; i < split.test.size(); ++i) {
        verdicts.push_back(Predict(model, test_x[i], split.test[i].problem_id));
      }
      const auto test_ids = Ids(split.test);
      const auto baseline = RandomBaseline(
          test_ids, DeriveSeed(cfg.seed, fmt::format("baseline-{}", budget)));

      ResultRow row;
      row.system = "model";
      row.word_budget = budget;
      row.author_count = DistinctAuthors(split);
      row.train_problems = split.train.size();
      row.test_problems = split.test.size();
      row.report = Evaluate(verdicts, truth);
      ResultRow base_row = row;
      base_row.system = "baseline";
      base_row.report = Evaluate(baseline, truth);
      if (row.report.correct + row.report.incorrect + row.report.unanswered !=
          row.test_problems) {
        throw InvariantError("C + I + U differs from the test problem count");
      }

      const fs::path dir = cfg.output_dir / fmt::format("budget_{}", budget);
      fs::create_directories(dir, ec);
      if (ec) throw IoError(fmt::format("cannot create '{}'", dir.string()));
      WriteAnswers(verdicts, dir / "answers.txt");
      WriteAnswers(baseline, dir / "baseline_answers.txt");
      WriteTruth(split.test, dir / "truth.txt");
      WriteReport(row.report, dir / "report.json");
      WriteReport(base_row.report, dir / "baseline_report.json");
      WriteSplitManifest(MakeManifest(split), dir / "splits.json");
      SaveModel(model, dir / "model.json");
      WriteFeatureCsv(dir / "features_train.csv", Ids(split.train), train_x);
      WriteFeatureCsv(dir / "features_test.csv", test_ids, test_x);
      if (cfg.write_problems) {
        WriteProblems(split.train, dir / "problems_train");
        WriteProblems(split.test, dir / "problems_test");
      }
      result.rows.push_back(std::move(row));
      result.baseline_rows.push_back(std::move(base_row));
    } catch (const Error& e) {
      throw WithContext(e, fmt::format("experiment '{}', budget {}", cfg.name,
                                       budget));
    }
  }
  WriteFile(cfg.output_dir / "results.csv", FormatResultsCsv(result));
  WriteFile(cfg.output_dir / "results.txt", FormatResultsTable(result));
  return result;
}

double CompareToBaseline(const EvalReport& report, const EvalReport& baseline) {
  if (report.n != baseline.n) {
    throw DataError(fmt::format("cannot compare reports over {} and {} problems",
                                report.n, baseline.n));
  }
  return report.combined - baseline.combined;
}

// ---------------------------------------------------------------------------
// Tables and charts

namespace {

constexpr std::string_view kCsvHeader =
    "system,word_budget,author_count,train_problems,test_problems,correct,"
    "incorrect,unanswered,c_at_1,auc,combined";

std::vector<const ResultRow*> Interleaved(const ExperimentResult& r) {
  std::vector<const ResultRow*> rows;
  for (size_t i = 0; i < std::max(r.rows.size(), r.baseline_rows.size()); ++i) {
    if (i < r.rows.size()) rows.push_back(&r.rows[i]);
    if (i < r.baseline_rows.size()) rows.push_back(&r.baseline_rows[i]);
  }
  return rows;
}

std::string XmlEscape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string FormatResultsCsv(const ExperimentResult& result) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const ResultRow* row : Interleaved(result)) {
    const EvalReport& r = row->report;
    out += fmt::format("{},{},{},{},{},{},{},{},{:.6f},{:.6f},{:.6f}\n",
                       row->system, row->word_budget, row->author_count,
                       row->train_problems, row->test_problems, r.correct,
                       r.incorrect, r.unanswered, r.c_at_1, r.auc, r.combined);
  }
  return out;
}

std::string FormatResultsTable(const ExperimentResult& result) {
  std::string out = fmt::format(
      "{:<9} {:>6} {:>5} {:>6} {:>5} {:>4} {:>4} {:>4} {:>6} {:>6} {:>6}\n",
      "system", "W/A", "Auth", "Train", "Test", "C", "I", "U", "c@1", "AUC",
      "*");
  for (const ResultRow* row : Interleaved(result)) {
    const EvalReport& r = row->report;
    out += fmt::format(
        "{:<9} {:>6} {:>5} {:>6} {:>5} {:>4} {:>4} {:>4} {:>6.3f} {:>6.3f} "
        "{:>6.3f}\n",
        row->system, row->word_budget, row->author_count, row->train_problems,
        row->test_problems, r.correct, r.incorrect, r.unanswered, r.c_at_1,
        r.auc, r.combined);
  }
  return out;
}

ExperimentResult ParseResultsCsv(std::string_view csv) {
  ExperimentResult result;
  std::istringstream in{std::string(csv)};
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != kCsvHeader) throw DataError("results.csv: unexpected header");
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 11) {
      throw DataError(fmt::format("results.csv:{}: expected 11 columns", line_no));
    }
    ResultRow row;
    try {
      row.system = cells[0];
      row.word_budget = std::stoi(cells[1]);
      row.author_count = std::stoul(cells[2]);
      row.train_problems = std::stoul(cells[3]);
      row.test_problems = std::stoul(cells[4]);
      row.report.correct = std::stoul(cells[5]);
      row.report.incorrect = std::stoul(cells[6]);
      row.report.unanswered = std::stoul(cells[7]);
      row.report.c_at_1 = std::stod(cells[8]);
      row.report.auc = std::stod(cells[9]);
      row.report.combined = std::stod(cells[10]);
    } catch (const std::exception&) {
      throw DataError(fmt::format("results.csv:{}: bad number", line_no));
    }
    row.report.n = row.test_problems;
    if (row.system == "model") {
      result.rows.push_back(std::move(row));
    } else if (row.system == "baseline") {
      result.baseline_rows.push_back(std::move(row));
    } else {
      throw DataError(fmt::format("results.csv:{}: unknown system '{}'",
                                  line_no, row.system));
    }
  }
  return result;
}

std::string RenderResultsSvg(const ExperimentResult& result,
                             std::string_view title) {
  constexpr double kWidth = 640, kHeight = 400;
  constexpr double kLeft = 60, kRight = 150, kTop = 40, kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  std::vector<int> budgets;
  for (const auto& r : result.rows) budgets.push_back(r.word_budget);
  for (const auto& r : result.baseline_rows) budgets.push_back(r.word_budget);
  std::sort(budgets.begin(), budgets.end());
  budgets.erase(std::unique(budgets.begin(), budgets.end()), budgets.end());
  const double lo = budgets.empty() ? 0 : budgets.front();
  const double hi = budgets.empty() ? 1 : budgets.back();
  auto px = [&](double b) {
    return hi > lo ? kLeft + (b - lo) / (hi - lo) * plot_w : kLeft + plot_w / 2;
  };
  auto py = [&](double v) { return kTop + (1.0 - v) * plot_h; };

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{2}\" y=\"24\" font-size=\"15\">{3}</text>\n",
      kWidth, kHeight, kLeft, XmlEscape(title));
  for (int k = 0; k <= 5; ++k) {
    const double v = k / 5.0;
    svg += fmt::format(
        "<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" "
        "stroke=\"#ddd\"/>\n<text x=\"{3:.1f}\" y=\"{4:.1f}\" "
        "text-anchor=\"end\">{5:.1f}</text>\n",
        kLeft, py(v), kLeft + plot_w, kLeft - 8, py(v) + 4, v);
  }
  for (int b : budgets) {
    svg += fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n",
        px(b), kTop + plot_h + 18, b);
  }
  svg += fmt::format(
      "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">words per "
      "author</text>\n",
      kLeft + plot_w / 2, kHeight - 10);
  svg += fmt::format(
      "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" "
      "fill=\"none\" stroke=\"#333\"/>\n",
      kLeft, kTop, plot_w, plot_h);

  struct Series {
    std::string_view label;
    std::string_view color;
    bool dashed;
    const std::vector<ResultRow>* rows;
    double EvalReport::*metric;
  };
  const Series series[] = {
      {"c@1", "#1f77b4", false, &result.rows, &EvalReport::c_at_1},
      {"AUC", "#2ca02c", false, &result.rows, &EvalReport::auc},
      {"c@1 x AUC", "#d62728", false, &result.rows, &EvalReport::combined},
      {"baseline c@1 x AUC", "#7f7f7f", true, &result.baseline_rows,
       &EvalReport::combined},
  };
  double legend_y = kTop + 10;
  for (const Series& s : series) {
    std::string points;
    for (const auto& r : *s.rows) {
      if (!points.empty()) points += ' ';
      points += fmt::format("{:.1f},{:.1f}", px(r.word_budget),
                            py(r.report.*s.metric));
    }
    if (!s.rows->empty()) {
      svg += fmt::format(
          "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" "
          "stroke-width=\"2\"{}/>\n",
          points, s.color, s.dashed ? " stroke-dasharray=\"6 4\"" : "");
      for (const auto& r : *s.rows) {
        svg += fmt::format(
            "<circle cx=\"{:.1f}\" cy=\"{:.1f}\" r=\"3\" fill=\"{}\"/>\n",
            px(r.word_budget), py(r.report.*s.metric), s.color);
      }
    }
    svg += fmt::format(
        "<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" "
        "stroke=\"{3}\" stroke-width=\"2\"{4}/>\n<text x=\"{5:.1f}\" "
        "y=\"{6:.1f}\">{7}</text>\n",
        kLeft + plot_w + 12, legend_y, kLeft + plot_w + 32, s.color,
        s.dashed ? " stroke-dasharray=\"6 4\"" : "", kLeft + plot_w + 38,
        legend_y + 4, s.label);
    legend_y += 20;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace avkit
