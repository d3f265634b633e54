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

#ifndef AVKIT_RUNNER_H_
#define AVKIT_RUNNER_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "avkit/builder.h"
#include "avkit/classifier.h"
#include "avkit/eval.h"
#include "avkit/features.h"
#include "avkit/preprocess.h"

namespace avkit {

enum class TopicMode { kSameTopic, kDifferentTopic, kCrossTopic };
enum class Preprocessing { kRaw, kMasked, kBleached };

std::string_view ToString(TopicMode m);
std::string_view ToString(Preprocessing p);

// One declarative file fully determines a run. Cross-genre runs are
// expressed by naming a test_corpus.
struct ExperimentConfig {
  std::string name = "experiment";
  std::filesystem::path train_corpus;
  std::optional<std::filesystem::path> test_corpus;
  TopicMode topic_mode = TopicMode::kDifferentTopic;
  std::optional<std::string> train_topic;
  std::optional<std::string> test_topic;
  GenderSetting gender_setting = GenderSetting::kMixed;
  bool gender_feature = false;
  std::vector<int> word_budgets = {400, 1000, 2000, 3000};
  Preprocessing preprocessing = Preprocessing::kRaw;
  // Entity annotations for masking, per corpus.
  std::optional<std::filesystem::path> train_entities;
  std::optional<std::filesystem::path> test_entities;
  std::vector<BleachFeature> bleach_features = BleachConfig{}.features;
  // Shared frequency table; otherwise one is built per corpus.
  std::optional<std::filesystem::path> frequency_table;
  double bleach_log_base = BleachConfig{}.log_base;
  std::optional<std::filesystem::path> function_words;
  bool filter_up_comments = true;
  double train_fraction = 0.70;
  ModelParams model;
  bool grid_search = false;
  bool write_problems = false;
  uint64_t seed = 0;
  std::filesystem::path output_dir = "results";

  void Validate() const;
};

// Parses a .toml or .json config (chosen by extension, TOML otherwise
// sniffed by a leading '{'). Relative paths resolve against the file's
// directory.
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path);
ExperimentConfig ParseExperimentConfig(std::string_view content, bool is_toml,
                                       const std::filesystem::path& base_dir);

// Features for every problem, extracted in parallel. With `gender_feature`
// the three gender columns come from the problems' meta entries.
std::vector<FeatureVector> ExtractProblemFeatures(
    const FeatureExtractor& extractor,
    std::span<const VerificationProblem> problems, bool gender_feature);

struct ResultRow {
  std::string system;  // "model" or "baseline"
  int word_budget = 0;
  size_t author_count = 0;
  size_t train_problems = 0;
  size_t test_problems = 0;
  EvalReport report;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;           // one per budget
  std::vector<ResultRow> baseline_rows;  // one per budget
};

// For every budget: build problems, preprocess, extract and scale features,
// train, predict the test split and evaluate, alongside a random baseline.
// Writes per-budget artifacts under output_dir/budget_<b>/ and the
// results.csv / results.txt tables.
ExperimentResult RunExperiment(const ExperimentConfig& cfg);

// Combined-score margin of the model over the baseline.
double CompareToBaseline(const EvalReport& report, const EvalReport& baseline);

std::string FormatResultsCsv(const ExperimentResult& result);
std::string FormatResultsTable(const ExperimentResult& result);
ExperimentResult ParseResultsCsv(std::string_view csv);
// Score-versus-budget line chart.
std::string RenderResultsSvg(const ExperimentResult& result,
                             std::string_view title);

}  // namespace avkit

#endif  // AVKIT_RUNNER_H_
