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

// avkit: authorship verification toolkit command line.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "avkit/builder.h"
#include "avkit/classifier.h"
#include "avkit/corpus.h"
#include "avkit/error.h"
#include "avkit/eval.h"
#include "avkit/features.h"
#include "avkit/preprocess.h"
#include "avkit/runner.h"
#include "avkit/synthetic.h"

namespace fs = std::filesystem;

namespace avkit {
namespace {

struct Globals {
  uint64_t seed = 0;
  bool seed_set = false;
  std::optional<fs::path> config;
  std::optional<fs::path> output_dir;

  fs::path Out(const std::optional<fs::path>& explicit_path,
               std::string_view default_name) const {
    if (explicit_path) return *explicit_path;
    return output_dir.value_or(".") / default_name;
  }
  fs::path OutDir() const { return output_dir.value_or("."); }

  // Settings from --config, when one is given; flags override them.
  ExperimentConfig Config() const {
    return config ? LoadExperimentConfig(*config) : ExperimentConfig{};
  }
  uint64_t Seed(const ExperimentConfig& cfg) const {
    return seed_set ? seed : cfg.seed;
  }
};

void PrintCorpusSummary(const Corpus& c) {
  fmt::print("corpus   {}\n", c.name);
  fmt::print("authors  {}\n", c.authors.size());
  fmt::print("docs     {}\n", c.DocumentCount());
  fmt::print("words    {}\n", c.WordCount());
  fmt::print("topic    {}\n", c.topic.value_or("-"));
  fmt::print("genre    {}\n", ToString(c.genre));
}

FeatureExtractor MakeExtractor(const std::optional<fs::path>& words) {
  return words ? FeatureExtractor::FromWordList(*words) : FeatureExtractor();
}

std::vector<std::string> ProblemIds(const std::vector<VerificationProblem>& ps) {
  std::vector<std::string> ids;
  for (const auto& p : ps) ids.push_back(p.problem_id);
  return ids;
}

void EnsureDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError(fmt::format("cannot create '{}': {}", dir.string(),
                              ec.message()));
  }
}

void EnsureParent(const fs::path& file) {
  if (file.has_parent_path()) EnsureDir(file.parent_path());
}

int Run(int argc, char** argv) {
  CLI::App app{"avkit: stylometric authorship verification"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  auto* seed_opt = app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--config", g.config, "Experiment config (TOML or JSON)")
      ->check(CLI::ExistingFile);
  app.add_option("--output-dir", g.output_dir, "Directory for outputs");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Validate a JSONL corpus");
  fs::path ingest_in;
  std::optional<fs::path> ingest_out;
  bool ingest_filter_up = false;
  ingest->add_option("corpus", ingest_in, "Corpus JSONL")->required();
  ingest->add_option("-o,--write", ingest_out, "Write the normalized corpus");
  ingest->add_flag("--filter-up", ingest_filter_up,
                   "Drop comments consisting only of \"up\"");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  SyntheticConfig synth_cfg;
  std::optional<fs::path> synth_out;
  std::string synth_topics;
  std::string synth_genre = "forum";
  synth->add_option("-o,--output", synth_out, "Output JSONL");
  synth->add_option("--name", synth_cfg.name);
  synth->add_option("--authors", synth_cfg.authors)->check(CLI::PositiveNumber);
  synth->add_option("--docs", synth_cfg.docs_per_author)
      ->check(CLI::PositiveNumber);
  synth->add_option("--min-words", synth_cfg.min_doc_words)
      ->check(CLI::PositiveNumber);
  synth->add_option("--max-words", synth_cfg.max_doc_words)
      ->check(CLI::PositiveNumber);
  synth->add_option("--vocabulary", synth_cfg.vocabulary)
      ->check(CLI::PositiveNumber);
  synth->add_option("--topics", synth_topics, "Comma-separated topics");
  synth->add_option("--genre", synth_genre);

  // build
  auto* build = app.add_subcommand("build", "Build verification problems");
  fs::path build_in;
  int build_budget = 0;
  std::optional<std::string> build_gender;
  std::optional<std::string> build_topic;
  std::optional<std::string> build_prefix;
  std::optional<double> build_fraction;
  std::optional<fs::path> build_splits_from;
  bool build_no_split = false;
  bool build_keep_up = false;
  build->add_option("corpus", build_in, "Corpus JSONL")->required();
  build->add_option("--budget", build_budget, "Words per author (even)")
      ->required();
  build->add_option("--gender-setting", build_gender,
                    "female_only, male_only or mixed");
  build->add_option("--topic", build_topic, "Keep only documents on a topic");
  build->add_option("--prefix", build_prefix, "Problem id prefix");
  build->add_option("--train-fraction", build_fraction);
  build->add_option("--splits-from", build_splits_from,
                    "Reuse a splits.json manifest");
  build->add_flag("--no-split", build_no_split,
                  "Write all problems to one directory");
  build->add_flag("--keep-up", build_keep_up, "Keep \"up\" comments");

  // mask
  auto* mask = app.add_subcommand("mask", "Mask named entities");
  fs::path mask_in;
  fs::path mask_entities;
  std::optional<fs::path> mask_out;
  mask->add_option("corpus", mask_in, "Corpus JSONL")->required();
  mask->add_option("--entities", mask_entities, "Entity annotations JSONL")
      ->required();
  mask->add_option("-o,--output", mask_out, "Masked corpus JSONL");

  // bleach
  auto* bleach = app.add_subcommand("bleach", "Bleach problem texts");
  fs::path bleach_in;
  std::string bleach_features = "shape,puncta,length,frequency";
  std::optional<fs::path> bleach_table;
  std::optional<fs::path> bleach_corpus;
  std::optional<fs::path> bleach_emit;
  std::optional<fs::path> bleach_out;
  double bleach_base = BleachConfig{}.log_base;
  bleach->add_option("problems", bleach_in, "PAN problem directory")->required();
  bleach->add_option("--features", bleach_features, "Comma-separated fields");
  bleach->add_option("--frequency-table", bleach_table, "Load token counts TSV");
  bleach->add_option("--corpus", bleach_corpus,
                     "Count token frequencies over this corpus");
  bleach->add_option("--emit-frequency", bleach_emit,
                     "Write the frequency table used");
  bleach->add_option("--log-base", bleach_base);
  bleach->add_option("-o,--output", bleach_out, "Output problem directory");

  // train
  auto* train = app.add_subcommand("train", "Train a verifier");
  fs::path train_in;
  std::optional<fs::path> train_out;
  std::optional<double> train_c;
  std::optional<double> train_gamma;
  std::optional<double> train_eps;
  bool train_grid = false;
  bool train_gender = false;
  std::optional<fs::path> train_words;
  std::optional<fs::path> train_csv;
  train->add_option("problems", train_in, "PAN directory with truth.txt")
      ->required();
  train->add_option("-o,--model", train_out, "Model JSON");
  train->add_option("--C", train_c);
  train->add_option("--gamma", train_gamma);
  train->add_option("--abstain-epsilon", train_eps);
  train->add_flag("--grid-search", train_grid);
  train->add_flag("--gender-feature", train_gender);
  train->add_option("--function-words", train_words);
  train->add_option("--features-csv", train_csv, "Dump raw feature vectors");

  // predict
  auto* predict = app.add_subcommand("predict", "Score problems with a model");
  fs::path predict_model;
  fs::path predict_in;
  std::optional<fs::path> predict_out;
  std::optional<fs::path> predict_words;
  predict->add_option("model", predict_model, "Model JSON")->required();
  predict->add_option("problems", predict_in, "PAN directory")->required();
  predict->add_option("-o,--answers", predict_out, "answers.txt");
  predict->add_option("--function-words", predict_words);

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Score answers against truth");
  fs::path eval_answers;
  fs::path eval_truth;
  std::optional<fs::path> eval_out;
  double eval_eps = 0.0;
  evaluate->add_option("answers", eval_answers, "answers.txt")->required();
  evaluate->add_option("truth", eval_truth, "truth.txt")->required();
  evaluate->add_option("-o,--report", eval_out, "Report JSON");
  evaluate->add_option("--abstain-epsilon", eval_eps);

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run an experiment grid");
  std::optional<fs::path> experiment_cfg;
  experiment->add_option("config", experiment_cfg, "Experiment config")
      ->check(CLI::ExistingFile);

  // report
  auto* report = app.add_subcommand("report", "Render a results table");
  fs::path report_in;
  std::optional<fs::path> report_svg;
  std::string report_title = "avkit results";
  report->add_option("results", report_in, "results.csv")->required();
  report->add_option("--svg", report_svg, "Write a score-vs-budget chart");
  report->add_option("--title", report_title);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ErrorKind::kUsage);
  }
  g.seed_set = seed_opt->count() > 0;

  if (ingest->parsed()) {
    Corpus c = IngestCorpus(ingest_in);
    if (ingest_filter_up) c = FilterUpComments(std::move(c));
    PrintCorpusSummary(c);
    if (ingest_out) {
      EnsureParent(*ingest_out);
      WriteCorpus(c, *ingest_out);
    }
  } else if (synth->parsed()) {
    synth_cfg.seed = g.seed_set ? g.seed : synth_cfg.seed;
    if (!synth_topics.empty()) {
      std::string cur;
      for (char ch : synth_topics + ",") {
        if (ch == ',') {
          if (!cur.empty()) synth_cfg.topics.push_back(cur);
          cur.clear();
        } else {
          cur.push_back(ch);
        }
      }
    }
    const auto genre = ParseGenre(synth_genre);
    if (!genre) throw UsageError(fmt::format("unknown genre '{}'", synth_genre));
    synth_cfg.genre = *genre;
    if (synth_cfg.min_doc_words > synth_cfg.max_doc_words) {
      throw UsageError("--min-words exceeds --max-words");
    }
    const Corpus c = GenerateSyntheticCorpus(synth_cfg);
    const fs::path out = g.Out(synth_out, synth_cfg.name + ".jsonl");
    EnsureParent(out);
    WriteCorpus(c, out);
    PrintCorpusSummary(c);
  } else if (build->parsed()) {
    const ExperimentConfig cfg = g.Config();
    Corpus c = IngestCorpus(build_in);
    if (!build_keep_up && cfg.filter_up_comments) {
      c = FilterUpComments(std::move(c));
    }
    BuildConfig bc;
    bc.word_budget = build_budget;
    bc.gender_setting = cfg.gender_setting;
    if (build_gender) {
      const auto gs = ParseGenderSetting(*build_gender);
      if (!gs) {
        throw UsageError(fmt::format("unknown gender setting '{}'",
                                     *build_gender));
      }
      bc.gender_setting = *gs;
    }
    bc.topic_filter = build_topic ? build_topic : cfg.train_topic;
    bc.seed = g.Seed(cfg);
    if (build_prefix) bc.id_prefix = *build_prefix;
    const auto problems = BuildProblems(c, bc);
    const fs::path dir = g.OutDir();
    if (build_no_split) {
      WriteProblems(problems, dir / "problems");
      fmt::print("{} problems\n", problems.size());
    } else {
      const Split split =
          build_splits_from
              ? ApplySplitManifest(problems,
                                   ReadSplitManifest(*build_splits_from))
              : SplitProblems(problems,
                              SplitSpec{build_fraction.value_or(
                                            cfg.train_fraction),
                                        bc.seed});
      WriteProblems(split.train, dir / "train");
      WriteProblems(split.test, dir / "test");
      WriteSplitManifest(MakeManifest(split), dir / "splits.json");
      fmt::print("{} problems: {} train, {} test\n", problems.size(),
                 split.train.size(), split.test.size());
    }
  } else if (mask->parsed()) {
    Corpus c = IngestCorpus(mask_in);
    c = MaskCorpus(std::move(c),
                   AnnotationTagger(ReadEntityAnnotations(mask_entities)));
    const fs::path out = g.Out(mask_out, c.name + ".masked.jsonl");
    EnsureParent(out);
    WriteCorpus(c, out);
  } else if (bleach->parsed()) {
    auto problems = ReadProblems(bleach_in);
    BleachConfig bc;
    bc.features = ParseBleachFeatures(bleach_features);
    bc.log_base = bleach_base;
    if (bleach_table) {
      bc.frequency_table = ReadFrequencyTable(*bleach_table);
    } else if (bleach_corpus) {
      bc.frequency_table = BuildFrequencyTable(IngestCorpus(*bleach_corpus));
    } else {
      for (const auto& p : problems) {
        AddToFrequencyTable(p.known_text, bc.frequency_table);
        AddToFrequencyTable(p.unknown_text, bc.frequency_table);
      }
    }
    if (bleach_emit) {
      EnsureParent(*bleach_emit);
      WriteFrequencyTable(bc.frequency_table, *bleach_emit);
    }
    problems = BleachProblems(std::move(problems), bc);
    WriteProblems(problems, g.Out(bleach_out, "bleached"));
  } else if (train->parsed()) {
    const ExperimentConfig cfg = g.Config();
    const auto problems = ReadProblems(train_in);
    std::vector<Label> labels;
    for (const auto& p : problems) {
      if (!p.truth) {
        throw DataError(fmt::format("problem '{}' has no truth label",
                                    p.problem_id));
      }
      labels.push_back(*p.truth);
    }
    const bool gender = train_gender || cfg.gender_feature;
    const auto words = train_words ? train_words : cfg.function_words;
    const auto x = ExtractProblemFeatures(MakeExtractor(words), problems, gender);
    ModelParams params = cfg.model;
    params.seed = g.Seed(cfg);
    if (train_c) params.C = *train_c;
    if (train_gamma) params.gamma = *train_gamma;
    if (train_eps) params.abstain_epsilon = *train_eps;
    params.Validate();
    if (train_grid || cfg.grid_search) params = GridSearch(x, labels, params);
    const TrainedModel model = Train(x, labels, params);
    const fs::path out = g.Out(train_out, "model.json");
    EnsureParent(out);
    SaveModel(model, out);
    if (train_csv) {
      EnsureParent(*train_csv);
      WriteFeatureCsv(*train_csv, ProblemIds(problems), x);
    }
    fmt::print("trained on {} problems, {} support vectors, C={} gamma={:.6g}{}\n",
               problems.size(), model.support_vectors.size(), model.params.C,
               model.gamma, model.converged ? "" : " (iteration cap reached)");
  } else if (predict->parsed()) {
    const ExperimentConfig cfg = g.Config();
    const TrainedModel model = LoadModel(predict_model);
    const auto problems = ReadProblems(predict_in);
    const bool gender = model.feature_names.size() == kFullFeatureCount;
    const auto words = predict_words ? predict_words : cfg.function_words;
    const auto x = ExtractProblemFeatures(MakeExtractor(words), problems, gender);
    std::vector<Verdict> verdicts;
    for (size_t i = 0; i < problems.size(); ++i) {
      verdicts.push_back(Predict(model, x[i], problems[i].problem_id));
    }
    const fs::path out = g.Out(predict_out, "answers.txt");
    EnsureParent(out);
    WriteAnswers(verdicts, out);
  } else if (evaluate->parsed()) {
    const auto verdicts = ReadAnswers(eval_answers, eval_eps);
    const EvalReport r = Evaluate(verdicts, ReadTruth(eval_truth));
    const std::string json = ToJson(r);
    if (eval_out) {
      EnsureParent(*eval_out);
      WriteFile(*eval_out, json);
    }
    std::cout << json;
  } else if (experiment->parsed()) {
    const auto path = experiment_cfg ? experiment_cfg : g.config;
    if (!path) throw UsageError("experiment needs a config file");
    ExperimentConfig cfg = LoadExperimentConfig(*path);
    if (g.seed_set) cfg.seed = g.seed;
    if (g.output_dir) cfg.output_dir = *g.output_dir;
    const ExperimentResult result = RunExperiment(cfg);
    std::cout << FormatResultsTable(result);
  } else if (report->parsed()) {
    const ExperimentResult result = ParseResultsCsv(ReadFile(report_in));
    std::cout << FormatResultsTable(result);
    if (report_svg) {
      EnsureParent(*report_svg);
      WriteFile(*report_svg, RenderResultsSvg(result, report_title));
    }
  }
  return 0;
}

}  // namespace
}  // namespace avkit

int main(int argc, char** argv) {
  try {
    return avkit::Run(argc, argv);
  } catch (const avkit::Error& e) {
    std::cerr << "avkit: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "avkit: internal error: " << e.what() << "\n";
    return static_cast<int>(avkit::ErrorKind::kInvariant);
  }
}
