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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "avkit/builder.h"
#include "avkit/classifier.h"
#include "avkit/corpus.h"
#include "avkit/eval.h"
#include "avkit/preprocess.h"
#include "avkit/random.h"
#include "avkit/runner.h"
#include "avkit/synthetic.h"
#include "avkit/text.h"
#include "datasets.h"
#include "fuzz_corpus.h"
#include "temp_dir.h"

namespace avkit {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

// A criterion returns an empty string on success, else the failure detail.
// Measurements go into `info`.
using Check = std::function<std::string(std::string& info)>;

std::string Near(std::string_view what, double got, double want, double tol) {
  if (std::fabs(got - want) <= tol) return {};
  return fmt::format("{} = {:.6f}, want {:.3f} +- {}", what, got, want, tol);
}

std::string Ac1(std::string& info) {
  // (correct, unanswered, n) counts of reference result rows
  struct Row {
    size_t c, u, n;
    double want;
  };
  const Row rows[] = {
      {28, 0, 29, 0.966}, {47, 1, 69, 0.691}, {33, 0, 39, 0.846},
      {43, 0, 54, 0.796}};
  for (const Row& r : rows) {
    const double got = CAt1(r.c, r.u, r.n);
    info += fmt::format("c@1({},{},{})={:.4f} ", r.c, r.u, r.n, got);
    if (auto e = Near(fmt::format("c@1({},{},{})", r.c, r.u, r.n), got,
                      r.want, 0.0005);
        !e.empty()) {
      return e;
    }
  }
  const double combined = 0.967 * 0.995;
  info += fmt::format("combined={:.4f}", combined);
  return Near("0.967 x 0.995", combined, 0.962, 0.0005);
}

double BruteForceAuc(const std::vector<double>& s, const std::vector<Label>& t) {
  long long twice = 0;
  long long pairs = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (t[i] != Label::kYes) continue;
    for (size_t j = 0; j < s.size(); ++j) {
      if (t[j] != Label::kNo) continue;
      ++pairs;
      twice += s[i] > s[j] ? 2 : (s[i] == s[j] ? 1 : 0);
    }
  }
  return static_cast<double>(twice) / (2.0 * static_cast<double>(pairs));
}

std::string Ac2(std::string& info) {
  Rng rng(500);
  for (int trial = 0; trial < 500; ++trial) {
    const size_t n = 2 + rng.Below(199);
    std::vector<double> s(n);
    std::vector<Label> t(n);
    const uint64_t grid = trial % 3 == 0 ? 4 : (trial % 3 == 1 ? 50 : 1u << 30);
    for (size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng.Below(grid)) / static_cast<double>(grid);
      t[i] = rng.Bernoulli(0.5) ? Label::kYes : Label::kNo;
    }
    // both classes present
    const size_t i = rng.Below(n);
    t[i] = Label::kYes;
    t[(i + 1 + rng.Below(n - 1)) % n] = Label::kNo;
    const double got = Auc(s, t);
    const double want = BruteForceAuc(s, t);
    if (got != want) {
      return fmt::format("trial {} (n={}): {:.17g} != {:.17g}", trial, n, got,
                         want);
    }
  }
  info = "500 instances, exact";
  return {};
}

std::string Ac3(std::string& info) {
  BleachConfig cfg;
  for (uint64_t count : {400u, 403u}) {
    cfg.frequency_table = {{"House", count}};
    const std::string got = BleachToken("House", cfg);
    if (got != "ULLLL W 05 6") {
      return fmt::format("House (count {}) -> \"{}\"", count, got);
    }
  }
  const char32_t alphabet[] = {U'a', U'Z', U'7', U'.', U',', U'!', U':',
                               U'-', U')', U'(', U'è', U'É', U'😀', U'🚀',
                               U'‍', U'️', U'<', U'3', U'^', U'_',
                               U'@', U'#', U'«', U'ß', U'ø', U'Ω'};
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    std::u32string cps(1 + rng.Below(16), U'a');
    for (auto& c : cps) c = alphabet[rng.Below(std::size(alphabet))];
    const std::string token = text::Encode(cps);
    const size_t got = text::Length(ShapeField(token));
    if (got != cps.size()) {
      return fmt::format("shape of \"{}\" has {} code points, token has {}",
                         token, got, cps.size());
    }
  }
  info = "House -> \"ULLLL W 05 6\", 10000 fuzzed shapes";
  return {};
}

std::string Ac4(std::string& info) {
  Rng rng(4);
  size_t built = 0;
  size_t problems = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const size_t authors = 4 + rng.Below(297);
    const Corpus c = testing::RandomCorpus(rng, authors, 8, 80);
    BuildConfig cfg;
    cfg.word_budget = 2 * static_cast<int>(1 + rng.Below(120));
    cfg.gender_setting = static_cast<GenderSetting>(rng.Below(3));
    cfg.seed = rng.Next();
    std::vector<VerificationProblem> ps;
    try {
      ps = BuildProblems(c, cfg);
    } catch (const DataError&) {
      const Corpus f = FilterCorpus(c, cfg.gender_setting, std::nullopt);
      if (EligibleAuthors(f, cfg.word_budget, cfg.seed).size() >= 4) {
        return fmt::format("trial {}: build failed with 4+ eligible authors",
                           trial);
      }
      continue;
    }
    ++built;
    problems += ps.size();
    if (auto e = testing::CheckProblems(ps, cfg.word_budget); !e.empty()) {
      return fmt::format("trial {}: {}", trial, e);
    }
    for (const auto& p : ps) {
      if (*p.truth == Label::kNo && p.known_author == p.unknown_author) {
        return fmt::format("trial {}: {} pairs an author with itself", trial,
                           p.problem_id);
      }
    }
    if (BuildProblems(c, cfg) != ps) {
      return fmt::format("trial {}: rebuild differs", trial);
    }
  }
  if (built < 500) return fmt::format("only {} corpora were buildable", built);
  info = fmt::format("{} corpora built, {} problems checked", built, problems);
  return {};
}

double Accuracy(const TrainedModel& m, const testing::PointSet& s) {
  size_t ok = 0;
  for (size_t i = 0; i < s.x.size(); ++i) {
    const Verdict v = Predict(m, FeatureVector{s.x[i]});
    ok += (v.answer == Answer::kYes) == (s.y[i] > 0);
  }
  return static_cast<double>(ok) / static_cast<double>(s.x.size());
}

TrainedModel TrainPoints(const testing::PointSet& s) {
  std::vector<FeatureVector> v;
  std::vector<Label> l;
  for (size_t i = 0; i < s.x.size(); ++i) {
    v.push_back(FeatureVector{s.x[i]});
    l.push_back(s.y[i] > 0 ? Label::kYes : Label::kNo);
  }
  return Train(v, l, ModelParams{});
}

std::string Ac5(std::string& info) {
  // libsvm on the same points (tests/oracle/svm_reference.py).
  constexpr double kBlobsObjective = -2.0431744430;
  constexpr double kXorObjective = -12.4911997086;

  const auto blobs = testing::MakeBlobs(40, 40);
  const double blobs_acc = Accuracy(TrainPoints(blobs), blobs);
  if (blobs_acc != 1.0) {
    return fmt::format("blobs training accuracy {:.3f}", blobs_acc);
  }
  const SmoResult r = SolveSmo(blobs.x, blobs.y, 1.0, 0.5, 1e-4, 1000000);
  const auto kkt = KktResiduals(blobs.x, blobs.y, r.alpha, r.bias, 1.0, 0.5);
  const double worst = *std::max_element(kkt.begin(), kkt.end());
  if (worst > 1e-3) return fmt::format("KKT residual {:.2e}", worst);
  if (auto e = Near("blobs objective", r.objective, kBlobsObjective, 1e-4);
      !e.empty()) {
    return e;
  }

  const auto xr = testing::MakeXor(200, 200);
  const double xor_acc = Accuracy(TrainPoints(xr), xr);
  if (xor_acc < 0.9) return fmt::format("XOR training accuracy {:.3f}", xor_acc);
  const SmoResult rx = SolveSmo(xr.x, xr.y, 1.0, 0.5, 1e-4, 1000000);
  if (auto e = Near("XOR objective", rx.objective, kXorObjective, 1e-3);
      !e.empty()) {
    return e;
  }
  info = fmt::format(
      "blobs acc {:.3f} max KKT {:.1e}, XOR acc {:.3f}, objectives {:.6f} / "
      "{:.6f} (reference {:.6f} / {:.6f})",
      blobs_acc, worst, xor_acc, r.objective, rx.objective, kBlobsObjective,
      kXorObjective);
  return {};
}

fs::path SyntheticCorpus(const TempDir& tmp) {
  SyntheticConfig s;
  s.authors = 60;
  s.docs_per_author = 40;
  s.seed = 60;
  const fs::path path = tmp / "synthetic.jsonl";
  WriteCorpus(GenerateSyntheticCorpus(s), path);
  return path;
}

ExperimentConfig SyntheticExperiment(const TempDir& tmp,
                                     std::vector<int> budgets,
                                     std::string_view out) {
  ExperimentConfig cfg;
  cfg.name = "synthetic";
  cfg.train_corpus = SyntheticCorpus(tmp);
  cfg.gender_setting = GenderSetting::kMixed;
  cfg.word_budgets = std::move(budgets);
  cfg.train_fraction = 0.70;
  cfg.seed = 2019;
  cfg.model.seed = cfg.seed;
  cfg.output_dir = tmp.path() / out;
  return cfg;
}

std::string Ac6(std::string& info) {
  TempDir tmp;
  const auto r = RunExperiment(SyntheticExperiment(tmp, {400}, "ac6"));
  const EvalReport& m = r.rows.at(0).report;
  const EvalReport& b = r.baseline_rows.at(0).report;
  const double margin = CompareToBaseline(m, b);
  info = fmt::format(
      "{} train / {} test problems, AUC {:.3f}, c@1 {:.3f}, combined {:.3f}, "
      "baseline {:.3f}, margin {:.3f}",
      r.rows[0].train_problems, r.rows[0].test_problems, m.auc, m.c_at_1,
      m.combined, b.combined, margin);
  if (m.auc < 0.85) return fmt::format("AUC {:.3f} < 0.85", m.auc);
  if (margin < 0.25) return fmt::format("margin {:.3f} < 0.25", margin);
  return {};
}

std::string Ac7(std::string& info) {
  TempDir tmp;
  const auto r =
      RunExperiment(SyntheticExperiment(tmp, {400, 1000, 2000}, "ac7"));
  for (const auto& row : r.rows) {
    info += fmt::format("{}: {:.3f}  ", row.word_budget, row.report.combined);
  }
  const double lo = r.rows.front().report.combined;
  const double hi = r.rows.back().report.combined;
  if (hi < lo) return fmt::format("combined(2000) {:.3f} < combined(400) {:.3f}", hi, lo);
  return {};
}

std::string Ac8(std::string& info) {
  TempDir tmp;
  const fs::path corpus = SyntheticCorpus(tmp);
  WriteFile(tmp / "experiment.toml",
            fmt::format("name = \"determinism\"\n"
                        "train_corpus = \"{}\"\n"
                        "word_budgets = [400, 1000]\n"
                        "preprocessing = \"bleached\"\n"
                        "seed = 7\n",
                        corpus.filename().string()));
  ExperimentConfig cfg = LoadExperimentConfig(tmp / "experiment.toml");
  cfg.output_dir = tmp / "run1";
  RunExperiment(cfg);
  cfg.output_dir = tmp / "run2";
  RunExperiment(cfg);
  size_t files = 0;
  for (const auto& e : fs::recursive_directory_iterator(tmp / "run1")) {
    if (!e.is_regular_file()) continue;
    const fs::path rel = fs::relative(e.path(), tmp / "run1");
    const fs::path other = tmp / "run2" / rel;
    if (!fs::exists(other)) return fmt::format("{} missing in second run", rel.string());
    if (ReadFile(e.path()) != ReadFile(other)) {
      return fmt::format("{} differs between runs", rel.string());
    }
    ++files;
  }
  size_t files2 = 0;
  for (const auto& e : fs::recursive_directory_iterator(tmp / "run2")) {
    files2 += e.is_regular_file();
  }
  if (files != files2) return "runs wrote different file sets";
  info = fmt::format("{} files byte-identical", files);
  return {};
}

}  // namespace
}  // namespace avkit

int main() {
  using avkit::Check;
  struct Criterion {
    const char* name;
    const char* title;
    Check check;
  };
  const Criterion criteria[] = {
      {"AC1", "c@1 and combined score arithmetic", avkit::Ac1},
      {"AC2", "AUC equals brute-force oracle", avkit::Ac2},
      {"AC3", "bleaching golden token and shape length", avkit::Ac3},
      {"AC4", "builder invariants on fuzzed corpora", avkit::Ac4},
      {"AC5", "SMO solver correctness", avkit::Ac5},
      {"AC6", "end-to-end synthetic verification", avkit::Ac6},
      {"AC7", "evidence budget trend", avkit::Ac7},
      {"AC8", "experiment determinism", avkit::Ac8},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    std::string info;
    std::string error;
    const auto start = std::chrono::steady_clock::now();
    try {
      error = c.check(info);
    } catch (const std::exception& e) {
      error = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    if (error.empty()) {
      std::printf("PASS %s %s (%.2fs): %s\n", c.name, c.title, secs,
                  info.c_str());
    } else {
      ++failures;
      std::printf("FAIL %s %s (%.2fs): %s\n", c.name, c.title, secs,
                  error.c_str());
    }
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
