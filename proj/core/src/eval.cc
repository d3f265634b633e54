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

#include "avkit/eval.h"

#include <algorithm>
#include <numeric>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "avkit/error.h"

namespace avkit {

double CAt1(size_t correct, size_t unanswered, size_t n) {
  if (n == 0) throw DataError("c@1 is undefined for zero problems");
  if (correct + unanswered > n) {
    throw DataError(fmt::format("c@1: correct ({}) + unanswered ({}) exceeds "
                                "n ({})", correct, unanswered, n));
  }
  const double nd = static_cast<double>(n);
  const double c = static_cast<double>(correct);
  return (c + static_cast<double>(unanswered) * c / nd) / nd;
}

double Auc(std::span<const double> scores, std::span<const Label> truths) {
  if (scores.size() != truths.size()) {
    throw DataError("AUC: score and truth counts differ");
  }
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return scores[a] < scores[b]; });

  // Twice the pair count, so that ties stay integral.
  unsigned long long twice_wins = 0;
  unsigned long long negatives_below = 0;
  unsigned long long positives = 0;
  unsigned long long negatives = 0;
  for (size_t i = 0; i < order.size();) {
    size_t j = i;
    unsigned long long pos = 0;
    unsigned long long neg = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      (truths[order[j]] == Label::kYes ? pos : neg) += 1;
      ++j;
    }
    twice_wins += pos * (2 * negatives_below + neg);
    negatives_below += neg;
    positives += pos;
    negatives += neg;
    i = j;
  }
  if (positives == 0 || negatives == 0) {
    throw DataError("AUC needs both positive and negative problems");
  }
  return static_cast<double>(twice_wins) / 2.0 /
         (static_cast<double>(positives) * static_cast<double>(negatives));
}

EvalReport Evaluate(std::span<const Verdict> verdicts, const TruthMap& truth) {
  EvalReport r;
  std::vector<double> scores;
  std::vector<Label> labels;
  scores.reserve(verdicts.size());
  labels.reserve(verdicts.size());
  for (const auto& v : verdicts) {
    auto it = truth.find(v.problem_id);
    if (it == truth.end()) {
      throw DataError(fmt::format("no truth for problem '{}'", v.problem_id));
    }
    if (v.answer == Answer::kUnanswered) {
      ++r.unanswered;
    } else if ((v.answer == Answer::kYes) == (it->second == Label::kYes)) {
      ++r.correct;
    } else {
      ++r.incorrect;
    }
    scores.push_back(v.score);
    labels.push_back(it->second);
  }
  r.n = verdicts.size();
  r.c_at_1 = CAt1(r.correct, r.unanswered, r.n);
  r.auc = Auc(scores, labels);
  r.combined = r.c_at_1 * r.auc;
  return r;
}

std::string ToJson(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["correct"] = r.correct;
  j["incorrect"] = r.incorrect;
  j["unanswered"] = r.unanswered;
  j["c_at_1"] = r.c_at_1;
  j["auc"] = r.auc;
  j["combined"] = r.combined;
  return j.dump(2) + "\n";
}

void WriteReport(const EvalReport& report, const std::filesystem::path& path) {
  WriteFile(path, ToJson(report));
}

}  // namespace avkit
