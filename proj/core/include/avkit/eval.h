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

#ifndef AVKIT_EVAL_H_
#define AVKIT_EVAL_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>

#include "avkit/classifier.h"
#include "avkit/corpus.h"

namespace avkit {

struct EvalReport {
  size_t n = 0;
  size_t correct = 0;
  size_t incorrect = 0;
  size_t unanswered = 0;
  double c_at_1 = 0.0;
  double auc = 0.0;
  double combined = 0.0;  // c_at_1 * auc
};

// (correct + unanswered * correct / n) / n. Requires n >= 1 and
// correct + unanswered <= n.
double CAt1(size_t correct, size_t unanswered, size_t n);

// Area under the ROC curve as the Mann-Whitney statistic: the share of
// (positive, negative) pairs ordered correctly, ties counting one half.
// Requires both classes.
double Auc(std::span<const double> scores, std::span<const Label> truths);

// Abstentions count as unanswered for c@1 and keep their raw score for AUC.
EvalReport Evaluate(std::span<const Verdict> verdicts, const TruthMap& truth);

std::string ToJson(const EvalReport& report);
void WriteReport(const EvalReport& report, const std::filesystem::path& path);

}  // namespace avkit

#endif  // AVKIT_EVAL_H_
