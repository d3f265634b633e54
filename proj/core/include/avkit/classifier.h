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

#ifndef AVKIT_CLASSIFIER_H_
#define AVKIT_CLASSIFIER_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "avkit/corpus.h"
#include "avkit/features.h"

namespace avkit {

enum class Calibration { kPlatt };

struct ModelParams {
  double C = 1.0;
  // Defaults to 1 / feature count when unset.
  std::optional<double> gamma;
  double tolerance = 1e-3;
  int max_passes = 10;
  Calibration calibration = Calibration::kPlatt;
  uint64_t seed = 0;
  // Scores within this distance of 0.5 are left unanswered.
  double abstain_epsilon = 0.0;

  void Validate() const;
  double GammaFor(size_t dimension) const;
};

enum class Answer { kYes, kNo, kUnanswered };

std::string_view ToString(Answer a);
Answer AnswerFor(double score, double epsilon = 0.0);

struct Verdict {
  std::string problem_id;
  double score = 0.5;
  Answer answer = Answer::kUnanswered;
};

// ---------------------------------------------------------------------------
// Soft-margin RBF SVM dual, solved by SMO with maximal-violating-pair
// working set selection:
//   min 1/2 a'Qa - e'a   s.t.  0 <= a_i <= C,  y'a = 0,
//   Q_ij = y_i y_j exp(-gamma |x_i - x_j|^2).

double RbfKernel(std::span<const double> a, std::span<const double> b,
                 double gamma);

struct SmoResult {
  std::vector<double> alpha;
  double bias = 0.0;  // f(x) = sum_i alpha_i y_i K(x_i, x) + bias
  double objective = 0.0;
  size_t iterations = 0;
  bool converged = false;
};

// Labels are +1 / -1. Points are solved in the order given.
SmoResult SolveSmo(const std::vector<std::vector<double>>& x,
                   const std::vector<int>& y, double C, double gamma,
                   double tolerance, size_t max_iterations);

// Per-point KKT violation of a dual solution, recomputed from scratch:
//   alpha = 0      max(0, 1 - y f)
//   alpha = C      max(0, y f - 1)
//   otherwise      |y f - 1|
std::vector<double> KktResiduals(const std::vector<std::vector<double>>& x,
                                 const std::vector<int>& y,
                                 const std::vector<double>& alpha, double bias,
                                 double C, double gamma);

// score = 1 / (1 + exp(a * d + b)), increasing in d.
struct PlattSigmoid {
  double a = -1.0;
  double b = 0.0;

  double operator()(double decision) const;

  // Newton fit with backtracking on smoothed targets (N+ + 1)/(N+ + 2) and
  // 1/(N- + 2).
  static PlattSigmoid Fit(std::span<const double> decisions,
                          std::span<const int> labels);
};

struct TrainedModel {
  std::vector<std::string> feature_names;
  Scaler scaler;
  std::vector<FeatureVector> support_vectors;  // scaled
  std::vector<double> dual_coefficients;       // alpha_i * y_i
  double bias = 0.0;
  double gamma = 0.0;
  PlattSigmoid platt;
  ModelParams params;
  bool converged = false;
  size_t iterations = 0;

  size_t dimension() const { return scaler.dimension(); }
  // Decision value of an already scaled vector.
  double Decision(const FeatureVector& scaled) const;
  // Calibrated probability of the same-author class for a raw vector.
  double Score(const FeatureVector& raw) const;
};

// Fits the scaler on `vectors`, canonicalises point order, solves the dual
// and calibrates on in-sample decision values.
TrainedModel Train(std::span<const FeatureVector> vectors,
                   std::span<const Label> labels, const ModelParams& params);

Verdict Predict(const TrainedModel& model, const FeatureVector& v,
                std::string problem_id = {});

// Cross-validated accuracy search over C and gamma multipliers; returns the
// best parameters (earliest grid point on ties).
ModelParams GridSearch(std::span<const FeatureVector> vectors,
                       std::span<const Label> labels, const ModelParams& base,
                       int folds = 5);

// Uniform Y/N per problem, score 1 for Y and 0 for N.
std::vector<Verdict> RandomBaseline(std::span<const std::string> problem_ids,
                                    uint64_t seed);

// JSON model file, format "avkit-model" version 1.
void SaveModel(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel LoadModel(const std::filesystem::path& path);
// Throws DataError when the names differ from the model's.
void CheckFeatureNames(const TrainedModel& model,
                       std::span<const std::string_view> names);

// "<problem_id> <score>" lines, scores with 6 decimals.
void WriteAnswers(std::span<const Verdict> verdicts,
                  const std::filesystem::path& path);
std::string FormatAnswers(std::span<const Verdict> verdicts);
std::vector<Verdict> ReadAnswers(const std::filesystem::path& path,
                                 double abstain_epsilon = 0.0);

}  // namespace avkit

#endif  // AVKIT_CLASSIFIER_H_
