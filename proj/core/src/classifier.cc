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

#include "avkit/classifier.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "avkit/error.h"
#include "avkit/random.h"

namespace avkit {

namespace fs = std::filesystem;
using nlohmann::json;

void ModelParams::Validate() const {
  if (!(C > 0.0)) throw UsageError("C must be positive");
  if (gamma && !(*gamma > 0.0)) throw UsageError("gamma must be positive");
  if (!(tolerance > 0.0)) throw UsageError("tolerance must be positive");
  if (max_passes < 1) throw UsageError("max_passes must be >= 1");
  if (!(abstain_epsilon >= 0.0 && abstain_epsilon < 0.5)) {
    throw UsageError("abstention band must lie in [0, 0.5)");
  }
}

double ModelParams::GammaFor(size_t dimension) const {
  return gamma.value_or(1.0 / static_cast<double>(std::max<size_t>(1, dimension)));
}

std::string_view ToString(Answer a) {
  switch (a) {
    case Answer::kYes:
      return "Y";
    case Answer::kNo:
      return "N";
    case Answer::kUnanswered:
      break;
  }
  return "U";
}

Answer AnswerFor(double score, double epsilon) {
  if (score > 0.5 + epsilon) return Answer::kYes;
  if (score < 0.5 - epsilon) return Answer::kNo;
  return Answer::kUnanswered;
}

double RbfKernel(std::span<const double> a, std::span<const double> b,
                 double gamma) {
  double d2 = 0.0;
  for (size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    d2 += d * d;
  }
  return std::exp(-gamma * d2);
}

namespace {

constexpr double kTau = 1e-12;
constexpr size_t kCacheBytes = size_t{64} << 20;

// Rows of Q computed on demand, evicted first-in first-out once the cache
// budget is reached. Values never depend on eviction order.
class QMatrix {
 public:
  QMatrix(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
          double gamma)
      : x_(x), y_(y), gamma_(gamma), rows_(x.size()) {
    capacity_ = std::max<size_t>(2, kCacheBytes / (sizeof(double) *
                                                   std::max<size_t>(1, x.size())));
  }

  // Never evicts `pinned`, so a reference obtained for it stays valid.
  const std::vector<double>& Row(size_t i, size_t pinned = SIZE_MAX) {
    if (rows_[i].empty()) {
      if (order_.size() >= capacity_) {
        if (order_.front() == pinned) {
          order_.push_back(order_.front());
          order_.pop_front();
        }
        rows_[order_.front()].clear();
        rows_[order_.front()].shrink_to_fit();
        order_.pop_front();
      }
      auto& row = rows_[i];
      row.resize(x_.size());
      for (size_t j = 0; j < x_.size(); ++j) {
        row[j] = y_[i] * y_[j] * RbfKernel(x_[i], x_[j], gamma_);
      }
      order_.push_back(i);
    }
    return rows_[i];
  }

 private:
  const std::vector<std::vector<double>>& x_;
  const std::vector<int>& y_;
  double gamma_;
  std::vector<std::vector<double>> rows_;
  std::deque<size_t> order_;
  size_t capacity_;
};

}  // namespace

SmoResult SolveSmo(const std::vector<std::vector<double>>& x,
                   const std::vector<int>& y, double C, double gamma,
                   double tolerance, size_t max_iterations) {
  const size_t n = x.size();
  if (n != y.size()) throw InvariantError("SMO: point/label count mismatch");
  QMatrix q(x, y, gamma);
  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);  // Q alpha - e

  auto in_up = [&](size_t t) {
    return y[t] > 0 ? alpha[t] < C : alpha[t] > 0.0;
  };
  auto in_low = [&](size_t t) {
    return y[t] > 0 ? alpha[t] > 0.0 : alpha[t] < C;
  };

  SmoResult result;
  while (result.iterations < max_iterations) {
    // Maximal violating pair; ties resolve to the lowest index.
    double gmax = -std::numeric_limits<double>::infinity();
    double gmin = std::numeric_limits<double>::infinity();
    size_t i = n;
    size_t j = n;
    for (size_t t = 0; t < n; ++t) {
      const double v = -y[t] * grad[t];
      if (in_up(t) && v > gmax) {
        gmax = v;
        i = t;
      }
      if (in_low(t) && v < gmin) {
        gmin = v;
        j = t;
      }
    }
    if (i == n || j == n || gmax - gmin < tolerance) {
      result.converged = true;
      break;
    }
    ++result.iterations;

    const std::vector<double>& qi = q.Row(i);
    const std::vector<double>& qj = q.Row(j, i);
    const double old_i = alpha[i];
    const double old_j = alpha[j];
    if (y[i] != y[j]) {
      double quad = qi[i] + qj[j] + 2.0 * qi[j];
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = C - diff;
        }
      } else if (alpha[j] > C) {
        alpha[j] = C;
        alpha[i] = C + diff;
      }
    } else {
      double quad = qi[i] + qj[j] - 2.0 * qi[j];
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > C) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = sum - C;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > C) {
        if (alpha[j] > C) {
          alpha[j] = C;
          alpha[i] = sum - C;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }
    const double di = alpha[i] - old_i;
    const double dj = alpha[j] - old_j;
    for (size_t t = 0; t < n; ++t) grad[t] += qi[t] * di + qj[t] * dj;
  }

  // rho as in libsvm: mean of y*G over free points, else the midpoint of the
  // feasible interval.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  size_t free_count = 0;
  for (size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    const bool at_upper = alpha[t] >= C;
    const bool at_lower = alpha[t] <= 0.0;
    if (at_upper) {
      if (y[t] < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (at_lower) {
      if (y[t] > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      ++free_count;
      free_sum += yg;
    }
  }
  const double rho = free_count > 0 ? free_sum / static_cast<double>(free_count)
                                    : (ub + lb) / 2.0;
  result.bias = -rho;
  for (size_t t = 0; t < n; ++t) {
    result.objective += alpha[t] * (grad[t] - 1.0) / 2.0;
  }
  result.alpha = std::move(alpha);
  return result;
}

std::vector<double> KktResiduals(const std::vector<std::vector<double>>& x,
                                 const std::vector<int>& y,
                                 const std::vector<double>& alpha, double bias,
                                 double C, double gamma) {
  const size_t n = x.size();
  std::vector<double> residuals(n);
  for (size_t t = 0; t < n; ++t) {
    double f = bias;
    for (size_t s = 0; s < n; ++s) {
      if (alpha[s] != 0.0) f += alpha[s] * y[s] * RbfKernel(x[s], x[t], gamma);
    }
    const double margin = y[t] * f - 1.0;
    if (alpha[t] <= 0.0) {
      residuals[t] = std::max(0.0, -margin);
    } else if (alpha[t] >= C) {
      residuals[t] = std::max(0.0, margin);
    } else {
      residuals[t] = std::abs(margin);
    }
  }
  return residuals;
}

// ---------------------------------------------------------------------------

double PlattSigmoid::operator()(double decision) const {
  const double f = a * decision + b;
  // Evaluated on the side that cannot overflow.
  return f >= 0.0 ? std::exp(-f) / (1.0 + std::exp(-f))
                  : 1.0 / (1.0 + std::exp(f));
}

PlattSigmoid PlattSigmoid::Fit(std::span<const double> decisions,
                               std::span<const int> labels) {
  const size_t n = decisions.size();
  double prior1 = 0.0;
  double prior0 = 0.0;
  for (int l : labels) (l > 0 ? prior1 : prior0) += 1.0;

  constexpr int kMaxIter = 100;
  constexpr double kMinStep = 1e-10;
  constexpr double kSigma = 1e-12;
  constexpr double kEps = 1e-5;
  const double hi = (prior1 + 1.0) / (prior1 + 2.0);
  const double lo = 1.0 / (prior0 + 2.0);
  std::vector<double> t(n);
  for (size_t i = 0; i < n; ++i) t[i] = labels[i] > 0 ? hi : lo;

  double A = 0.0;
  double B = std::log((prior0 + 1.0) / (prior1 + 1.0));
  auto objective = [&](double a, double b) {
    double f = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double z = decisions[i] * a + b;
      f += z >= 0 ? t[i] * z + std::log1p(std::exp(-z))
                  : (t[i] - 1.0) * z + std::log1p(std::exp(z));
    }
    return f;
  };
  double fval = objective(A, B);
  for (int iter = 0; iter < kMaxIter; ++iter) {
    double h11 = kSigma, h22 = kSigma, h21 = 0.0, g1 = 0.0, g2 = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double z = decisions[i] * A + B;
      double p, q;
      if (z >= 0) {
        p = std::exp(-z) / (1.0 + std::exp(-z));
        q = 1.0 / (1.0 + std::exp(-z));
      } else {
        p = 1.0 / (1.0 + std::exp(z));
        q = std::exp(z) / (1.0 + std::exp(z));
      }
      const double d2 = p * q;
      h11 += decisions[i] * decisions[i] * d2;
      h22 += d2;
      h21 += decisions[i] * d2;
      const double d1 = t[i] - p;
      g1 += decisions[i] * d1;
      g2 += d1;
    }
    if (std::abs(g1) < kEps && std::abs(g2) < kEps) break;
    const double det = h11 * h22 - h21 * h21;
    const double dA = -(h22 * g1 - h21 * g2) / det;
    const double dB = -(-h21 * g1 + h11 * g2) / det;
    const double gd = g1 * dA + g2 * dB;
    double step = 1.0;
    while (step >= kMinStep) {
      const double na = A + step * dA;
      const double nb = B + step * dB;
      const double nf = objective(na, nb);
      if (nf < fval + 1e-4 * step * gd) {
        A = na;
        B = nb;
        fval = nf;
        break;
      }
      step /= 2.0;
    }
    if (step < kMinStep) break;
  }
  // Keep the orientation: higher decision values mean "same author".
  PlattSigmoid s;
  s.a = std::min(A, -1e-6);
  s.b = B;
  return s;
}

// ---------------------------------------------------------------------------

double TrainedModel::Decision(const FeatureVector& scaled) const {
  double f = bias;
  for (size_t i = 0; i < support_vectors.size(); ++i) {
    f += dual_coefficients[i] *
         RbfKernel(support_vectors[i].values, scaled.values, gamma);
  }
  return f;
}

double TrainedModel::Score(const FeatureVector& raw) const {
  return platt(Decision(scaler.Apply(raw)));
}

namespace {

std::vector<int> SignedLabels(std::span<const Label> labels) {
  std::vector<int> y;
  y.reserve(labels.size());
  for (Label l : labels) y.push_back(l == Label::kYes ? 1 : -1);
  return y;
}

void CheckTrainingInput(std::span<const FeatureVector> vectors,
                        std::span<const Label> labels) {
  if (vectors.size() != labels.size()) {
    throw DataError("training vectors and labels differ in count");
  }
  if (vectors.size() < 2) throw DataError("training needs at least 2 vectors");
  for (const auto& v : vectors) {
    if (v.size() != vectors.front().size()) {
      throw DataError("training vectors differ in dimension");
    }
  }
  const bool has_y = std::find(labels.begin(), labels.end(), Label::kYes) !=
                     labels.end();
  const bool has_n = std::find(labels.begin(), labels.end(), Label::kNo) !=
                     labels.end();
  if (!has_y || !has_n) throw DataError("training needs both labels (Y and N)");
}

}  // namespace

TrainedModel Train(std::span<const FeatureVector> vectors,
                   std::span<const Label> labels, const ModelParams& params) {
  params.Validate();
  CheckTrainingInput(vectors, labels);
  const size_t dim = vectors.front().size();

  TrainedModel model;
  model.params = params;
  model.feature_names.assign(kFeatureNames.begin(), kFeatureNames.begin() + dim);
  model.scaler = Scaler::Fit(vectors);
  model.gamma = params.GammaFor(dim);

  const std::vector<int> signs = SignedLabels(labels);
  std::vector<std::vector<double>> scaled(vectors.size());
  for (size_t i = 0; i < vectors.size(); ++i) {
    scaled[i] = model.scaler.Apply(vectors[i]).values;
  }
  // Canonical order makes the solution independent of input order.
  std::vector<size_t> order(vectors.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (scaled[a] != scaled[b]) return scaled[a] < scaled[b];
    return signs[a] < signs[b];
  });
  std::vector<std::vector<double>> x;
  std::vector<int> y;
  x.reserve(order.size());
  y.reserve(order.size());
  for (size_t i : order) {
    x.push_back(scaled[i]);
    y.push_back(signs[i]);
  }

  const size_t n = x.size();
  const size_t max_iterations =
      static_cast<size_t>(params.max_passes) * std::max<size_t>(1000, 100 * n);
  const SmoResult smo =
      SolveSmo(x, y, params.C, model.gamma, params.tolerance, max_iterations);
  model.bias = smo.bias;
  model.converged = smo.converged;
  model.iterations = smo.iterations;
  for (size_t i = 0; i < n; ++i) {
    if (smo.alpha[i] > 0.0) {
      model.support_vectors.push_back(FeatureVector{x[i]});
      model.dual_coefficients.push_back(smo.alpha[i] * y[i]);
    }
  }

  std::vector<double> decisions(n);
  for (size_t i = 0; i < n; ++i) decisions[i] = model.Decision(FeatureVector{x[i]});
  model.platt = PlattSigmoid::Fit(decisions, y);
  return model;
}

Verdict Predict(const TrainedModel& model, const FeatureVector& v,
                std::string problem_id) {
  if (v.size() != model.dimension()) {
    throw DataError(fmt::format("model expects {} features, got {}",
                                model.dimension(), v.size()));
  }
  Verdict verdict;
  verdict.problem_id = std::move(problem_id);
  verdict.score = model.Score(v);
  verdict.answer = AnswerFor(verdict.score, model.params.abstain_epsilon);
  return verdict;
}

ModelParams GridSearch(std::span<const FeatureVector> vectors,
                       std::span<const Label> labels, const ModelParams& base,
                       int folds) {
  CheckTrainingInput(vectors, labels);
  if (folds < 2) throw UsageError("grid search needs at least 2 folds");
  const size_t n = vectors.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  Rng rng(DeriveSeed(base.seed, "grid-search"));
  rng.Shuffle(std::span<size_t>(order));
  std::vector<int> fold_of(n);
  for (size_t k = 0; k < n; ++k) fold_of[order[k]] = static_cast<int>(k % folds);

  const double default_gamma = base.GammaFor(vectors.front().size());
  ModelParams best = base;
  double best_accuracy = -1.0;
  for (double c : {0.1, 1.0, 10.0, 100.0}) {
    for (double g : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      ModelParams p = base;
      p.C = c;
      p.gamma = default_gamma * g;
      size_t correct = 0;
      size_t total = 0;
      for (int f = 0; f < folds; ++f) {
        std::vector<FeatureVector> tv;
        std::vector<Label> tl;
        for (size_t i = 0; i < n; ++i) {
          if (fold_of[i] != f) {
            tv.push_back(vectors[i]);
            tl.push_back(labels[i]);
          }
        }
        if (std::count(tl.begin(), tl.end(), Label::kYes) == 0 ||
            std::count(tl.begin(), tl.end(), Label::kNo) == 0) {
          continue;
        }
        const TrainedModel m = Train(tv, tl, p);
        for (size_t i = 0; i < n; ++i) {
          if (fold_of[i] != f) continue;
          const double d = m.Decision(m.scaler.Apply(vectors[i]));
          correct += (d > 0.0) == (labels[i] == Label::kYes) ? 1 : 0;
          ++total;
        }
      }
      const double acc = total == 0 ? 0.0 : static_cast<double>(correct) /
                                                static_cast<double>(total);
      if (acc > best_accuracy) {
        best_accuracy = acc;
        best = p;
      }
    }
  }
  return best;
}

std::vector<Verdict> RandomBaseline(std::span<const std::string> problem_ids,
                                    uint64_t seed) {
  Rng rng(DeriveSeed(seed, "random-baseline"));
  std::vector<Verdict> out;
  out.reserve(problem_ids.size());
  for (const auto& id : problem_ids) {
    const bool yes = rng.Uniform() < 0.5;
    out.push_back(Verdict{id, yes ? 1.0 : 0.0, yes ? Answer::kYes : Answer::kNo});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Persistence

void SaveModel(const TrainedModel& m, const fs::path& path) {
  json j;
  j["format"] = "avkit-model";
  j["version"] = 1;
  j["feature_names"] = m.feature_names;
  j["scaler"] = {{"min", m.scaler.min}, {"max", m.scaler.max}};
  json svs = json::array();
  for (const auto& sv : m.support_vectors) svs.push_back(sv.values);
  j["support_vectors"] = std::move(svs);
  j["dual_coefficients"] = m.dual_coefficients;
  j["bias"] = m.bias;
  j["gamma"] = m.gamma;
  j["platt"] = {{"a", m.platt.a}, {"b", m.platt.b}};
  j["params"] = {{"C", m.params.C},
                 {"tolerance", m.params.tolerance},
                 {"max_passes", m.params.max_passes},
                 {"seed", m.params.seed},
                 {"abstain_epsilon", m.params.abstain_epsilon}};
  j["converged"] = m.converged;
  j["iterations"] = m.iterations;
  WriteFile(path, j.dump(1) + "\n");
}

TrainedModel LoadModel(const fs::path& path) {
  TrainedModel m;
  try {
    const json j = json::parse(ReadFile(path));
    if (j.at("format") != "avkit-model") throw DataError("not an avkit model");
    if (j.at("version") != 1) {
      throw DataError(fmt::format("unsupported model version {}",
                                  j.at("version").dump()));
    }
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    m.scaler.min = j.at("scaler").at("min").get<std::vector<double>>();
    m.scaler.max = j.at("scaler").at("max").get<std::vector<double>>();
    for (const auto& sv : j.at("support_vectors")) {
      m.support_vectors.push_back(FeatureVector{sv.get<std::vector<double>>()});
    }
    m.dual_coefficients = j.at("dual_coefficients").get<std::vector<double>>();
    m.bias = j.at("bias").get<double>();
    m.gamma = j.at("gamma").get<double>();
    m.platt.a = j.at("platt").at("a").get<double>();
    m.platt.b = j.at("platt").at("b").get<double>();
    const json& p = j.at("params");
    m.params.C = p.at("C").get<double>();
    m.params.gamma = m.gamma;
    m.params.tolerance = p.at("tolerance").get<double>();
    m.params.max_passes = p.at("max_passes").get<int>();
    m.params.seed = p.at("seed").get<uint64_t>();
    m.params.abstain_epsilon = p.at("abstain_epsilon").get<double>();
    m.converged = j.at("converged").get<bool>();
    m.iterations = j.at("iterations").get<size_t>();
  } catch (const json::exception& e) {
    throw DataError(
        fmt::format("bad model file '{}': {}", path.string(), e.what()));
  }
  const size_t dim = m.feature_names.size();
  bool consistent = m.scaler.min.size() == dim && m.scaler.max.size() == dim &&
                    m.support_vectors.size() == m.dual_coefficients.size();
  for (const auto& sv : m.support_vectors) consistent &= sv.size() == dim;
  if (!consistent) {
    throw DataError(fmt::format("model file '{}' is inconsistent", path.string()));
  }
  CheckFeatureNames(m, std::span(kFeatureNames).first(
                           std::min(dim, kFeatureNames.size())));
  return m;
}

void CheckFeatureNames(const TrainedModel& model,
                       std::span<const std::string_view> names) {
  bool same = model.feature_names.size() == names.size();
  for (size_t i = 0; same && i < names.size(); ++i) {
    same = model.feature_names[i] == names[i];
  }
  if (!same) {
    throw DataError("model feature names do not match the extractor's");
  }
}

std::string FormatAnswers(std::span<const Verdict> verdicts) {
  std::string out;
  for (const auto& v : verdicts) {
    out += fmt::format("{} {:.6f}\n", v.problem_id, v.score);
  }
  return out;
}

void WriteAnswers(std::span<const Verdict> verdicts, const fs::path& path) {
  WriteFile(path, FormatAnswers(verdicts));
}

std::vector<Verdict> ReadAnswers(const fs::path& path, double abstain_epsilon) {
  std::istringstream in(ReadFile(path));
  std::vector<Verdict> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const size_t space = line.find(' ');
    double score = 0.0;
    bool ok = space != std::string::npos && space > 0;
    if (ok) {
      try {
        size_t used = 0;
        score = std::stod(line.substr(space + 1), &used);
        ok = used == line.size() - space - 1 && score >= 0.0 && score <= 1.0;
      } catch (const std::exception&) {
        ok = false;
      }
    }
    if (!ok) {
      throw DataError(fmt::format("{}:{}: expected '<problem_id> <score in "
                                  "[0,1]>'", path.string(), line_no));
    }
    out.push_back(Verdict{line.substr(0, space), score,
                          AnswerFor(score, abstain_epsilon)});
  }
  return out;
}

}  // namespace avkit
