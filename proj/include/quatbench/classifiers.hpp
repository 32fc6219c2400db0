// Copyright 2026 The quatbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Binary classifiers trained from scratch: linear SVM, logistic regression,
// Fisher's linear discriminant, Gaussian naive Bayes and k-nearest neighbors.
//
// Labels are class ids in {0, 1}. Every trained model predicts class 1 exactly
// when its decision score is strictly positive; a zero score goes to class 0.

#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <variant>

#include <Eigen/Core>

#include "quatbench/dataset.hpp"

namespace quatbench {

struct SvmConfig {
  double lambda = 0.01;
  int iterations = 2000;
  double rate = 0.1;  // step at iteration t is rate / (1 + t)
  bool operator==(const SvmConfig&) const = default;
};

struct LogisticConfig {
  double rate = 0.1;
  int iterations = 2000;
  double l2 = 1e-4;
  bool operator==(const LogisticConfig&) const = default;
};

struct FldConfig {
  // Ridge added to the within-class scatter, relative to trace(S_W) / d.
  // Zero disables it, in which case a singular scatter is an error.
  double ridge = 1e-8;
  bool operator==(const FldConfig&) const = default;
};

struct NaiveBayesConfig {
  // Variance floor relative to the largest per-feature variance.
  double var_smoothing = 1e-9;
  bool operator==(const NaiveBayesConfig&) const = default;
};

struct KnnConfig {
  int k = 5;
  bool operator==(const KnnConfig&) const = default;
};

struct TrainConfig {
  SvmConfig svm;
  LogisticConfig logistic;
  FldConfig fld;
  NaiveBayesConfig nb;
  KnnConfig knn;

  // Throws Error(InvalidConfig) unless rates, counts and strengths are positive.
  void validate() const;
  bool operator==(const TrainConfig&) const = default;
};

struct LinearSvmModel {
  Eigen::VectorXd weights;
  double bias = 0.0;
};

struct LogisticModel {
  Eigen::VectorXd weights;
  double bias = 0.0;
};

struct FldModel {
  Eigen::VectorXd projection;
  double threshold = 0.0;
  int sign = 1;
};

struct GaussianNbModel {
  Eigen::Vector2d priors;
  Eigen::MatrixXd means;      // 2 x d, row c holds the class-c means
  Eigen::MatrixXd variances;  // 2 x d
};

struct KnnModel {
  Eigen::MatrixXd features;
  Labels labels;
  int k = 5;
};

using TrainedModel =
    std::variant<LinearSvmModel, LogisticModel, FldModel, GaussianNbModel, KnnModel>;

enum class ModelKind { Svm, Logistic, Fld, NaiveBayes, Knn };

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);
ModelKind kind_of(const TrainedModel& model);
Eigen::Index feature_width(const TrainedModel& model);

// Gradient of a linear model's objective, split into weight and bias parts.
struct LinearGradient {
  Eigen::VectorXd weights;
  double bias = 0.0;
};

// lambda/2 |w|^2 + mean_i max(0, 1 - s_i (w.x_i + b)), with s_i = 2 y_i - 1.
double hinge_objective(const Eigen::MatrixXd& X, const Labels& y, const Eigen::VectorXd& w,
                       double b, double lambda);

// A subgradient of hinge_objective; samples exactly on the margin contribute zero.
LinearGradient hinge_subgradient(const Eigen::MatrixXd& X, const Labels& y,
                                 const Eigen::VectorXd& w, double b, double lambda);

// Mean cross-entropy of sigmoid(w.x + b) plus l2/2 |w|^2.
double logistic_objective(const Eigen::MatrixXd& X, const Labels& y, const Eigen::VectorXd& w,
                          double b, double l2);

LinearGradient logistic_gradient(const Eigen::MatrixXd& X, const Labels& y,
                                 const Eigen::VectorXd& w, double b, double l2);

double sigmoid(double z);

// Full-batch subgradient descent; returns the iterate with the lowest objective.
// If trace is non-null it receives the objective at every iterate.
LinearSvmModel train_linear_svm(const Eigen::MatrixXd& X, const Labels& y, const SvmConfig& cfg,
                                std::vector<double>* trace = nullptr);

// Full-batch gradient descent from zero weights.
LogisticModel train_logistic_regression(const Eigen::MatrixXd& X, const Labels& y,
                                        const LogisticConfig& cfg);

FldModel train_fld(const Eigen::MatrixXd& X, const Labels& y, const FldConfig& cfg);

GaussianNbModel train_gaussian_nb(const Eigen::MatrixXd& X, const Labels& y,
                                  const NaiveBayesConfig& cfg);

KnnModel train_knn(const Eigen::MatrixXd& X, const Labels& y, const KnnConfig& cfg);

// Majority vote among the k nearest rows of train_X (Euclidean). Distance ties
// go to the lower row index and vote ties to class 0.
int knn_predict(const Eigen::MatrixXd& train_X, const Labels& train_y,
                const Eigen::Ref<const Eigen::RowVectorXd>& query, int k);

TrainedModel train(ModelKind kind, const Eigen::MatrixXd& X, const Labels& y,
                   const TrainConfig& cfg);

// Margin for SVM, logistic and FLD; log-posterior difference (class 1 minus
// class 0) for naive Bayes; vote difference for KNN.
Eigen::VectorXd decision_scores(const TrainedModel& model, const Eigen::MatrixXd& X);

Labels predict(const TrainedModel& model, const Eigen::MatrixXd& X);

// Class-1 probabilities of a logistic model, each in (0, 1).
Eigen::VectorXd predict_proba(const LogisticModel& model, const Eigen::MatrixXd& X);

// JSON with a "model" tag and the parameter arrays of the variant.
std::string to_json(const TrainedModel& model);
TrainedModel model_from_json(std::string_view text);

}  // namespace quatbench
