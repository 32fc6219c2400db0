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

// Classification and loss metrics, and learning curves.
//
// Loss metrics work on numeric values. Class ids are mapped to {1, 2} before
// they are scored, since the heteroscedastic losses divide by the true value.

#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "quatbench/classifiers.hpp"
#include "quatbench/dataset.hpp"

namespace quatbench {

inline constexpr int kPositiveClass = 1;

struct ConfusionCounts {
  Eigen::Index tp = 0;
  Eigen::Index fp = 0;
  Eigen::Index fn = 0;
  Eigen::Index tn = 0;
  bool operator==(const ConfusionCounts&) const = default;
};

struct PrecisionRecallF1 {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct LossMetrics {
  double mae = 0.0;
  double mse = 0.0;
  double hmae = 0.0;
  double hmse = 0.0;
};

struct MetricsReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
  double mse = 0.0;
  double mae = 0.0;
  double hmae = 0.0;
  double hmse = 0.0;
  int positive_class = kPositiveClass;
  Eigen::Index n_test = 0;
  bool operator==(const MetricsReport&) const = default;
};

struct LearningCurvePoint {
  Eigen::Index train_size = 0;
  double train_score = 0.0;
  double eval_score = 0.0;
  bool operator==(const LearningCurvePoint&) const = default;
};

ConfusionCounts confusion_counts(const Labels& predicted, const Labels& truth, int positive);

// A zero denominator yields 0 for that metric.
PrecisionRecallF1 precision_recall_f1(Eigen::Index tp, Eigen::Index fp, Eigen::Index fn);

// Harmonic mean of precision and recall, 0 when both are 0.
double f1_score(double precision, double recall);

double accuracy(const Labels& predicted, const Labels& truth);

// Throws Error(ZeroTrueValue) if any true value is 0.
LossMetrics loss_metrics(const Eigen::VectorXd& predicted, const Eigen::VectorXd& truth);

// Class id c becomes the numeric value c + 1.
Eigen::VectorXd encode_labels(const Labels& labels);

MetricsReport evaluate_predictions(const Labels& predicted, const Labels& truth);
MetricsReport evaluate_model(const TrainedModel& model, const Eigen::MatrixXd& X,
                             const Labels& truth);

// Column names in output order: Precision, Recall, F1-score, Accuracy, MSE, MAE, HMAE, HMSE.
std::string metrics_csv_header();
std::string to_csv_row(const MetricsReport& report);

using Trainer = std::function<TrainedModel(const Eigen::MatrixXd&, const Labels&)>;

// For each fraction f, trains on the first ceil(f * |train|) entries of
// train_rows and records accuracy on those rows and on eval_rows.
// Fractions must be strictly increasing within (0, 1].
std::vector<LearningCurvePoint> learning_curve(const Trainer& trainer, const Dataset& dataset,
                                               std::span<const Eigen::Index> train_rows,
                                               std::span<const Eigen::Index> eval_rows,
                                               std::span<const double> fractions);

// Throws Error(InvalidFraction) unless fractions are strictly increasing in (0, 1].
void validate_curve_fractions(std::span<const double> fractions);

}  // namespace quatbench
