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

#include "quatbench/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "quatbench/error.hpp"
#include "quatbench/io.hpp"

namespace quatbench {

using Eigen::Index;

namespace {

template <typename A, typename B>
void check_pair(const A& predicted, const B& truth) {
  if (predicted.size() != truth.size()) {
    throw Error(Errc::LengthMismatch, "predicted has " + std::to_string(predicted.size()) +
                                          " entries, truth has " +
                                          std::to_string(truth.size()));
  }
  if (truth.size() == 0) {
    throw Error(Errc::EmptyInput, "metrics need at least one sample");
  }
}

double ratio(Index num, Index den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ConfusionCounts confusion_counts(const Labels& predicted, const Labels& truth, int positive) {
  check_pair(predicted, truth);
  ConfusionCounts c;
  for (Index i = 0; i < truth.size(); ++i) {
    const bool pred_pos = predicted[i] == positive;
    const bool true_pos = truth[i] == positive;
    if (pred_pos && true_pos) {
      ++c.tp;
    } else if (pred_pos) {
      ++c.fp;
    } else if (true_pos) {
      ++c.fn;
    } else {
      ++c.tn;
    }
  }
  return c;
}

double f1_score(double precision, double recall) {
  const double sum = precision + recall;
  return sum > 0.0 ? 2.0 * precision * recall / sum : 0.0;
}

PrecisionRecallF1 precision_recall_f1(Index tp, Index fp, Index fn) {
  if (tp < 0 || fp < 0 || fn < 0) {
    throw Error(Errc::InvalidCount, "confusion counts must be non-negative");
  }
  PrecisionRecallF1 out;
  out.precision = ratio(tp, tp + fp);
  out.recall = ratio(tp, tp + fn);
  out.f1 = f1_score(out.precision, out.recall);
  return out;
}

double accuracy(const Labels& predicted, const Labels& truth) {
  check_pair(predicted, truth);
  return ratio((predicted.array() == truth.array()).count(), truth.size());
}

LossMetrics loss_metrics(const Eigen::VectorXd& predicted, const Eigen::VectorXd& truth) {
  check_pair(predicted, truth);
  if ((truth.array() == 0.0).any()) {
    throw Error(Errc::ZeroTrueValue, "heteroscedastic losses are undefined for a zero true value");
  }
  const Eigen::ArrayXd err = predicted.array() - truth.array();
  const Eigen::ArrayXd rel = 1.0 - predicted.array() / truth.array();
  return {err.abs().mean(), err.square().mean(), rel.abs().mean(), rel.square().mean()};
}

Eigen::VectorXd encode_labels(const Labels& labels) { return (labels.array() + 1).cast<double>(); }

MetricsReport evaluate_predictions(const Labels& predicted, const Labels& truth) {
  const ConfusionCounts c = confusion_counts(predicted, truth, kPositiveClass);
  const PrecisionRecallF1 prf = precision_recall_f1(c.tp, c.fp, c.fn);
  const LossMetrics loss = loss_metrics(encode_labels(predicted), encode_labels(truth));

  MetricsReport r;
  r.precision = prf.precision;
  r.recall = prf.recall;
  r.f1 = prf.f1;
  r.accuracy = accuracy(predicted, truth);
  r.mse = loss.mse;
  r.mae = loss.mae;
  r.hmae = loss.hmae;
  r.hmse = loss.hmse;
  r.positive_class = kPositiveClass;
  r.n_test = truth.size();
  return r;
}

MetricsReport evaluate_model(const TrainedModel& model, const Eigen::MatrixXd& X,
                             const Labels& truth) {
  if (X.rows() == 0) {
    throw Error(Errc::EmptyInput, "empty test set");
  }
  return evaluate_predictions(predict(model, X), truth);
}

std::string metrics_csv_header() { return "Precision,Recall,F1-score,Accuracy,MSE,MAE,HMAE,HMSE"; }

std::string to_csv_row(const MetricsReport& r) {
  std::string out;
  for (const double v : {r.precision, r.recall, r.f1, r.accuracy, r.mse, r.mae, r.hmae, r.hmse}) {
    if (!out.empty()) out += ',';
    out += format_number(v);
  }
  return out;
}

void validate_curve_fractions(std::span<const double> fractions) {
  double previous = 0.0;
  for (const double f : fractions) {
    if (!(f > previous && f <= 1.0)) {
      throw Error(Errc::InvalidFraction,
                  "learning-curve fractions must be strictly increasing within (0, 1]");
    }
    previous = f;
  }
}

std::vector<LearningCurvePoint> learning_curve(const Trainer& trainer, const Dataset& dataset,
                                               std::span<const Index> train_rows,
                                               std::span<const Index> eval_rows,
                                               std::span<const double> fractions) {
  validate_curve_fractions(fractions);
  if (train_rows.empty() || eval_rows.empty()) {
    throw Error(Errc::EmptyInput, "learning curve needs training and evaluation rows");
  }
  const Eigen::MatrixXd eval_X = select_rows(dataset.features, eval_rows);
  const Labels eval_y = select_rows(dataset.labels, eval_rows);

  std::vector<LearningCurvePoint> curve;
  curve.reserve(fractions.size());
  for (const double f : fractions) {
    auto size = static_cast<Index>(std::ceil(f * static_cast<double>(train_rows.size())));
    size = std::clamp<Index>(size, 1, static_cast<Index>(train_rows.size()));
    if (!curve.empty() && size <= curve.back().train_size) {
      continue;  // two fractions rounded to the same subset
    }
    const auto subset = train_rows.first(static_cast<std::size_t>(size));
    const Eigen::MatrixXd X = select_rows(dataset.features, subset);
    const Labels y = select_rows(dataset.labels, subset);
    const TrainedModel model = trainer(X, y);
    curve.push_back({size, accuracy(predict(model, X), y), accuracy(predict(model, eval_X), eval_y)});
  }
  return curve;
}

}  // namespace quatbench
