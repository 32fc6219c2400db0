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

#include "quatbench/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "quatbench/error.hpp"

namespace quatbench {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(Errc::InvalidConfig, std::string(name) + " must be positive");
  }
}

void check_training_set(const MatrixXd& X, const Labels& y) {
  if (X.rows() != y.size()) {
    throw Error(Errc::LengthMismatch, "feature rows and labels differ in length");
  }
  if (X.rows() == 0) {
    throw Error(Errc::EmptyInput, "empty training set");
  }
  if (!X.allFinite()) {
    throw Error(Errc::DegenerateData, "training features must be finite");
  }
  for (Index i = 0; i < y.size(); ++i) {
    if (y[i] != 0 && y[i] != 1) {
      throw Error(Errc::InvalidLabel, "labels must be 0 or 1");
    }
  }
}

// Requires at least min_per_class samples of each class.
void check_both_classes(const Labels& y, Index min_per_class) {
  const Index ones = y.sum();
  const Index zeros = y.size() - ones;
  if (ones < min_per_class || zeros < min_per_class) {
    throw Error(Errc::DegenerateData, "need at least " + std::to_string(min_per_class) +
                                          " sample(s) of each class, got " +
                                          std::to_string(zeros) + " and " +
                                          std::to_string(ones));
  }
}

VectorXd signed_labels(const Labels& y) { return (2 * y.array() - 1).cast<double>().matrix(); }

double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

void check_width(const MatrixXd& X, Index width) {
  if (X.rows() > 0 && X.cols() != width) {
    throw Error(Errc::WidthMismatch, "model expects width " + std::to_string(width) +
                                         ", got " + std::to_string(X.cols()));
  }
}

// Row indices of the k nearest training rows, ordered by (distance, index).
std::vector<Index> nearest(const MatrixXd& train_X, const Eigen::Ref<const Eigen::RowVectorXd>& query,
                           int k) {
  const VectorXd dist = (train_X.rowwise() - query).rowwise().squaredNorm();
  std::vector<Index> order(static_cast<std::size_t>(train_X.rows()));
  std::iota(order.begin(), order.end(), Index{0});
  std::partial_sort(order.begin(), order.begin() + k, order.end(), [&](Index a, Index b) {
    return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
  });
  order.resize(static_cast<std::size_t>(k));
  return order;
}

int knn_vote_margin(const MatrixXd& train_X, const Labels& train_y,
                    const Eigen::Ref<const Eigen::RowVectorXd>& query, int k) {
  int margin = 0;
  for (const Index i : nearest(train_X, query, k)) {
    margin += train_y[i] == 1 ? 1 : -1;
  }
  return margin;
}

void check_k(int k, Index n) {
  if (k < 1 || k > n) {
    throw Error(Errc::InvalidK, "k must lie in [1, " + std::to_string(n) + "], got " +
                                    std::to_string(k));
  }
}

}  // namespace

void TrainConfig::validate() const {
  require_positive(svm.lambda, "svm.lambda");
  require_positive(svm.iterations, "svm.iterations");
  require_positive(svm.rate, "svm.rate");
  require_positive(logistic.rate, "logistic.rate");
  require_positive(logistic.iterations, "logistic.iterations");
  require_positive(logistic.l2, "logistic.l2");
  require_positive(nb.var_smoothing, "nb.var_smoothing");
  require_positive(knn.k, "knn.k");
  if (!(fld.ridge >= 0.0) || !std::isfinite(fld.ridge)) {
    throw Error(Errc::InvalidConfig, "fld.ridge must be non-negative");
  }
}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Svm: return "svm";
    case ModelKind::Logistic: return "logistic";
    case ModelKind::Fld: return "fld";
    case ModelKind::NaiveBayes: return "nb";
    case ModelKind::Knn: return "knn";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
  for (auto kind : {ModelKind::Svm, ModelKind::Logistic, ModelKind::Fld, ModelKind::NaiveBayes,
                    ModelKind::Knn}) {
    if (to_string(kind) == name) return kind;
  }
  throw Error(Errc::InvalidConfig, "unknown model '" + std::string(name) + "'");
}

ModelKind kind_of(const TrainedModel& model) { return static_cast<ModelKind>(model.index()); }

Index feature_width(const TrainedModel& model) {
  return std::visit(
      [](const auto& m) -> Index {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, LinearSvmModel> || std::is_same_v<M, LogisticModel>) {
          return m.weights.size();
        } else if constexpr (std::is_same_v<M, FldModel>) {
          return m.projection.size();
        } else if constexpr (std::is_same_v<M, GaussianNbModel>) {
          return m.means.cols();
        } else {
          return m.features.cols();
        }
      },
      model);
}

double hinge_objective(const MatrixXd& X, const Labels& y, const VectorXd& w, double b,
                       double lambda) {
  const VectorXd margins = signed_labels(y).cwiseProduct(X * w + VectorXd::Constant(X.rows(), b));
  const double data = (1.0 - margins.array()).max(0.0).sum() / static_cast<double>(X.rows());
  return 0.5 * lambda * w.squaredNorm() + data;
}

LinearGradient hinge_subgradient(const MatrixXd& X, const Labels& y, const VectorXd& w,
                                 double b, double lambda) {
  const VectorXd s = signed_labels(y);
  const VectorXd margins = s.cwiseProduct(X * w + VectorXd::Constant(X.rows(), b));
  // Coefficient -s_i / n on samples inside the margin, zero elsewhere.
  const double inv_n = 1.0 / static_cast<double>(X.rows());
  const VectorXd coeff = (margins.array() < 1.0).select(-s.array() * inv_n, 0.0).matrix();
  return {lambda * w + X.transpose() * coeff, coeff.sum()};
}

double sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double logistic_objective(const MatrixXd& X, const Labels& y, const VectorXd& w, double b,
                          double l2) {
  const VectorXd z = X * w + VectorXd::Constant(X.rows(), b);
  double total = 0.0;
  for (Index i = 0; i < z.size(); ++i) {
    total += softplus(z[i]) - (y[i] == 1 ? z[i] : 0.0);
  }
  return total / static_cast<double>(X.rows()) + 0.5 * l2 * w.squaredNorm();
}

LinearGradient logistic_gradient(const MatrixXd& X, const Labels& y, const VectorXd& w,
                                 double b, double l2) {
  const VectorXd z = X * w + VectorXd::Constant(X.rows(), b);
  const VectorXd residual =
      z.unaryExpr([](double v) { return sigmoid(v); }) - y.cast<double>();
  const double inv_n = 1.0 / static_cast<double>(X.rows());
  return {X.transpose() * residual * inv_n + l2 * w, residual.sum() * inv_n};
}

LinearSvmModel train_linear_svm(const MatrixXd& X, const Labels& y, const SvmConfig& cfg,
                                std::vector<double>* trace) {
  check_training_set(X, y);
  check_both_classes(y, 1);

  LinearSvmModel current{VectorXd::Zero(X.cols()), 0.0};
  LinearSvmModel best = current;
  double best_objective = hinge_objective(X, y, current.weights, current.bias, cfg.lambda);
  if (trace) {
    trace->clear();
    trace->push_back(best_objective);
  }

  for (int t = 0; t < cfg.iterations; ++t) {
    const LinearGradient g = hinge_subgradient(X, y, current.weights, current.bias, cfg.lambda);
    const double step = cfg.rate / (1.0 + t);
    current.weights -= step * g.weights;
    current.bias -= step * g.bias;
    const double objective = hinge_objective(X, y, current.weights, current.bias, cfg.lambda);
    if (trace) trace->push_back(objective);
    if (objective < best_objective) {
      best_objective = objective;
      best = current;
    }
  }
  return best;
}

LogisticModel train_logistic_regression(const MatrixXd& X, const Labels& y,
                                        const LogisticConfig& cfg) {
  check_training_set(X, y);
  check_both_classes(y, 1);

  LogisticModel model{VectorXd::Zero(X.cols()), 0.0};
  for (int t = 0; t < cfg.iterations; ++t) {
    const LinearGradient g = logistic_gradient(X, y, model.weights, model.bias, cfg.l2);
    model.weights -= cfg.rate * g.weights;
    model.bias -= cfg.rate * g.bias;
  }
  return model;
}

FldModel train_fld(const MatrixXd& X, const Labels& y, const FldConfig& cfg) {
  check_training_set(X, y);
  check_both_classes(y, 2);

  const Index d = X.cols();
  VectorXd means[2] = {VectorXd::Zero(d), VectorXd::Zero(d)};
  Index counts[2] = {0, 0};
  for (Index i = 0; i < X.rows(); ++i) {
    means[y[i]] += X.row(i).transpose();
    ++counts[y[i]];
  }
  means[0] /= static_cast<double>(counts[0]);
  means[1] /= static_cast<double>(counts[1]);

  MatrixXd scatter[2] = {MatrixXd::Zero(d, d), MatrixXd::Zero(d, d)};
  for (Index i = 0; i < X.rows(); ++i) {
    const VectorXd centered = X.row(i).transpose() - means[y[i]];
    scatter[y[i]].noalias() += centered * centered.transpose();
  }
  MatrixXd within = scatter[0] + scatter[1];
  const VectorXd mean_diff = means[1] - means[0];

  VectorXd w;
  if (cfg.ridge > 0.0) {
    const double trace = within.trace();
    const double ridge = trace > 0.0 ? cfg.ridge * trace / static_cast<double>(d) : cfg.ridge;
    within.diagonal().array() += ridge;
    Eigen::LDLT<MatrixXd> ldlt(within);
    if (ldlt.info() != Eigen::Success) {
      throw Error(Errc::SingularScatter, "within-class scatter factorization failed");
    }
    w = ldlt.solve(mean_diff);
  } else {
    Eigen::FullPivLU<MatrixXd> lu(within);
    if (!lu.isInvertible()) {
      throw Error(Errc::SingularScatter, "within-class scatter is singular and ridge is zero");
    }
    w = lu.solve(mean_diff);
  }
  if (!w.allFinite()) {
    throw Error(Errc::SingularScatter, "projection is not finite");
  }

  const double proj0 = w.dot(means[0]);
  const double proj1 = w.dot(means[1]);
  return {w, 0.5 * (proj0 + proj1), proj1 >= proj0 ? 1 : -1};
}

GaussianNbModel train_gaussian_nb(const MatrixXd& X, const Labels& y,
                                  const NaiveBayesConfig& cfg) {
  check_training_set(X, y);
  check_both_classes(y, 1);

  const Index d = X.cols();
  GaussianNbModel model;
  model.means = MatrixXd::Zero(2, d);
  model.variances = MatrixXd::Zero(2, d);
  Eigen::Vector2d counts = Eigen::Vector2d::Zero();
  for (Index i = 0; i < X.rows(); ++i) {
    model.means.row(y[i]) += X.row(i);
    counts[y[i]] += 1.0;
  }
  for (int c = 0; c < 2; ++c) model.means.row(c) /= counts[c];
  for (Index i = 0; i < X.rows(); ++i) {
    model.variances.row(y[i]) += (X.row(i) - model.means.row(y[i])).array().square().matrix();
  }
  for (int c = 0; c < 2; ++c) model.variances.row(c) /= counts[c];

  const Eigen::RowVectorXd overall_mean = X.colwise().mean();
  const double max_variance = ((X.rowwise() - overall_mean).array().square().colwise().sum() /
                               static_cast<double>(X.rows()))
                                  .maxCoeff();
  const double floor = max_variance > 0.0 ? cfg.var_smoothing * max_variance : cfg.var_smoothing;
  model.variances = model.variances.cwiseMax(floor);
  model.priors = counts / static_cast<double>(X.rows());
  return model;
}

KnnModel train_knn(const MatrixXd& X, const Labels& y, const KnnConfig& cfg) {
  check_training_set(X, y);
  check_k(cfg.k, X.rows());
  return {X, y, cfg.k};
}

int knn_predict(const MatrixXd& train_X, const Labels& train_y,
                const Eigen::Ref<const Eigen::RowVectorXd>& query, int k) {
  if (train_X.rows() != train_y.size()) {
    throw Error(Errc::LengthMismatch, "training rows and labels differ in length");
  }
  check_k(k, train_X.rows());
  if (query.size() != train_X.cols()) {
    throw Error(Errc::WidthMismatch, "query width differs from training width");
  }
  return knn_vote_margin(train_X, train_y, query, k) > 0 ? 1 : 0;
}

TrainedModel train(ModelKind kind, const MatrixXd& X, const Labels& y, const TrainConfig& cfg) {
  switch (kind) {
    case ModelKind::Svm: return train_linear_svm(X, y, cfg.svm);
    case ModelKind::Logistic: return train_logistic_regression(X, y, cfg.logistic);
    case ModelKind::Fld: return train_fld(X, y, cfg.fld);
    case ModelKind::NaiveBayes: return train_gaussian_nb(X, y, cfg.nb);
    case ModelKind::Knn: return train_knn(X, y, cfg.knn);
  }
  throw Error(Errc::InvalidConfig, "unknown model kind");
}

VectorXd decision_scores(const TrainedModel& model, const MatrixXd& X) {
  check_width(X, feature_width(model));
  if (X.rows() == 0) return VectorXd(0);

  return std::visit(
      [&](const auto& m) -> VectorXd {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, LinearSvmModel> || std::is_same_v<M, LogisticModel>) {
          return (X * m.weights).array() + m.bias;
        } else if constexpr (std::is_same_v<M, FldModel>) {
          return m.sign * ((X * m.projection).array() - m.threshold);
        } else if constexpr (std::is_same_v<M, GaussianNbModel>) {
          VectorXd log_post[2];
          for (int c = 0; c < 2; ++c) {
            const Eigen::ArrayXd var = m.variances.row(c).transpose().array();
            const double log_norm = -0.5 * (2.0 * std::numbers::pi * var).log().sum();
            const Eigen::ArrayXXd centered = (X.rowwise() - m.means.row(c)).array();
            log_post[c] = (std::log(m.priors[c]) + log_norm -
                           0.5 * (centered.square().rowwise() / var.transpose()).rowwise().sum())
                              .matrix();
          }
          return log_post[1] - log_post[0];
        } else {
          VectorXd scores(X.rows());
          for (Index i = 0; i < X.rows(); ++i) {
            scores[i] = knn_vote_margin(m.features, m.labels, X.row(i), m.k);
          }
          return scores;
        }
      },
      model);
}

Labels predict(const TrainedModel& model, const MatrixXd& X) {
  return (decision_scores(model, X).array() > 0.0).cast<int>().matrix();
}

VectorXd predict_proba(const LogisticModel& model, const MatrixXd& X) {
  check_width(X, model.weights.size());
  return ((X * model.weights).array() + model.bias).unaryExpr([](double z) { return sigmoid(z); });
}

}  // namespace quatbench
