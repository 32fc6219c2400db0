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

#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "quatbench/error.hpp"
#include "test_support.hpp"

namespace quatbench {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using testing::LabeledData;

template <typename F>
Errc error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no Error thrown";
  return Errc::Io;
}

LabeledData one_dimensional(std::initializer_list<double> zeros, std::initializer_list<double> ones) {
  LabeledData d{MatrixXd(static_cast<Index>(zeros.size() + ones.size()), 1), Labels()};
  d.y.resize(d.X.rows());
  Index i = 0;
  for (double v : zeros) { d.X(i, 0) = v; d.y[i++] = 0; }
  for (double v : ones) { d.X(i, 0) = v; d.y[i++] = 1; }
  return d;
}

MatrixXd random_points(Index n, Index d, unsigned seed, double spread = 3.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-spread, spread);
  MatrixXd X(n, d);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < d; ++j) X(i, j) = u(rng);
  return X;
}

const TrainConfig kDefaults{};

constexpr ModelKind kAllKinds[] = {ModelKind::Svm, ModelKind::Logistic, ModelKind::Fld,
                                   ModelKind::NaiveBayes, ModelKind::Knn};

// --- Linear SVM -------------------------------------------------------------

TEST(LinearSvm, OneDimensionalBoundary) {
  const LabeledData d = one_dimensional({-2, -1}, {1, 2});
  const LinearSvmModel m = train_linear_svm(d.X, d.y, kDefaults.svm);
  ASSERT_GT(m.weights[0], 0.0);
  const double crossing = -m.bias / m.weights[0];
  EXPECT_GT(crossing, -1.0);
  EXPECT_LT(crossing, 1.0);
  EXPECT_EQ(testing::training_accuracy(m, d), 1.0);
}

TEST(LinearSvm, RandomLabelsStayNearChance) {
  const Dataset data = generate_dataset(1000, 42, Representation::Quaternion);
  const SplitDataset split = split_dataset(data, 0.2, 0.0, 42);
  const TrainedModel m = train_linear_svm(select_rows(data.features, split.train),
                                          select_rows(data.labels, split.train), kDefaults.svm);
  const Labels pred = predict(m, select_rows(data.features, split.test));
  const double acc = (pred.array() == select_rows(data.labels, split.test).array()).cast<double>().mean();
  EXPECT_GE(acc, 0.38);
  EXPECT_LE(acc, 0.62);
}

TEST(LinearSvm, DuplicatedSamplesGiveSameDecisionFunction) {
  const LabeledData d = testing::separable_data(100, 4, 3);
  LabeledData doubled{MatrixXd(200, 4), Labels(200)};
  doubled.X << d.X, d.X;
  doubled.y << d.y, d.y;
  const TrainedModel a = train_linear_svm(d.X, d.y, kDefaults.svm);
  const TrainedModel b = train_linear_svm(doubled.X, doubled.y, kDefaults.svm);
  const MatrixXd queries = random_points(500, 4, 4);
  EXPECT_LE((decision_scores(a, queries) - decision_scores(b, queries)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(LinearSvm, SubgradientMatchesFiniteDifferences) {
  const auto check = testing::check_hinge_subgradient(31, 20);
  EXPECT_EQ(check.points, 20);
  EXPECT_LE(check.worst_relative_error, 1e-5);
}

TEST(LinearSvm, ObjectiveDecreasesOverWindows) {
  const LabeledData d = testing::separable_data(200, 4, 5);
  std::vector<double> trace;
  const LinearSvmModel m = train_linear_svm(d.X, d.y, kDefaults.svm, &trace);
  ASSERT_EQ(trace.size(), static_cast<std::size_t>(kDefaults.svm.iterations) + 1);
  // The best objective seen within each 50-iteration window never increases
  // from one window to the next.
  double previous = trace.front();
  for (std::size_t start = 0; start + 50 <= trace.size(); start += 50) {
    const double window_best = *std::min_element(trace.begin() + start, trace.begin() + start + 50);
    EXPECT_LE(window_best, previous + 1e-12) << "window at " << start;
    previous = window_best;
  }
  const double best = *std::min_element(trace.begin(), trace.end());
  EXPECT_EQ(hinge_objective(d.X, d.y, m.weights, m.bias, kDefaults.svm.lambda), best);
  EXPECT_LT(best, trace.front());
}

TEST(LinearSvm, RequiresBothClasses) {
  const LabeledData d = one_dimensional({-2, -1, 0}, {});
  EXPECT_EQ(error_code_of([&] { train_linear_svm(d.X, d.y, kDefaults.svm); }), Errc::DegenerateData);
}

// --- Logistic regression ----------------------------------------------------

TEST(LogisticRegression, GradientMatchesFiniteDifferences) {
  const auto check = testing::check_logistic_gradient(37, 20);
  EXPECT_EQ(check.points, 20);
  EXPECT_LE(check.worst_relative_error, 1e-5);
}

TEST(LogisticRegression, SymmetricDataIsUndecidedAtOrigin) {
  const LabeledData d = one_dimensional({-1.5, -1.0, -0.5}, {0.5, 1.0, 1.5});
  const LogisticModel m = train_logistic_regression(d.X, d.y, kDefaults.logistic);
  const VectorXd p = predict_proba(m, MatrixXd::Zero(1, 1));
  EXPECT_NEAR(p[0], 0.5, 0.05);
}

TEST(LogisticRegression, SeparatesOneDimensionalData) {
  const LabeledData d = one_dimensional({-2, -1.5, -1}, {1, 1.5, 2});
  EXPECT_EQ(testing::training_accuracy(train_logistic_regression(d.X, d.y, kDefaults.logistic), d), 1.0);
}

TEST(LogisticRegression, ZeroModelPredictsOneHalf) {
  const LogisticModel zero{VectorXd::Zero(3), 0.0};
  const VectorXd p = predict_proba(zero, random_points(5, 3, 1));
  EXPECT_TRUE((p.array() == 0.5).all());
}

TEST(LogisticRegression, ProbabilitiesInOpenUnitInterval) {
  const LabeledData d = testing::separable_data(200, 4, 8);
  const LogisticModel m = train_logistic_regression(d.X, d.y, kDefaults.logistic);
  const VectorXd p = predict_proba(m, random_points(1000, 4, 9));
  EXPECT_TRUE((p.array() > 0.0).all());
  EXPECT_TRUE((p.array() < 1.0).all());
  EXPECT_EQ(sigmoid(0.0), 0.5);
  EXPECT_NEAR(sigmoid(-800.0), 0.0, 1e-300);
}

// --- Fisher linear discriminant ---------------------------------------------

TEST(Fld, ProjectionParallelToMeanDifferenceForIsotropicScatter) {
  // Each class is a symmetric cross around its mean, so S_W is exactly 4I.
  const Eigen::Vector2d mu0(-1.0, 0.5), mu1(2.0, 1.5);
  MatrixXd X(8, 2);
  Labels y(8);
  const Eigen::Vector2d offsets[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (int i = 0; i < 4; ++i) {
    X.row(i) = (mu0 + offsets[i]).transpose();
    X.row(4 + i) = (mu1 + offsets[i]).transpose();
    y[i] = 0;
    y[4 + i] = 1;
  }
  const FldModel m = train_fld(X, y, kDefaults.fld);
  const Eigen::Vector2d diff = mu1 - mu0;
  const double cos_angle = m.projection.dot(diff) / (m.projection.norm() * diff.norm());
  EXPECT_LE(std::acos(std::min(1.0, cos_angle)), 1e-6);
  EXPECT_EQ(m.sign, 1);
  EXPECT_NEAR(m.threshold, 0.5 * (m.projection.dot(mu0) + m.projection.dot(mu1)), 1e-12);
}

TEST(Fld, UniformScalingKeepsPredictions) {
  const LabeledData d = testing::random_label_data(300, 9, 12);
  const TrainedModel base = train_fld(d.X, d.y, kDefaults.fld);
  const MatrixXd queries = random_points(1000, 9, 13);
  for (const double c : {4.0, 3.7, 0.01}) {
    const TrainedModel scaled = train_fld(c * d.X, d.y, kDefaults.fld);
    EXPECT_EQ(predict(base, queries), predict(scaled, c * queries)) << "c = " << c;
  }
}

TEST(Fld, SwappingClassesFlipsPredictions) {
  const LabeledData d = testing::random_label_data(300, 4, 14);
  const Labels swapped = 1 - d.y.array();
  const MatrixXd queries = random_points(1000, 4, 15);
  const Labels a = predict(train_fld(d.X, d.y, kDefaults.fld), queries);
  const Labels b = predict(train_fld(d.X, swapped, kDefaults.fld), queries);
  EXPECT_EQ(b, (1 - a.array()).matrix());
}

TEST(Fld, SingularScatterOnlyWithoutRidge) {
  LabeledData d = testing::random_label_data(50, 3, 16);
  d.X.col(2).setConstant(1.0);  // rank-deficient scatter
  EXPECT_NO_THROW(train_fld(d.X, d.y, kDefaults.fld));
  EXPECT_EQ(error_code_of([&] { train_fld(d.X, d.y, FldConfig{0.0}); }), Errc::SingularScatter);
}

TEST(Fld, NeedsTwoSamplesPerClass) {
  const LabeledData d = one_dimensional({-1, -2, -3}, {1});
  EXPECT_EQ(error_code_of([&] { train_fld(d.X, d.y, kDefaults.fld); }), Errc::DegenerateData);
}

TEST(Fld, HandlesCorrelatedRotationFeatures) {
  const Dataset data = generate_dataset(500, 2, Representation::Matrix);
  const FldModel m = train_fld(data.features, data.labels, kDefaults.fld);
  EXPECT_TRUE(m.projection.allFinite());
}

// --- Gaussian naive Bayes ---------------------------------------------------

TEST(GaussianNb, BoundaryBetweenSymmetricClasses) {
  const LabeledData d = one_dimensional({-1.5, -1.0, -0.5}, {0.5, 1.0, 1.5});
  const GaussianNbModel m = train_gaussian_nb(d.X, d.y, kDefaults.nb);
  MatrixXd q(3, 1);
  q << 0.5, -0.5, 0.0;
  const VectorXd s = decision_scores(m, q);
  EXPECT_GT(s[0], 0.0);
  EXPECT_LT(s[1], 0.0);
  EXPECT_NEAR(s[2], 0.0, 1e-12);
  EXPECT_EQ(predict(m, q.topRows(2)), (Labels(2) << 1, 0).finished());
}

TEST(GaussianNb, ExactTiesGoToClassZero) {
  // Both classes have identical samples, hence identical statistics and priors.
  const LabeledData d = one_dimensional({-1.0, 0.0, 2.0}, {-1.0, 0.0, 2.0});
  const GaussianNbModel m = train_gaussian_nb(d.X, d.y, kDefaults.nb);
  const MatrixXd q = random_points(100, 1, 17);
  EXPECT_TRUE((decision_scores(m, q).array() == 0.0).all());
  EXPECT_TRUE((predict(m, q).array() == 0).all());
}

TEST(GaussianNb, ConstantFeatureIsFloored) {
  LabeledData d = testing::random_label_data(60, 3, 18);
  d.X.col(1).setConstant(2.5);
  const GaussianNbModel m = train_gaussian_nb(d.X, d.y, kDefaults.nb);
  EXPECT_TRUE((m.variances.array() > 0.0).all());
  EXPECT_TRUE(decision_scores(m, random_points(10, 3, 19)).allFinite());
  EXPECT_NEAR(m.priors.sum(), 1.0, 1e-15);

  LabeledData flat = d;
  flat.X.setConstant(1.0);
  const GaussianNbModel f = train_gaussian_nb(flat.X, flat.y, kDefaults.nb);
  EXPECT_TRUE((f.variances.array() > 0.0).all());
}

TEST(GaussianNb, MatchesClosedFormPosterior) {
  const LabeledData d = testing::random_label_data(80, 2, 20);
  const GaussianNbModel m = train_gaussian_nb(d.X, d.y, kDefaults.nb);
  const Eigen::RowVector2d x(0.3, -0.7);
  double log_post[2];
  for (int c = 0; c < 2; ++c) {
    double lp = std::log(m.priors[c]);
    for (int j = 0; j < 2; ++j) {
      const double var = m.variances(c, j), mean = m.means(c, j);
      lp += std::log(std::exp(-(x[j] - mean) * (x[j] - mean) / (2 * var)) /
                     std::sqrt(2 * M_PI * var));
    }
    log_post[c] = lp;
  }
  EXPECT_NEAR(decision_scores(m, MatrixXd(x))[0], log_post[1] - log_post[0], 1e-12);
}

// --- KNN --------------------------------------------------------------------

TEST(Knn, SelfQueryWithKOne) {
  const LabeledData d = testing::random_label_data(40, 3, 21);
  for (Index i = 0; i < d.X.rows(); ++i) {
    EXPECT_EQ(knn_predict(d.X, d.y, d.X.row(i), 1), d.y[i]);
  }
}

TEST(Knn, FullKGivesGlobalMajority) {
  LabeledData d = testing::random_label_data(41, 3, 22);
  const int majority = d.y.sum() * 2 > d.y.size() ? 1 : 0;
  const int k = static_cast<int>(d.X.rows());
  EXPECT_EQ(knn_predict(d.X, d.y, random_points(1, 3, 23).row(0), k), majority);

  // An exact vote tie goes to class 0.
  const LabeledData even = one_dimensional({0.0, 1.0}, {2.0, 3.0});
  EXPECT_EQ(knn_predict(even.X, even.y, Eigen::RowVectorXd::Constant(1, 10.0), 4), 0);
}

TEST(Knn, DistanceTiesPreferLowerIndex) {
  MatrixXd X(3, 1);
  X << 1.0, -1.0, 5.0;
  Labels y(3);
  y << 1, 0, 0;
  EXPECT_EQ(knn_predict(X, y, Eigen::RowVectorXd::Zero(1), 1), 1);
  y << 0, 1, 1;
  EXPECT_EQ(knn_predict(X, y, Eigen::RowVectorXd::Zero(1), 1), 0);
}

TEST(Knn, MatchesBruteForceOracle) {
  const LabeledData d = testing::random_label_data(50, 4, 24);
  const MatrixXd queries = random_points(100, 4, 25);
  const TrainedModel m = train_knn(d.X, d.y, KnnConfig{5});
  const Labels pred = predict(m, queries);
  for (Index q = 0; q < queries.rows(); ++q) {
    const int expected = testing::brute_force_knn(d.X, d.y, queries.row(q), 5);
    EXPECT_EQ(knn_predict(d.X, d.y, queries.row(q), 5), expected);
    EXPECT_EQ(pred[q], expected);
  }
}

TEST(Knn, RejectsBadK) {
  const LabeledData d = testing::random_label_data(10, 2, 26);
  const Eigen::RowVectorXd q = Eigen::RowVectorXd::Zero(2);
  EXPECT_EQ(error_code_of([&] { knn_predict(d.X, d.y, q, 0); }), Errc::InvalidK);
  EXPECT_EQ(error_code_of([&] { knn_predict(d.X, d.y, q, 11); }), Errc::InvalidK);
  EXPECT_EQ(error_code_of([&] { train_knn(d.X, d.y, KnnConfig{11}); }), Errc::InvalidK);
}

// --- Uniform contract -------------------------------------------------------

TEST(Predict, AgreesWithScoreSign) {
  const LabeledData d = testing::random_label_data(200, 4, 27);
  const MatrixXd queries = random_points(1000, 4, 28);
  for (const auto kind : kAllKinds) {
    const TrainedModel m = train(kind, d.X, d.y, kDefaults);
    const VectorXd scores = decision_scores(m, queries);
    const Labels pred = predict(m, queries);
    for (Index i = 0; i < queries.rows(); ++i) {
      ASSERT_EQ(pred[i], scores[i] > 0.0 ? 1 : 0) << to_string(kind);
    }
  }
}

TEST(Predict, EmptyInputAndWidthMismatch) {
  const LabeledData d = testing::random_label_data(30, 4, 29);
  for (const auto kind : kAllKinds) {
    const TrainedModel m = train(kind, d.X, d.y, kDefaults);
    EXPECT_EQ(predict(m, MatrixXd(0, 4)).size(), 0);
    EXPECT_EQ(predict(m, MatrixXd(0, 0)).size(), 0);
    EXPECT_EQ(error_code_of([&] { predict(m, MatrixXd::Zero(3, 9)); }), Errc::WidthMismatch)
        << to_string(kind);
  }
}

TEST(Classifiers, SeparableDataIsLearned) {
  const LabeledData d = testing::separable_data(200, 4, 30);
  for (const auto kind : kAllKinds) {
    EXPECT_GE(testing::training_accuracy(train(kind, d.X, d.y, kDefaults), d), 0.95)
        << to_string(kind);
  }
}

TEST(Classifiers, TrainingOrderDoesNotMatter) {
  const LabeledData d = testing::random_label_data(200, 4, 31);
  std::vector<Index> perm(200);
  std::iota(perm.begin(), perm.end(), Index{0});
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(32));
  MatrixXd X(200, 4);
  Labels y(200);
  for (Index i = 0; i < 200; ++i) {
    X.row(i) = d.X.row(perm[static_cast<std::size_t>(i)]);
    y[i] = d.y[perm[static_cast<std::size_t>(i)]];
  }
  // Continuous random queries have no distance or vote ties with k = 5.
  const MatrixXd queries = random_points(1000, 4, 33);
  for (const auto kind : kAllKinds) {
    EXPECT_EQ(predict(train(kind, d.X, d.y, kDefaults), queries),
              predict(train(kind, X, y, kDefaults), queries))
        << to_string(kind);
  }
}

TEST(Classifiers, TrainingIsDeterministic) {
  const LabeledData d = testing::random_label_data(150, 9, 34);
  for (const auto kind : kAllKinds) {
    EXPECT_EQ(to_json(train(kind, d.X, d.y, kDefaults)), to_json(train(kind, d.X, d.y, kDefaults)));
  }
}

TEST(Classifiers, JsonRoundTripPreservesModel) {
  const LabeledData d = testing::random_label_data(120, 4, 35);
  const MatrixXd queries = random_points(300, 4, 36);
  for (const auto kind : kAllKinds) {
    const TrainedModel m = train(kind, d.X, d.y, kDefaults);
    const std::string text = to_json(m);
    const TrainedModel back = model_from_json(text);
    EXPECT_EQ(kind_of(back), kind);
    EXPECT_EQ(to_json(back), text);
    EXPECT_EQ(decision_scores(back, queries), decision_scores(m, queries));
  }
  EXPECT_EQ(error_code_of([] { model_from_json(R"({"model":"rbf","feature_width":1})"); }),
            Errc::InvalidConfig);
  EXPECT_EQ(error_code_of([] { model_from_json("not json"); }), Errc::Parse);
  EXPECT_EQ(error_code_of([] {
              model_from_json(R"({"model":"svm","feature_width":3,"weights":[1,2],"bias":0})");
            }),
            Errc::WidthMismatch);
}

TEST(TrainConfig, Validation) {
  EXPECT_NO_THROW(kDefaults.validate());
  TrainConfig bad;
  bad.svm.iterations = 0;
  EXPECT_EQ(error_code_of([&] { bad.validate(); }), Errc::InvalidConfig);
  bad = {};
  bad.logistic.rate = -0.1;
  EXPECT_EQ(error_code_of([&] { bad.validate(); }), Errc::InvalidConfig);
  bad = {};
  bad.knn.k = 0;
  EXPECT_EQ(error_code_of([&] { bad.validate(); }), Errc::InvalidConfig);
  bad = {};
  bad.fld.ridge = 0.0;
  EXPECT_NO_THROW(bad.validate());
}

TEST(ModelKind, Names) {
  for (const auto kind : kAllKinds) EXPECT_EQ(parse_model_kind(to_string(kind)), kind);
  EXPECT_EQ(error_code_of([] { parse_model_kind("rbf"); }), Errc::InvalidConfig);
}

}  // namespace
}  // namespace quatbench
