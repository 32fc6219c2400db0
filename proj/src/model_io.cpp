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

// JSON serialization of trained models.

#include <vector>

#include "json.hpp"
#include "quatbench/classifiers.hpp"
#include "quatbench/error.hpp"

namespace quatbench {

using Eigen::Index;
using Json = nlohmann::ordered_json;

namespace {

Json vector_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Json rows_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::VectorXd vector_from(const nlohmann::json& j, Index expected) {
  const auto values = j.get<std::vector<double>>();
  if (static_cast<Index>(values.size()) != expected) {
    throw Error(Errc::WidthMismatch, "parameter array has length " +
                                         std::to_string(values.size()) + ", expected " +
                                         std::to_string(expected));
  }
  return Eigen::Map<const Eigen::VectorXd>(values.data(), expected);
}

Eigen::MatrixXd rows_from(const nlohmann::json& j, Index cols) {
  Eigen::MatrixXd m(static_cast<Index>(j.size()), cols);
  for (Index i = 0; i < m.rows(); ++i) {
    m.row(i) = vector_from(j.at(static_cast<std::size_t>(i)), cols).transpose();
  }
  return m;
}

}  // namespace

std::string to_json(const TrainedModel& model) {
  Json j;
  j["model"] = std::string(to_string(kind_of(model)));
  j["feature_width"] = feature_width(model);
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, LinearSvmModel> || std::is_same_v<M, LogisticModel>) {
          j["weights"] = vector_json(m.weights);
          j["bias"] = m.bias;
        } else if constexpr (std::is_same_v<M, FldModel>) {
          j["projection"] = vector_json(m.projection);
          j["threshold"] = m.threshold;
          j["sign"] = m.sign;
        } else if constexpr (std::is_same_v<M, GaussianNbModel>) {
          j["priors"] = vector_json(m.priors);
          j["means"] = rows_json(m.means);
          j["variances"] = rows_json(m.variances);
        } else {
          j["k"] = m.k;
          j["features"] = rows_json(m.features);
          j["labels"] = std::vector<int>(m.labels.data(), m.labels.data() + m.labels.size());
        }
      },
      model);
  return j.dump(2) + "\n";
}

TrainedModel model_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    const ModelKind kind = parse_model_kind(j.at("model").get<std::string>());
    const auto width = j.at("feature_width").get<Index>();
    switch (kind) {
      case ModelKind::Svm:
        return LinearSvmModel{vector_from(j.at("weights"), width), j.at("bias").get<double>()};
      case ModelKind::Logistic:
        return LogisticModel{vector_from(j.at("weights"), width), j.at("bias").get<double>()};
      case ModelKind::Fld: {
        const int sign = j.at("sign").get<int>();
        if (sign != 1 && sign != -1) throw Error(Errc::Parse, "fld sign must be +1 or -1");
        return FldModel{vector_from(j.at("projection"), width), j.at("threshold").get<double>(),
                        sign};
      }
      case ModelKind::NaiveBayes: {
        GaussianNbModel m;
        m.priors = vector_from(j.at("priors"), 2);
        m.means = rows_from(j.at("means"), width);
        m.variances = rows_from(j.at("variances"), width);
        if (m.means.rows() != 2 || m.variances.rows() != 2) {
          throw Error(Errc::Parse, "naive Bayes model needs two class rows");
        }
        if ((m.variances.array() <= 0.0).any()) {
          throw Error(Errc::Parse, "naive Bayes variances must be positive");
        }
        return m;
      }
      case ModelKind::Knn: {
        KnnModel m;
        m.k = j.at("k").get<int>();
        m.features = rows_from(j.at("features"), width);
        const auto labels = j.at("labels").get<std::vector<int>>();
        if (static_cast<Index>(labels.size()) != m.features.rows()) {
          throw Error(Errc::LengthMismatch, "knn features and labels differ in length");
        }
        m.labels = Eigen::Map<const Labels>(labels.data(), static_cast<Index>(labels.size()));
        if (m.k < 1 || m.k > m.features.rows()) {
          throw Error(Errc::InvalidK, "stored k is out of range");
        }
        return m;
      }
    }
    throw Error(Errc::Parse, "unknown model kind");
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, std::string("model JSON: ") + e.what());
  }
}

}  // namespace quatbench
