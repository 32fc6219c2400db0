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

#include "quatbench/dataset.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "quatbench/error.hpp"
#include "quatbench/io.hpp"
#include "quatbench/random.hpp"

namespace quatbench {

using Eigen::Index;

std::string_view to_string(Representation rep) {
  return rep == Representation::Quaternion ? "quaternion" : "matrix";
}

Representation parse_representation(std::string_view name) {
  if (name == "quaternion") return Representation::Quaternion;
  if (name == "matrix") return Representation::Matrix;
  throw Error(Errc::InvalidConfig, "unknown representation '" + std::string(name) + "'");
}

Index feature_width(Representation rep) { return rep == Representation::Quaternion ? 4 : 9; }

void Dataset::validate() const {
  if (labels.size() != features.rows()) {
    throw Error(Errc::LengthMismatch, "dataset has " + std::to_string(features.rows()) +
                                          " rows but " + std::to_string(labels.size()) +
                                          " labels");
  }
  if (!features.allFinite()) {
    throw Error(Errc::Parse, "dataset contains non-finite features");
  }
  for (Index i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) {
      throw Error(Errc::InvalidLabel, "label at row " + std::to_string(i) + " is " +
                                          std::to_string(labels[i]) + ", expected 0 or 1");
    }
  }
}

bool Dataset::operator==(const Dataset& other) const {
  return seed == other.seed && features.rows() == other.features.rows() &&
         features.cols() == other.features.cols() && labels.size() == other.labels.size() &&
         features == other.features && labels == other.labels;
}

std::vector<Quaterniond> generate_quaternions(Index n, std::uint64_t seed) {
  if (n < 1) {
    throw Error(Errc::InvalidCount, "sample count must be at least 1");
  }
  Rng rng(seed, Stream::Features);
  std::vector<Quaterniond> out;
  out.reserve(static_cast<std::size_t>(n));
  while (static_cast<Index>(out.size()) < n) {
    Quaterniond q;
    q.w = rng.uniform();
    q.x = rng.uniform();
    q.y = rng.uniform();
    q.z = rng.uniform();
    if (squared_norm(q) > 0.0) {
      out.push_back(q);
    }
  }
  return out;
}

Labels assign_labels(Index n, std::uint64_t seed) {
  if (n < 1) {
    throw Error(Errc::InvalidCount, "sample count must be at least 1");
  }
  Rng rng(seed, Stream::Labels);
  Labels labels(n);
  for (Index i = 0; i < n; ++i) {
    labels[i] = static_cast<int>(rng.next() >> 63);
  }
  return labels;
}

Eigen::Vector4d featurize_quaternion(const Quaterniond& q) { return q.coeffs(); }

Eigen::Matrix<double, 9, 1> featurize_matrix(const Quaterniond& q) {
  const RotationMatrix3d r = to_rotation_matrix(q);
  // Row-major storage, so the raw buffer is already the flattening we want.
  return Eigen::Map<const Eigen::Matrix<double, 9, 1>>(r.data());
}

Dataset make_dataset(std::span<const Quaterniond> quaternions, const Labels& labels,
                     Representation rep, std::uint64_t seed) {
  const auto n = static_cast<Index>(quaternions.size());
  if (labels.size() != n) {
    throw Error(Errc::LengthMismatch, "quaternion and label counts differ");
  }
  Dataset d;
  d.seed = seed;
  d.labels = labels;
  d.features.resize(n, feature_width(rep));
  for (Index i = 0; i < n; ++i) {
    const auto& q = quaternions[static_cast<std::size_t>(i)];
    if (rep == Representation::Quaternion) {
      d.features.row(i) = featurize_quaternion(q).transpose();
    } else {
      d.features.row(i) = featurize_matrix(q).transpose();
    }
  }
  return d;
}

Dataset generate_dataset(Index n, std::uint64_t seed, Representation rep) {
  const auto quaternions = generate_quaternions(n, seed);
  return make_dataset(quaternions, assign_labels(n, seed), rep, seed);
}

std::vector<Quaterniond> quaternions_of(const Dataset& dataset) {
  if (dataset.width() != 4) {
    throw Error(Errc::WidthMismatch, "expected a width-4 quaternion dataset, got width " +
                                         std::to_string(dataset.width()));
  }
  std::vector<Quaterniond> out;
  out.reserve(static_cast<std::size_t>(dataset.size()));
  for (Index i = 0; i < dataset.size(); ++i) {
    const auto row = dataset.features.row(i);
    out.push_back({row(0), row(1), row(2), row(3)});
  }
  return out;
}

Dataset refeaturize(const Dataset& quaternion_dataset, Representation rep) {
  const auto quaternions = quaternions_of(quaternion_dataset);
  return make_dataset(quaternions, quaternion_dataset.labels, rep, quaternion_dataset.seed);
}

SplitDataset split_dataset(Index n, double test_fraction, double validation_fraction,
                           std::uint64_t seed) {
  if (n < 1) {
    throw Error(Errc::InvalidCount, "cannot split an empty dataset");
  }
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw Error(Errc::InvalidFraction, "test fraction must lie in (0, 1)");
  }
  if (!(validation_fraction >= 0.0 && validation_fraction < 1.0 - test_fraction)) {
    throw Error(Errc::InvalidFraction,
                "validation fraction must lie in [0, 1 - test fraction)");
  }
  const auto n_test = static_cast<Index>(std::llround(test_fraction * static_cast<double>(n)));
  const auto n_val =
      static_cast<Index>(std::llround(validation_fraction * static_cast<double>(n)));
  if (n - n_test - n_val < 1) {
    throw Error(Errc::InvalidFraction, "fractions leave no training samples");
  }

  IndexList order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  Rng rng(seed, Stream::Shuffle);
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    std::swap(order[i], order[rng.below(i + 1)]);
  }

  SplitDataset split;
  split.seed = seed;
  split.test_fraction = test_fraction;
  split.validation_fraction = validation_fraction;
  const auto test_end = order.begin() + n_test;
  const auto val_end = test_end + n_val;
  split.test.assign(order.begin(), test_end);
  split.validation.assign(test_end, val_end);
  split.train.assign(val_end, order.end());
  return split;
}

SplitDataset split_dataset(const Dataset& dataset, double test_fraction,
                           double validation_fraction, std::uint64_t seed) {
  return split_dataset(dataset.size(), test_fraction, validation_fraction, seed);
}

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& features, std::span<const Index> rows) {
  Eigen::MatrixXd out(static_cast<Index>(rows.size()), features.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Index>(i)) = features.row(rows[i]);
  }
  return out;
}

Labels select_rows(const Labels& labels, std::span<const Index> rows) {
  Labels out(static_cast<Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out[static_cast<Index>(i)] = labels[rows[i]];
  }
  return out;
}

std::string to_csv(const Dataset& dataset) {
  std::string out;
  for (Index j = 0; j < dataset.width(); ++j) {
    out += "f" + std::to_string(j) + ",";
  }
  out += "label\n";
  for (Index i = 0; i < dataset.size(); ++i) {
    for (Index j = 0; j < dataset.width(); ++j) {
      out += format_number(dataset.features(i, j));
      out += ',';
    }
    out += std::to_string(dataset.labels[i]);
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

int parse_label(std::string_view text, Index row) {
  const double value = parse_number(text);
  if (value != 0.0 && value != 1.0) {
    throw Error(Errc::InvalidLabel, "row " + std::to_string(row) + ": label must be 0 or 1");
  }
  return static_cast<int>(value);
}

}  // namespace

Dataset dataset_from_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    start = end + 1;
  }
  if (lines.empty()) {
    throw Error(Errc::Parse, "empty dataset CSV");
  }
  const auto header = split_fields(lines.front());
  const auto width = static_cast<Index>(header.size()) - 1;
  if (width < 1 || header.back() != "label") {
    throw Error(Errc::Parse, "dataset CSV header must be f0,...,label");
  }
  for (Index j = 0; j < width; ++j) {
    if (header[static_cast<std::size_t>(j)] != "f" + std::to_string(j)) {
      throw Error(Errc::Parse, "unexpected column '" +
                                   std::string(header[static_cast<std::size_t>(j)]) + "'");
    }
  }

  Dataset d;
  const auto n = static_cast<Index>(lines.size()) - 1;
  d.features.resize(n, width);
  d.labels.resize(n);
  for (Index i = 0; i < n; ++i) {
    const auto fields = split_fields(lines[static_cast<std::size_t>(i + 1)]);
    if (static_cast<Index>(fields.size()) != width + 1) {
      throw Error(Errc::Parse, "row " + std::to_string(i) + " has " +
                                   std::to_string(fields.size()) + " fields, expected " +
                                   std::to_string(width + 1));
    }
    for (Index j = 0; j < width; ++j) {
      d.features(i, j) = parse_number(fields[static_cast<std::size_t>(j)]);
    }
    d.labels[i] = parse_label(fields.back(), i);
  }
  d.validate();
  return d;
}

std::string to_json(const Dataset& dataset) {
  nlohmann::ordered_json j;
  j["seed"] = dataset.seed;
  j["feature_width"] = dataset.width();
  auto& rows = j["features"] = nlohmann::ordered_json::array();
  for (Index i = 0; i < dataset.size(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (Index c = 0; c < dataset.width(); ++c) row.push_back(dataset.features(i, c));
    rows.push_back(std::move(row));
  }
  j["labels"] = std::vector<int>(dataset.labels.data(), dataset.labels.data() + dataset.size());
  return j.dump(2) + "\n";
}

Dataset dataset_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    Dataset d;
    d.seed = j.at("seed").get<std::uint64_t>();
    const auto width = j.at("feature_width").get<Index>();
    const auto& rows = j.at("features");
    const auto labels = j.at("labels").get<std::vector<int>>();
    const auto n = static_cast<Index>(rows.size());
    if (static_cast<Index>(labels.size()) != n) {
      throw Error(Errc::LengthMismatch, "feature and label counts differ");
    }
    d.features.resize(n, width);
    d.labels.resize(n);
    for (Index i = 0; i < n; ++i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      if (static_cast<Index>(row.size()) != width) {
        throw Error(Errc::WidthMismatch, "row " + std::to_string(i) + " has wrong width");
      }
      for (Index c = 0; c < width; ++c) d.features(i, c) = row[static_cast<std::size_t>(c)];
      d.labels[i] = labels[static_cast<std::size_t>(i)];
    }
    d.validate();
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, std::string("dataset JSON: ") + e.what());
  }
}

}  // namespace quatbench
