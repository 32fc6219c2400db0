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

// Synthetic rotation datasets, their two feature layouts, and seeded
// train/validation/test partitioning.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "quatbench/quaternion.hpp"

namespace quatbench {

using Labels = Eigen::VectorXi;
using IndexList = std::vector<Eigen::Index>;

enum class Representation { Quaternion, Matrix };

std::string_view to_string(Representation rep);
Representation parse_representation(std::string_view name);
Eigen::Index feature_width(Representation rep);

// Feature rows with binary labels in {0, 1}.
struct Dataset {
  Eigen::MatrixXd features;
  Labels labels;
  std::uint64_t seed = 0;

  Eigen::Index size() const { return features.rows(); }
  Eigen::Index width() const { return features.cols(); }

  // Throws Error(LengthMismatch/DegenerateData) if the invariants do not hold.
  void validate() const;

  bool operator==(const Dataset& other) const;
};

// Index lists partitioning 0..n-1.
struct SplitDataset {
  IndexList train;
  IndexList validation;
  IndexList test;
  std::uint64_t seed = 0;
  double test_fraction = 0.2;
  double validation_fraction = 0.0;
};

// n quaternions with i.i.d. components on [0, 1). Never emits the zero quaternion.
std::vector<Quaterniond> generate_quaternions(Eigen::Index n, std::uint64_t seed);

// n labels, i.i.d. uniform on {0, 1}, drawn from a stream independent of the features.
Labels assign_labels(Eigen::Index n, std::uint64_t seed);

Eigen::Vector4d featurize_quaternion(const Quaterniond& q);

// Row-major flattening of to_rotation_matrix(q).
Eigen::Matrix<double, 9, 1> featurize_matrix(const Quaterniond& q);

Dataset make_dataset(std::span<const Quaterniond> quaternions, const Labels& labels,
                     Representation rep, std::uint64_t seed = 0);

Dataset generate_dataset(Eigen::Index n, std::uint64_t seed, Representation rep);

// Recovers the quaternions stored in a width-4 dataset.
std::vector<Quaterniond> quaternions_of(const Dataset& dataset);

// Re-featurizes a quaternion-layout dataset into the requested layout.
Dataset refeaturize(const Dataset& quaternion_dataset, Representation rep);

// Shuffles 0..n-1 with the seed's shuffle stream, then takes test first,
// validation next and leaves the rest for training.
SplitDataset split_dataset(Eigen::Index n, double test_fraction, double validation_fraction,
                           std::uint64_t seed);
SplitDataset split_dataset(const Dataset& dataset, double test_fraction,
                           double validation_fraction, std::uint64_t seed);

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& features, std::span<const Eigen::Index> rows);
Labels select_rows(const Labels& labels, std::span<const Eigen::Index> rows);

// CSV with header f0,...,f{w-1},label.
std::string to_csv(const Dataset& dataset);
Dataset dataset_from_csv(std::string_view text);

std::string to_json(const Dataset& dataset);
Dataset dataset_from_json(std::string_view text);

}  // namespace quatbench
