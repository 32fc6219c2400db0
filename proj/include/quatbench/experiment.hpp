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

// End-to-end experiment: one shared random dataset, both feature layouts,
// every selected classifier, the metrics table and learning curves.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "quatbench/classifiers.hpp"
#include "quatbench/dataset.hpp"
#include "quatbench/metrics.hpp"

namespace quatbench {

struct ExperimentConfig {
  Eigen::Index n_samples = 1000;
  std::uint64_t seed = 42;
  double test_fraction = 0.2;
  double validation_fraction = 0.0;
  TrainConfig train;
  std::vector<Representation> representations{Representation::Quaternion,
                                              Representation::Matrix};
  std::vector<ModelKind> models{ModelKind::Svm, ModelKind::Logistic, ModelKind::Fld,
                                ModelKind::NaiveBayes, ModelKind::Knn};
  // Empty disables learning curves.
  std::vector<double> curve_fractions{0.2, 0.4, 0.6, 0.8, 1.0};
  std::string out_dir = "results";

  // Throws Error(InvalidConfig / InvalidCount / InvalidFraction).
  void validate() const;
  bool operator==(const ExperimentConfig&) const = default;
};

// The echo written next to results leaves out out_dir, so the same experiment
// produces the same bytes wherever it is written.
std::string to_json(const ExperimentConfig& cfg, bool include_out_dir = true);

// Keys missing from the document keep the values already in base.
// Unknown keys are rejected.
ExperimentConfig config_from_json(std::string_view text, ExperimentConfig base = {});

struct TableRow {
  ModelKind model = ModelKind::Svm;
  Representation representation = Representation::Quaternion;
  MetricsReport metrics;
  std::vector<LearningCurvePoint> curve;
  bool operator==(const TableRow&) const = default;
};

struct ExperimentResult {
  ExperimentConfig config;
  // Model-major order: for each model, one row per representation.
  std::vector<TableRow> rows;
  // Parallel to rows.
  std::vector<TrainedModel> trained;
  std::vector<double> wall_seconds;
  // Quaternion-layout samples shared by every row, and the split used.
  Dataset dataset;
  SplitDataset split;
};

// Cells run on up to `jobs` threads (0 picks the hardware concurrency).
// Output does not depend on the number of jobs.
ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned jobs = 1);

std::string display_name(ModelKind model);
std::string display_name(ModelKind model, Representation rep);

enum class TableFormat { Csv, Json, Pretty };

std::string emit_table(const ExperimentResult& result, TableFormat format);

// Reads back the config and rows of a table.json document.
ExperimentResult result_from_json(std::string_view text);

// train_size,train_score,eval_score
std::string curve_csv(const TableRow& row);

// Writes table.csv, table.json, config.json, dataset.csv, timings.csv,
// curves/<model>_<rep>.csv and models/<model>_<rep>.json under dir.
// Everything except timings.csv is a pure function of the config.
void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir);

}  // namespace quatbench
