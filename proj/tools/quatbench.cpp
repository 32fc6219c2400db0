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

// quatbench: run the quaternion-vs-rotation-matrix classifier benchmark,
// export datasets, and re-score saved models.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "quatbench/error.hpp"
#include "quatbench/experiment.hpp"
#include "quatbench/io.hpp"

namespace {

using namespace quatbench;

constexpr int kUsageError = 2;
constexpr int kRuntimeError = 1;

struct RunOptions {
  std::string config_path;
  std::uint64_t seed = 42;
  Eigen::Index n = 1000;
  double test_fraction = 0.2;
  double val_fraction = 0.0;
  std::vector<std::string> models;
  std::vector<std::string> reps;
  std::string out;
  unsigned jobs = 0;
  bool quiet = false;
};

struct GenOptions {
  std::uint64_t seed = 42;
  Eigen::Index n = 1000;
  std::string rep = "quaternion";
  std::string format = "csv";
  std::string out;
};

struct ScoreOptions {
  std::string model_path;
  std::string data_path;
  std::string rep;
  std::string split = "all";
  std::uint64_t seed = 42;
  double test_fraction = 0.2;
  double val_fraction = 0.0;
};

// Defaults < config file < flags given on the command line.
ExperimentConfig resolve_config(const RunOptions& opt, const CLI::App& run) {
  ExperimentConfig cfg;
  if (!opt.config_path.empty()) {
    cfg = config_from_json(read_file(opt.config_path));
  }
  if (run.count("--seed")) cfg.seed = opt.seed;
  if (run.count("--n")) cfg.n_samples = opt.n;
  if (run.count("--test-fraction")) cfg.test_fraction = opt.test_fraction;
  if (run.count("--val-fraction")) cfg.validation_fraction = opt.val_fraction;
  if (run.count("--out")) cfg.out_dir = opt.out;
  if (run.count("--models")) {
    cfg.models.clear();
    for (const auto& m : opt.models) cfg.models.push_back(parse_model_kind(m));
  }
  if (run.count("--reps")) {
    cfg.representations.clear();
    for (const auto& r : opt.reps) cfg.representations.push_back(parse_representation(r));
  }
  cfg.validate();
  return cfg;
}

int run_command(const RunOptions& opt, const CLI::App& run) {
  const ExperimentConfig cfg = resolve_config(opt, run);
  const ExperimentResult result = run_experiment(cfg, opt.jobs);
  write_outputs(result, cfg.out_dir);
  if (!opt.quiet) {
    std::cout << emit_table(result, TableFormat::Pretty);
    std::cout << "wrote results to " << cfg.out_dir << "\n";
  }
  return 0;
}

int gen_command(const GenOptions& opt) {
  const Dataset data = generate_dataset(opt.n, opt.seed, parse_representation(opt.rep));
  const std::string text = opt.format == "json" ? to_json(data) : to_csv(data);
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    write_file(opt.out, text);
  }
  return 0;
}

int score_command(const ScoreOptions& opt) {
  const TrainedModel model = model_from_json(read_file(opt.model_path));
  const std::string text = read_file(opt.data_path);
  const bool is_json = std::filesystem::path(opt.data_path).extension() == ".json";
  Dataset data = is_json ? dataset_from_json(text) : dataset_from_csv(text);
  if (!opt.rep.empty() && parse_representation(opt.rep) == Representation::Matrix) {
    data = refeaturize(data, Representation::Matrix);
  }

  Eigen::MatrixXd X = data.features;
  Labels y = data.labels;
  if (opt.split == "test") {
    const SplitDataset split = split_dataset(data, opt.test_fraction, opt.val_fraction, opt.seed);
    X = select_rows(data.features, split.test);
    y = select_rows(data.labels, split.test);
  }
  const MetricsReport report = evaluate_model(model, X, y);
  std::cout << metrics_csv_header() << "\n" << to_csv_row(report) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quaternion vs rotation-matrix features for classical classifiers"};
  app.name("quatbench");
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "Run the full experiment and write tables, curves and models");
  run->add_option("--config", run_opt.config_path, "JSON experiment config")->check(CLI::ExistingFile);
  run->add_option("--seed", run_opt.seed, "Experiment seed (default 42)");
  run->add_option("--n", run_opt.n, "Number of random quaternions (default 1000)");
  run->add_option("--test-fraction", run_opt.test_fraction, "Test share (default 0.2)");
  run->add_option("--val-fraction", run_opt.val_fraction, "Validation share (default 0)");
  run->add_option("--models", run_opt.models, "Comma-separated subset of svm,logistic,fld,nb,knn")
      ->delimiter(',');
  run->add_option("--reps", run_opt.reps, "Comma-separated subset of quaternion,matrix")
      ->delimiter(',');
  run->add_option("--out", run_opt.out, "Output directory (default results)");
  run->add_option("--jobs", run_opt.jobs, "Worker threads, 0 = all cores (default 0)");
  run->add_flag("--quiet", run_opt.quiet, "Do not print the table");

  GenOptions gen_opt;
  auto* gen = app.add_subcommand("gen", "Generate and export a labeled random dataset");
  gen->add_option("--seed", gen_opt.seed, "Seed (default 42)");
  gen->add_option("--n", gen_opt.n, "Number of samples (default 1000)");
  gen->add_option("--rep", gen_opt.rep, "quaternion or matrix")
      ->check(CLI::IsMember({"quaternion", "matrix"}));
  gen->add_option("--format", gen_opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  gen->add_option("--out", gen_opt.out, "Output file (default stdout)");

  ScoreOptions score_opt;
  auto* score = app.add_subcommand("score", "Score a saved model against a dataset file");
  score->add_option("--model", score_opt.model_path, "Model JSON")->required()->check(CLI::ExistingFile);
  score->add_option("--data", score_opt.data_path, "Dataset CSV or JSON")->required()->check(CLI::ExistingFile);
  score->add_option("--rep", score_opt.rep, "Convert quaternion columns to this layout first")
      ->check(CLI::IsMember({"quaternion", "matrix"}));
  score->add_option("--split", score_opt.split, "all rows, or the test split of --seed")
      ->check(CLI::IsMember({"all", "test"}));
  score->add_option("--seed", score_opt.seed, "Split seed (default 42)");
  score->add_option("--test-fraction", score_opt.test_fraction, "Test share (default 0.2)");
  score->add_option("--val-fraction", score_opt.val_fraction, "Validation share (default 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    const CLI::App* failed = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    std::cerr << failed->help();
    return kUsageError;
  }

  try {
    if (*run) return run_command(run_opt, *run);
    if (*gen) return gen_command(gen_opt);
    if (*score) return score_command(score_opt);
  } catch (const quatbench::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kUsageError;
}
