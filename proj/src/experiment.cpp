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

#include "quatbench/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "quatbench/error.hpp"
#include "quatbench/io.hpp"

namespace quatbench {

using Eigen::Index;
using Json = nlohmann::ordered_json;

void ExperimentConfig::validate() const {
  if (n_samples < 1) {
    throw Error(Errc::InvalidCount, "n_samples must be at least 1");
  }
  // Reuses the split's own fraction checks.
  split_dataset(n_samples, test_fraction, validation_fraction, seed);
  if (models.empty()) {
    throw Error(Errc::InvalidConfig, "at least one model is required");
  }
  if (representations.empty()) {
    throw Error(Errc::InvalidConfig, "at least one representation is required");
  }
  if (std::set<ModelKind>(models.begin(), models.end()).size() != models.size()) {
    throw Error(Errc::InvalidConfig, "duplicate model in model list");
  }
  if (std::set<Representation>(representations.begin(), representations.end()).size() !=
      representations.size()) {
    throw Error(Errc::InvalidConfig, "duplicate representation in representation list");
  }
  validate_curve_fractions(curve_fractions);
  train.validate();
}

std::string to_json(const ExperimentConfig& cfg, bool include_out_dir) {
  Json j;
  j["n_samples"] = cfg.n_samples;
  j["seed"] = cfg.seed;
  j["test_fraction"] = cfg.test_fraction;
  j["validation_fraction"] = cfg.validation_fraction;
  j["models"] = Json::array();
  for (const auto m : cfg.models) j["models"].push_back(std::string(to_string(m)));
  j["representations"] = Json::array();
  for (const auto r : cfg.representations) j["representations"].push_back(std::string(to_string(r)));
  j["curve_fractions"] = cfg.curve_fractions;
  j["train"] = {
      {"svm",
       {{"lambda", cfg.train.svm.lambda},
        {"iterations", cfg.train.svm.iterations},
        {"rate", cfg.train.svm.rate}}},
      {"logistic",
       {{"rate", cfg.train.logistic.rate},
        {"iterations", cfg.train.logistic.iterations},
        {"l2", cfg.train.logistic.l2}}},
      {"fld", {{"ridge", cfg.train.fld.ridge}}},
      {"nb", {{"var_smoothing", cfg.train.nb.var_smoothing}}},
      {"knn", {{"k", cfg.train.knn.k}}},
  };
  if (include_out_dir) j["out_dir"] = cfg.out_dir;
  return j.dump(2) + "\n";
}

namespace {

void reject_unknown(const nlohmann::json& j, std::initializer_list<std::string_view> keys,
                    const std::string& where) {
  if (!j.is_object()) {
    throw Error(Errc::InvalidConfig, where + " must be an object");
  }
  for (const auto& item : j.items()) {
    if (std::find(keys.begin(), keys.end(), item.key()) == keys.end()) {
      throw Error(Errc::InvalidConfig, "unknown config key '" + where + item.key() + "'");
    }
  }
}

template <typename T>
void read_if(const nlohmann::json& j, const char* key, T& target) {
  if (j.contains(key)) target = j.at(key).get<T>();
}

}  // namespace

ExperimentConfig config_from_json(std::string_view text, ExperimentConfig cfg) {
  try {
    const auto j = nlohmann::json::parse(text);
    reject_unknown(j,
                   {"n_samples", "seed", "test_fraction", "validation_fraction", "models",
                    "representations", "curve_fractions", "train", "out_dir"},
                   "");
    read_if(j, "n_samples", cfg.n_samples);
    read_if(j, "seed", cfg.seed);
    read_if(j, "test_fraction", cfg.test_fraction);
    read_if(j, "validation_fraction", cfg.validation_fraction);
    read_if(j, "curve_fractions", cfg.curve_fractions);
    read_if(j, "out_dir", cfg.out_dir);
    if (j.contains("models")) {
      cfg.models.clear();
      for (const auto& m : j.at("models")) cfg.models.push_back(parse_model_kind(m.get<std::string>()));
    }
    if (j.contains("representations")) {
      cfg.representations.clear();
      for (const auto& r : j.at("representations")) {
        cfg.representations.push_back(parse_representation(r.get<std::string>()));
      }
    }
    if (j.contains("train")) {
      const auto& t = j.at("train");
      reject_unknown(t, {"svm", "logistic", "fld", "nb", "knn"}, "train.");
      if (t.contains("svm")) {
        const auto& s = t.at("svm");
        reject_unknown(s, {"lambda", "iterations", "rate"}, "train.svm.");
        read_if(s, "lambda", cfg.train.svm.lambda);
        read_if(s, "iterations", cfg.train.svm.iterations);
        read_if(s, "rate", cfg.train.svm.rate);
      }
      if (t.contains("logistic")) {
        const auto& s = t.at("logistic");
        reject_unknown(s, {"rate", "iterations", "l2"}, "train.logistic.");
        read_if(s, "rate", cfg.train.logistic.rate);
        read_if(s, "iterations", cfg.train.logistic.iterations);
        read_if(s, "l2", cfg.train.logistic.l2);
      }
      if (t.contains("fld")) {
        reject_unknown(t.at("fld"), {"ridge"}, "train.fld.");
        read_if(t.at("fld"), "ridge", cfg.train.fld.ridge);
      }
      if (t.contains("nb")) {
        reject_unknown(t.at("nb"), {"var_smoothing"}, "train.nb.");
        read_if(t.at("nb"), "var_smoothing", cfg.train.nb.var_smoothing);
      }
      if (t.contains("knn")) {
        reject_unknown(t.at("knn"), {"k"}, "train.knn.");
        read_if(t.at("knn"), "k", cfg.train.knn.k);
      }
    }
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidConfig, std::string("config JSON: ") + e.what());
  }
}

std::string display_name(ModelKind model) {
  switch (model) {
    case ModelKind::Svm: return "SVM";
    case ModelKind::Logistic: return "Logistic Regression";
    case ModelKind::Fld: return "FLD";
    case ModelKind::NaiveBayes: return "Naive Bayes";
    case ModelKind::Knn: return "KNN";
  }
  return "?";
}

std::string display_name(ModelKind model, Representation rep) {
  return std::string(rep == Representation::Quaternion ? "Quaternion " : "Matrix ") +
         display_name(model);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned jobs) {
  cfg.validate();

  ExperimentResult result;
  result.config = cfg;
  const auto quaternions = generate_quaternions(cfg.n_samples, cfg.seed);
  const Labels labels = assign_labels(cfg.n_samples, cfg.seed);
  result.dataset = make_dataset(quaternions, labels, Representation::Quaternion, cfg.seed);
  result.split =
      split_dataset(cfg.n_samples, cfg.test_fraction, cfg.validation_fraction, cfg.seed);

  std::vector<Dataset> layouts;
  for (const auto rep : cfg.representations) {
    layouts.push_back(rep == Representation::Quaternion
                          ? result.dataset
                          : make_dataset(quaternions, labels, rep, cfg.seed));
  }

  const auto& split = result.split;
  const IndexList& eval_rows = split.validation.empty() ? split.test : split.validation;

  struct Cell {
    ModelKind model;
    std::size_t layout;
  };
  std::vector<Cell> cells;
  for (const auto model : cfg.models) {
    for (std::size_t r = 0; r < cfg.representations.size(); ++r) cells.push_back({model, r});
  }

  result.rows.resize(cells.size());
  result.trained.resize(cells.size());
  result.wall_seconds.resize(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());

  auto run_cell = [&](std::size_t c) {
    try {
      const auto start = std::chrono::steady_clock::now();
      const Cell& cell = cells[c];
      const Dataset& data = layouts[cell.layout];
      const Trainer trainer = [&](const Eigen::MatrixXd& X, const Labels& y) {
        return train(cell.model, X, y, cfg.train);
      };

      const Eigen::MatrixXd train_X = select_rows(data.features, split.train);
      const Labels train_y = select_rows(data.labels, split.train);
      TableRow& row = result.rows[c];
      row.model = cell.model;
      row.representation = cfg.representations[cell.layout];
      result.trained[c] = trainer(train_X, train_y);
      row.metrics = evaluate_model(result.trained[c], select_rows(data.features, split.test),
                                   select_rows(data.labels, split.test));
      if (!cfg.curve_fractions.empty()) {
        row.curve = learning_curve(trainer, data, split.train, eval_rows, cfg.curve_fractions);
      }
      result.wall_seconds[c] =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    } catch (...) {
      errors[c] = std::current_exception();
    }
  };

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(cells.size()));
  if (jobs <= 1) {
    for (std::size_t c = 0; c < cells.size(); ++c) run_cell(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < jobs; ++t) {
      workers.emplace_back([&] {
        for (std::size_t c = next++; c < cells.size(); c = next++) run_cell(c);
      });
    }
  }

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return result;
}

namespace {

Json metrics_json(const MetricsReport& m) {
  return {{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1},
          {"accuracy", m.accuracy},   {"mse", m.mse},       {"mae", m.mae},
          {"hmae", m.hmae},           {"hmse", m.hmse},     {"positive_class", m.positive_class},
          {"n_test", m.n_test}};
}

MetricsReport metrics_from(const nlohmann::json& j) {
  MetricsReport m;
  m.precision = j.at("precision").get<double>();
  m.recall = j.at("recall").get<double>();
  m.f1 = j.at("f1").get<double>();
  m.accuracy = j.at("accuracy").get<double>();
  m.mse = j.at("mse").get<double>();
  m.mae = j.at("mae").get<double>();
  m.hmae = j.at("hmae").get<double>();
  m.hmse = j.at("hmse").get<double>();
  m.positive_class = j.at("positive_class").get<int>();
  m.n_test = j.at("n_test").get<Index>();
  return m;
}

std::string table_csv(const ExperimentResult& result) {
  std::string out = "Model,Representation," + metrics_csv_header() + "\n";
  for (const auto& row : result.rows) {
    out += std::string(to_string(row.model)) + "," + std::string(to_string(row.representation)) +
           "," + to_csv_row(row.metrics) + "\n";
  }
  return out;
}

std::string table_json(const ExperimentResult& result) {
  Json j;
  j["config"] = Json::parse(to_json(result.config, false));
  j["rows"] = Json::array();
  for (const auto& row : result.rows) {
    Json r;
    r["model"] = std::string(to_string(row.model));
    r["representation"] = std::string(to_string(row.representation));
    r["metrics"] = metrics_json(row.metrics);
    r["curve"] = Json::array();
    for (const auto& p : row.curve) {
      r["curve"].push_back(
          {{"train_size", p.train_size}, {"train_score", p.train_score}, {"eval_score", p.eval_score}});
    }
    j["rows"].push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

std::string table_pretty(const ExperimentResult& result) {
  std::ostringstream out;
  const char* columns[] = {"Precision", "Recall", "F1-score", "Accuracy",
                           "MSE",       "MAE",    "HMAE",     "HMSE"};
  std::size_t name_width = 5;
  for (const auto& row : result.rows) {
    name_width = std::max(name_width, display_name(row.model, row.representation).size());
  }
  out << std::left << std::setw(static_cast<int>(name_width)) << "Model";
  for (const char* c : columns) out << "  " << std::right << std::setw(9) << c;
  out << '\n';
  out << std::fixed << std::setprecision(6);
  for (const auto& row : result.rows) {
    const auto& m = row.metrics;
    out << std::left << std::setw(static_cast<int>(name_width))
        << display_name(row.model, row.representation) << std::right;
    for (const double v : {m.precision, m.recall, m.f1, m.accuracy, m.mse, m.mae, m.hmae, m.hmse}) {
      out << "  " << std::setw(9) << v;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

std::string emit_table(const ExperimentResult& result, TableFormat format) {
  if (result.rows.empty()) {
    throw Error(Errc::EmptyInput, "experiment result has no rows");
  }
  switch (format) {
    case TableFormat::Csv: return table_csv(result);
    case TableFormat::Json: return table_json(result);
    case TableFormat::Pretty: return table_pretty(result);
  }
  throw Error(Errc::InvalidConfig, "unknown table format");
}

ExperimentResult result_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    ExperimentResult result;
    result.config = config_from_json(j.at("config").dump());
    for (const auto& r : j.at("rows")) {
      TableRow row;
      row.model = parse_model_kind(r.at("model").get<std::string>());
      row.representation = parse_representation(r.at("representation").get<std::string>());
      row.metrics = metrics_from(r.at("metrics"));
      for (const auto& p : r.at("curve")) {
        row.curve.push_back({p.at("train_size").get<Index>(), p.at("train_score").get<double>(),
                             p.at("eval_score").get<double>()});
      }
      result.rows.push_back(std::move(row));
    }
    return result;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, std::string("table JSON: ") + e.what());
  }
}

std::string curve_csv(const TableRow& row) {
  std::string out = "train_size,train_score,eval_score\n";
  for (const auto& p : row.curve) {
    out += std::to_string(p.train_size) + "," + format_number(p.train_score) + "," +
           format_number(p.eval_score) + "\n";
  }
  return out;
}

void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir) {
  write_file(dir / "table.csv", emit_table(result, TableFormat::Csv));
  write_file(dir / "table.json", emit_table(result, TableFormat::Json));
  write_file(dir / "config.json", to_json(result.config, false));
  write_file(dir / "dataset.csv", to_csv(result.dataset));

  std::string timings = "Model,Representation,wall_seconds\n";
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const auto& row = result.rows[i];
    const std::string stem =
        std::string(to_string(row.model)) + "_" + std::string(to_string(row.representation));
    if (!result.config.curve_fractions.empty()) {
      write_file(dir / "curves" / (stem + ".csv"), curve_csv(row));
    }
    if (i < result.trained.size()) {
      write_file(dir / "models" / (stem + ".json"), to_json(result.trained[i]));
    }
    if (i < result.wall_seconds.size()) {
      timings += std::string(to_string(row.model)) + "," +
                 std::string(to_string(row.representation)) + "," +
                 format_number(result.wall_seconds[i]) + "\n";
    }
  }
  write_file(dir / "timings.csv", timings);
}

}  // namespace quatbench
