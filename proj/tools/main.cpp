/*
 * Copyright 2026 the orcu toolkit authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end: dataset generation, training, evaluation,
// temperature sweeps, loss ablations and reliability export. Every command
// writes a manifest recording the fully resolved arguments, so any output
// can be reproduced bit for bit by replaying them.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or parse error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "orcu/dataset.hpp"
#include "orcu/losses.hpp"
#include "orcu/metrics.hpp"
#include "orcu/text.hpp"
#include "orcu/trainer.hpp"
#include "orcu/version.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_manifest(const fs::path& out_dir, const std::string& command,
                    const std::vector<std::string>& args,
                    const std::vector<std::string>& outputs) {
  json doc;
  doc["command"] = command;
  doc["version"] = orcu::kVersion;
  doc["args"] = args;
  doc["outputs"] = outputs;
  write_file(out_dir / "manifest.json", doc.dump(2) + "\n");
}

// Options shared by every command that trains models.
struct TrainOptions {
  std::string data;
  int classes = 0;  // 0: read the sidecar manifest next to the dataset
  std::string model = "linear";
  int hidden = 32;
  double lr = 0.0;  // 0: per-model default (0.05 linear, 0.01 mlp)
  int epochs = 200;
  int batch = 64;
  std::string reduction = "mean";
  std::uint64_t init_seed = 1;
  std::uint64_t shuffle_seed = 2;
  std::uint64_t split_seed = 3;
  double train_frac = 0.8;
  double val_frac = 0.1;
  double test_frac = 0.1;
  int bins = 15;
  std::string out = "runs";

  void add_to(CLI::App& cmd) {
    cmd.add_option("--data", data, "Dataset CSV (f0,...,label)")->required();
    cmd.add_option("--classes", classes,
                   "Number of classes; defaults to the manifest.json next to the dataset");
    cmd.add_option("--model", model, "Model kind: linear | mlp")->default_val("linear");
    cmd.add_option("--hidden", hidden, "Hidden width (mlp only)")->default_val(32);
    cmd.add_option("--lr", lr, "Learning rate; default 0.05 linear, 0.01 mlp");
    cmd.add_option("--epochs", epochs, "Training epochs")->default_val(200);
    cmd.add_option("--batch", batch, "Mini-batch size")->default_val(64);
    cmd.add_option("--reduction", reduction, "Batch reduction: mean | sum")->default_val("mean");
    cmd.add_option("--init-seed", init_seed, "Weight initialization seed")->default_val(1);
    cmd.add_option("--shuffle-seed", shuffle_seed, "Epoch shuffling seed")->default_val(2);
    cmd.add_option("--split-seed", split_seed, "Train/val/test split seed")->default_val(3);
    cmd.add_option("--train-frac", train_frac, "Training fraction")->default_val(0.8);
    cmd.add_option("--val-frac", val_frac, "Validation fraction")->default_val(0.1);
    cmd.add_option("--test-frac", test_frac, "Test fraction")->default_val(0.1);
    cmd.add_option("--bins", bins, "Calibration bins / adaptive ranges")->default_val(15);
    cmd.add_option("--out", out, "Output directory (env ORCU_OUT_DIR)")
        ->envname("ORCU_OUT_DIR")
        ->default_val("runs");
  }

  int resolve_classes() const {
    if (classes > 0) return classes;
    const fs::path manifest = fs::path(data).parent_path() / "manifest.json";
    if (!fs::exists(manifest)) {
      throw std::invalid_argument("no --classes given and no manifest next to " + data);
    }
    return orcu::num_classes_from_manifest(manifest.string());
  }

  double resolved_lr(orcu::ModelKind kind) const {
    if (lr > 0.0) return lr;
    if (lr < 0.0) throw std::invalid_argument("--lr must be positive");
    return kind == orcu::ModelKind::kMlp ? 0.01 : 0.05;
  }

  // Fully resolved argument list for the manifest.
  void append_args(std::vector<std::string>& args, orcu::ModelKind kind, int resolved) const {
    const auto add = [&args](const std::string& flag, const std::string& value) {
      args.push_back(flag);
      args.push_back(value);
    };
    add("--data", data);
    add("--classes", std::to_string(resolved));
    add("--model", model);
    add("--hidden", std::to_string(hidden));
    add("--lr", orcu::format_double(resolved_lr(kind)));
    add("--epochs", std::to_string(epochs));
    add("--batch", std::to_string(batch));
    add("--reduction", reduction);
    add("--init-seed", std::to_string(init_seed));
    add("--shuffle-seed", std::to_string(shuffle_seed));
    add("--split-seed", std::to_string(split_seed));
    add("--train-frac", orcu::format_double(train_frac));
    add("--val-frac", orcu::format_double(val_frac));
    add("--test-frac", orcu::format_double(test_frac));
    add("--bins", std::to_string(bins));
    add("--out", out);
  }
};

struct PreparedRun {
  orcu::DatasetSplits splits;
  orcu::ModelSpec model_spec;
  orcu::TrainConfig config;
};

PreparedRun prepare(const TrainOptions& opts, const orcu::LossSpec& loss) {
  PreparedRun run;
  const int classes = opts.resolve_classes();
  const orcu::OrdinalDataset ds = orcu::load_dataset_csv(opts.data, classes);
  run.splits =
      orcu::split_dataset(ds, {opts.train_frac, opts.val_frac, opts.test_frac, opts.split_seed});
  run.model_spec.kind = orcu::model_kind_from_name(opts.model);
  run.model_spec.input_dim = ds.dim;
  run.model_spec.hidden_dim = run.model_spec.kind == orcu::ModelKind::kMlp ? opts.hidden : 0;
  run.model_spec.num_classes = classes;
  run.model_spec.init_seed = opts.init_seed;
  run.config.loss = loss;
  run.config.learning_rate = opts.resolved_lr(run.model_spec.kind);
  run.config.epochs = opts.epochs;
  run.config.batch_size = opts.batch;
  run.config.shuffle_seed = opts.shuffle_seed;
  run.config.reduction = orcu::reduction_from_name(opts.reduction);
  return run;
}

std::string predictions_to_csv(const orcu::PredictionSet& preds) {
  std::string out;
  for (int k = 0; k < preds.num_classes; ++k) {
    out += 'p';
    out += std::to_string(k);
    out += ',';
  }
  out += "label\n";
  for (std::size_t n = 0; n < preds.size(); ++n) {
    for (double v : preds.row(n)) {
      out += orcu::format_double(v);
      out += ',';
    }
    out += std::to_string(preds.labels[n]);
    out += '\n';
  }
  return out;
}

orcu::PredictionSet predictions_from_csv(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open predictions: " + path);
  std::string line;
  if (!std::getline(file, line)) throw std::invalid_argument(path + ":1: empty file");
  const auto header = orcu::split_csv_line(line);
  if (header.size() < 3 || header.back() != "label") {
    throw std::invalid_argument(path + ":1: expected header p0,...,label");
  }
  const int classes = static_cast<int>(header.size()) - 1;
  for (int k = 0; k < classes; ++k) {
    if (header[static_cast<std::size_t>(k)] != "p" + std::to_string(k)) {
      throw std::invalid_argument(path + ":1: expected column p" + std::to_string(k));
    }
  }
  orcu::PredictionSet preds;
  preds.num_classes = classes;
  std::size_t line_no = 1;
  while (std::getline(file, line)) {
    ++line_no;
    if (line.empty() && file.peek() == std::ifstream::traits_type::eof()) break;
    const std::string context = path + ":" + std::to_string(line_no);
    const auto fields = orcu::split_csv_line(line);
    if (fields.size() != header.size()) {
      throw std::invalid_argument(context + ": expected " + std::to_string(header.size()) +
                                  " columns, got " + std::to_string(fields.size()));
    }
    std::vector<double> row(static_cast<std::size_t>(classes));
    double sum = 0.0;
    for (int k = 0; k < classes; ++k) {
      const double v = orcu::parse_double(fields[static_cast<std::size_t>(k)], context);
      if (v < 0.0 || v > 1.0) {
        throw std::invalid_argument(context + ": probability out of [0, 1]");
      }
      row[static_cast<std::size_t>(k)] = v;
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
      throw std::invalid_argument(context + ": probabilities sum to " + orcu::format_double(sum) +
                                  ", not 1");
    }
    // Rows inside the gate but off exact normalization get rescaled; files
    // written by this toolkit are already exact and pass through untouched.
    if (std::abs(sum - 1.0) > 1e-9) {
      for (double& v : row) v /= sum;
    }
    const long label = orcu::parse_long(fields.back(), context);
    if (label < 0 || label >= classes) {
      throw std::invalid_argument(context + ": label " + std::to_string(label) + " out of range");
    }
    preds.probs.insert(preds.probs.end(), row.begin(), row.end());
    preds.labels.push_back(static_cast<int>(label));
  }
  if (preds.labels.empty()) throw std::invalid_argument(path + ": no data rows");
  return preds;
}

json metrics_to_json(const orcu::MetricSummary& m) {
  return json{{"accuracy", m.accuracy}, {"mae", m.mae},
              {"qwk", m.qwk},           {"ece", m.ece},
              {"sce", m.sce},           {"ace", m.ace},
              {"unimodal_fraction", m.unimodal_fraction}};
}

orcu::MetricSummary compute_metrics(const orcu::PredictionSet& preds, int bins) {
  orcu::MetricSummary m;
  const std::vector<int> predicted = orcu::predicted_classes(preds);
  m.accuracy = orcu::accuracy(predicted, preds.labels);
  m.mae = orcu::mean_absolute_error(predicted, preds.labels);
  m.qwk = orcu::quadratic_weighted_kappa(predicted, preds.labels, preds.num_classes);
  m.ece = orcu::expected_calibration_error(preds, bins);
  m.sce = orcu::static_calibration_error(preds, bins);
  m.ace = orcu::adaptive_calibration_error(preds, bins);
  m.unimodal_fraction = orcu::unimodality_fraction(preds);
  return m;
}

void print_metrics(const orcu::MetricSummary& m) {
  std::printf("accuracy=%.4f mae=%.4f qwk=%.4f ece=%.4f sce=%.4f ace=%.4f unimodal=%.4f\n",
              m.accuracy, m.mae, m.qwk, m.ece, m.sce, m.ace, m.unimodal_fraction);
}

// ---- gen --------------------------------------------------------------

struct GenOptions {
  std::size_t n = 5000;
  int dim = 10;
  int classes = 5;
  double noise = 0.5;
  std::uint64_t seed = 0;
  std::string out = "data";
};

int run_gen(const GenOptions& opts) {
  const orcu::OrdinalDataset ds =
      orcu::generate_ordered_logit(opts.n, opts.dim, opts.classes, opts.noise, opts.seed);
  const fs::path out_dir(opts.out);
  fs::create_directories(out_dir);
  orcu::save_dataset_csv(ds, (out_dir / "dataset.csv").string());
  write_file(out_dir / "manifest.json",
             orcu::dataset_manifest_json(opts.n, opts.dim, opts.classes, opts.noise, opts.seed));
  std::printf("wrote %s and %s (%zu samples, %d classes)\n",
              (out_dir / "dataset.csv").string().c_str(),
              (out_dir / "manifest.json").string().c_str(), ds.size(), ds.num_classes);
  return 0;
}

// ---- train ------------------------------------------------------------

struct LossOptions {
  std::string loss = "orcu";
  double epsilon = 0.1;
  std::string metric = "squared";
  double huber_delta = 1.0;
  double t = 3.0;

  void add_loss_choice(CLI::App& cmd) {
    cmd.add_option("--loss", loss, "Loss: ce | ls | sce | orcu")->default_val("orcu");
    cmd.add_option("--epsilon", epsilon, "Label smoothing strength (ls)")->default_val(0.1);
  }

  void add_metric_choice(CLI::App& cmd) {
    cmd.add_option("--metric", metric,
                   "Soft-encoding distance: squared | absolute | huber | exponential")
        ->default_val("squared");
    cmd.add_option("--huber-delta", huber_delta, "Huber threshold")->default_val(1.0);
  }

  void add_temperature(CLI::App& cmd) {
    cmd.add_option("--t", t, "Barrier temperature (orcu)")->default_val(3.0);
  }

  orcu::LossSpec spec() const {
    orcu::LossSpec s;
    s.kind = orcu::loss_kind_from_name(loss);
    s.epsilon = epsilon;
    s.metric.kind = orcu::distance_kind_from_name(metric);
    s.metric.huber_delta = huber_delta;
    s.barrier.t = t;
    if (!(s.barrier.t > 0.0)) throw std::invalid_argument("--t must be positive");
    return s;
  }
};

int run_train(const TrainOptions& opts, const LossOptions& loss_opts) {
  const orcu::LossSpec loss = loss_opts.spec();
  PreparedRun run = prepare(opts, loss);
  const orcu::TrainResult result =
      orcu::train(orcu::init_model(run.model_spec), run.splits.train, run.config);
  const orcu::Evaluation eval = orcu::evaluate(result.model, run.splits.test, opts.bins);

  orcu::TrainReport report;
  report.epoch_loss = result.epoch_loss;
  report.metrics = eval.metrics;
  report.reliability = eval.reliability;
  report.model_spec = run.model_spec;
  report.config = run.config;
  report.num_bins = opts.bins;

  const fs::path out_dir(opts.out);
  fs::create_directories(out_dir);
  write_file(out_dir / "report.json", orcu::report_to_json(report));
  write_file(out_dir / "curves.csv", orcu::curves_to_csv(result.epoch_loss));
  write_file(out_dir / "reliability.csv", orcu::bins_to_csv(eval.reliability));
  write_file(out_dir / "predictions.csv", predictions_to_csv(eval.predictions));

  std::vector<std::string> args{"train", "--loss", loss_opts.loss};
  if (loss.kind == orcu::LossKind::kLabelSmoothing) {
    args.push_back("--epsilon");
    args.push_back(orcu::format_double(loss_opts.epsilon));
  }
  if (loss.kind == orcu::LossKind::kSoftCrossEntropy || loss.kind == orcu::LossKind::kOrcu) {
    args.push_back("--metric");
    args.push_back(loss_opts.metric);
    args.push_back("--huber-delta");
    args.push_back(orcu::format_double(loss_opts.huber_delta));
  }
  if (loss.kind == orcu::LossKind::kOrcu) {
    args.push_back("--t");
    args.push_back(orcu::format_double(loss_opts.t));
  }
  opts.append_args(args, run.model_spec.kind, run.model_spec.num_classes);
  write_manifest(out_dir, "train", args,
                 {"report.json", "curves.csv", "reliability.csv", "predictions.csv"});

  print_metrics(eval.metrics);
  return 0;
}

// ---- sweep-t ------------------------------------------------------------

int run_sweep(const TrainOptions& opts, const LossOptions& loss_opts,
              std::vector<double> t_values) {
  if (t_values.empty()) throw std::invalid_argument("--t-values must not be empty");
  std::sort(t_values.begin(), t_values.end());
  t_values.erase(std::unique(t_values.begin(), t_values.end()), t_values.end());

  orcu::LossSpec loss = loss_opts.spec();
  loss.kind = orcu::LossKind::kOrcu;
  PreparedRun run = prepare(opts, loss);

  json rows = json::array();
  std::string csv = "t,ece,sce,ace\n";
  double best_ece = 0.0;
  double best_t = 0.0;
  bool unique = true;
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    if (!(t_values[i] > 0.0)) throw std::invalid_argument("--t-values must be positive");
    run.config.loss.barrier.t = t_values[i];
    const orcu::TrainResult result =
        orcu::train(orcu::init_model(run.model_spec), run.splits.train, run.config);
    const orcu::Evaluation eval = orcu::evaluate(result.model, run.splits.test, opts.bins);
    rows.push_back({{"t", t_values[i]},
                    {"ece", eval.metrics.ece},
                    {"sce", eval.metrics.sce},
                    {"ace", eval.metrics.ace}});
    csv += orcu::format_double(t_values[i]) + "," + orcu::format_double(eval.metrics.ece) + "," +
           orcu::format_double(eval.metrics.sce) + "," + orcu::format_double(eval.metrics.ace) +
           "\n";
    std::printf("t=%-5g ece=%.4f sce=%.4f ace=%.4f\n", t_values[i], eval.metrics.ece,
                eval.metrics.sce, eval.metrics.ace);
    if (i == 0 || eval.metrics.ece < best_ece) {
      best_ece = eval.metrics.ece;
      best_t = t_values[i];
      unique = true;
    } else if (eval.metrics.ece == best_ece) {
      unique = false;
    }
  }

  json doc;
  doc["rows"] = rows;
  doc["argmin_t"] = best_t;
  doc["argmin_ece"] = best_ece;
  doc["argmin_unique"] = unique;

  const fs::path out_dir(opts.out);
  fs::create_directories(out_dir);
  write_file(out_dir / "sweep.json", doc.dump(2) + "\n");
  write_file(out_dir / "sweep.csv", csv);

  std::vector<std::string> args{"sweep-t", "--t-values"};
  std::string joined;
  for (double t : t_values) {
    if (!joined.empty()) joined += ',';
    joined += orcu::format_double(t);
  }
  args.push_back(joined);
  args.push_back("--metric");
  args.push_back(loss_opts.metric);
  args.push_back("--huber-delta");
  args.push_back(orcu::format_double(loss_opts.huber_delta));
  opts.append_args(args, run.model_spec.kind, run.model_spec.num_classes);
  write_manifest(out_dir, "sweep-t", args, {"sweep.json", "sweep.csv"});

  std::printf("argmin ece at t=%g\n", best_t);
  return 0;
}

// ---- ablate -------------------------------------------------------------

int run_ablate(const TrainOptions& opts, const LossOptions& loss_opts) {
  const orcu::LossSpec base = loss_opts.spec();
  PreparedRun run = prepare(opts, base);

  json rows = json::array();
  std::string csv = "loss,metric,sce,ace,ece,unimodal_fraction,default_configuration\n";
  for (const char* loss_name : {"sce", "orcu"}) {
    for (const char* metric_name : {"squared", "absolute", "huber", "exponential"}) {
      run.config.loss = base;
      run.config.loss.kind = orcu::loss_kind_from_name(loss_name);
      run.config.loss.metric.kind = orcu::distance_kind_from_name(metric_name);
      const orcu::TrainResult result =
          orcu::train(orcu::init_model(run.model_spec), run.splits.train, run.config);
      const orcu::Evaluation eval = orcu::evaluate(result.model, run.splits.test, opts.bins);
      const bool is_default = run.config.loss.kind == orcu::LossKind::kOrcu &&
                              run.config.loss.metric.kind == orcu::DistanceKind::kSquared;
      rows.push_back({{"loss", loss_name},
                      {"metric", metric_name},
                      {"sce", eval.metrics.sce},
                      {"ace", eval.metrics.ace},
                      {"ece", eval.metrics.ece},
                      {"unimodal_fraction", eval.metrics.unimodal_fraction},
                      {"default_configuration", is_default}});
      csv += std::string(loss_name) + "," + metric_name + "," +
             orcu::format_double(eval.metrics.sce) + "," + orcu::format_double(eval.metrics.ace) +
             "," + orcu::format_double(eval.metrics.ece) + "," +
             orcu::format_double(eval.metrics.unimodal_fraction) + "," +
             (is_default ? "true" : "false") + "\n";
      std::printf("%-4s %-11s sce=%.4f ace=%.4f ece=%.4f unimodal=%.4f%s\n", loss_name,
                  metric_name, eval.metrics.sce, eval.metrics.ace, eval.metrics.ece,
                  eval.metrics.unimodal_fraction, is_default ? "  [default]" : "");
    }
  }

  json doc;
  doc["rows"] = rows;
  const fs::path out_dir(opts.out);
  fs::create_directories(out_dir);
  write_file(out_dir / "ablation.json", doc.dump(2) + "\n");
  write_file(out_dir / "ablation.csv", csv);

  std::vector<std::string> args{"ablate", "--t", orcu::format_double(loss_opts.t),
                                "--huber-delta", orcu::format_double(loss_opts.huber_delta)};
  opts.append_args(args, run.model_spec.kind, run.model_spec.num_classes);
  write_manifest(out_dir, "ablate", args, {"ablation.json", "ablation.csv"});
  return 0;
}

// ---- eval ---------------------------------------------------------------

struct EvalOptions {
  std::string preds;
  int bins = 15;
  std::string out = "eval";
};

int run_eval(const EvalOptions& opts) {
  const orcu::PredictionSet preds = predictions_from_csv(opts.preds);
  preds.validate();
  const orcu::MetricSummary metrics = compute_metrics(preds, opts.bins);

  json doc;
  doc["num_samples"] = preds.size();
  doc["num_classes"] = preds.num_classes;
  doc["num_bins"] = opts.bins;
  doc["metrics"] = metrics_to_json(metrics);

  const fs::path out_dir(opts.out);
  fs::create_directories(out_dir);
  write_file(out_dir / "metrics.json", doc.dump(2) + "\n");
  write_manifest(
      out_dir, "eval",
      {"eval", "--preds", opts.preds, "--bins", std::to_string(opts.bins), "--out", opts.out},
      {"metrics.json"});
  print_metrics(metrics);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ordinal regression losses with calibration and unimodality metrics"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI file ([section] per command)");

  GenOptions gen_opts;
  CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic ordered-logit dataset");
  gen->configurable();
  gen->fallthrough();
  gen->add_option("--n", gen_opts.n, "Number of samples")->default_val(5000);
  gen->add_option("--dim", gen_opts.dim, "Feature dimension")->default_val(10);
  gen->add_option("--classes", gen_opts.classes, "Number of ordinal classes")->default_val(5);
  gen->add_option("--noise", gen_opts.noise, "Latent noise scale")->default_val(0.5);
  gen->add_option("--seed", gen_opts.seed, "Generator seed")->default_val(0);
  gen->add_option("--out", gen_opts.out, "Output directory (env ORCU_OUT_DIR)")
      ->envname("ORCU_OUT_DIR")
      ->default_val("data");

  TrainOptions train_opts;
  LossOptions train_loss;
  CLI::App* train = app.add_subcommand("train", "Train a model and report test metrics");
  train->configurable();
  train->fallthrough();
  train_loss.add_loss_choice(*train);
  train_loss.add_metric_choice(*train);
  train_loss.add_temperature(*train);
  train_opts.add_to(*train);

  TrainOptions sweep_opts;
  LossOptions sweep_loss;
  std::vector<double> t_values{1.0, 3.0, 5.0, 7.0, 10.0};
  CLI::App* sweep = app.add_subcommand("sweep-t", "Train one orcu model per temperature");
  sweep->configurable();
  sweep->fallthrough();
  sweep->add_option("--t-values", t_values, "Temperatures to sweep")
      ->delimiter(',')
      ->default_val(std::vector<double>{1.0, 3.0, 5.0, 7.0, 10.0});
  sweep_loss.add_metric_choice(*sweep);
  sweep_opts.add_to(*sweep);

  TrainOptions ablate_opts;
  LossOptions ablate_loss;
  CLI::App* ablate =
      app.add_subcommand("ablate", "Cross {sce, orcu} with the four distance metrics");
  ablate->configurable();
  ablate->fallthrough();
  ablate_loss.add_temperature(*ablate);
  ablate->add_option("--huber-delta", ablate_loss.huber_delta, "Huber threshold")
      ->default_val(1.0);
  ablate_opts.add_to(*ablate);

  EvalOptions eval_opts;
  CLI::App* eval = app.add_subcommand("eval", "Compute metrics for a saved predictions file");
  eval->configurable();
  eval->fallthrough();
  eval->add_option("--preds", eval_opts.preds, "Predictions CSV (p0,...,label)")->required();
  eval->add_option("--bins", eval_opts.bins, "Calibration bins / adaptive ranges")
      ->default_val(15);
  eval->add_option("--out", eval_opts.out, "Output directory (env ORCU_OUT_DIR)")
      ->envname("ORCU_OUT_DIR")
      ->default_val("eval");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return run_gen(gen_opts);
    if (train->parsed()) return run_train(train_opts, train_loss);
    if (sweep->parsed()) return run_sweep(sweep_opts, sweep_loss, t_values);
    if (ablate->parsed()) return run_ablate(ablate_opts, ablate_loss);
    if (eval->parsed()) return run_eval(eval_opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
