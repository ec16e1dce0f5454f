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
#include "orcu/trainer.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "orcu/rng.hpp"
#include "orcu/text.hpp"

namespace orcu {

namespace {

void check_spec(const ModelSpec& spec) {
  if (spec.input_dim < 1) throw std::invalid_argument("model: input_dim must be >= 1");
  if (spec.num_classes < 2) throw std::invalid_argument("model: num_classes must be >= 2");
  if (spec.kind == ModelKind::kMlp && spec.hidden_dim < 1) {
    throw std::invalid_argument("model: hidden_dim must be >= 1 for the MLP");
  }
}

void fill_uniform(std::vector<double>& weights, int fan_in, Rng& rng) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(fan_in));
  for (double& w : weights) w = (2.0 * rng.next_unit() - 1.0) * scale;
}

// z += W x + b for a row-major (rows x cols) W.
void affine(std::span<const double> w, std::span<const double> b, std::span<const double> x,
            std::vector<double>& z) {
  const std::size_t rows = b.size();
  const std::size_t cols = x.size();
  z.assign(rows, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    double acc = b[r];
    const double* w_row = w.data() + r * cols;
    for (std::size_t c = 0; c < cols; ++c) acc += w_row[c] * x[c];
    z[r] = acc;
  }
}

struct Gradients {
  std::vector<double> hidden_w, hidden_b, out_w, out_b;

  explicit Gradients(const Model& m)
      : hidden_w(m.hidden_w.size(), 0.0),
        hidden_b(m.hidden_b.size(), 0.0),
        out_w(m.out_w.size(), 0.0),
        out_b(m.out_b.size(), 0.0) {}

  void clear() {
    std::fill(hidden_w.begin(), hidden_w.end(), 0.0);
    std::fill(hidden_b.begin(), hidden_b.end(), 0.0);
    std::fill(out_w.begin(), out_w.end(), 0.0);
    std::fill(out_b.begin(), out_b.end(), 0.0);
  }
};

}  // namespace

Model init_model(const ModelSpec& spec) {
  check_spec(spec);
  Model model;
  model.spec = spec;
  Rng rng(spec.init_seed);
  if (spec.kind == ModelKind::kMlp) {
    model.hidden_w.resize(static_cast<std::size_t>(spec.hidden_dim) *
                          static_cast<std::size_t>(spec.input_dim));
    model.hidden_b.assign(static_cast<std::size_t>(spec.hidden_dim), 0.0);
    fill_uniform(model.hidden_w, spec.input_dim, rng);
    model.out_w.resize(static_cast<std::size_t>(spec.num_classes) *
                       static_cast<std::size_t>(spec.hidden_dim));
    fill_uniform(model.out_w, spec.hidden_dim, rng);
  } else {
    model.out_w.resize(static_cast<std::size_t>(spec.num_classes) *
                       static_cast<std::size_t>(spec.input_dim));
    fill_uniform(model.out_w, spec.input_dim, rng);
  }
  model.out_b.assign(static_cast<std::size_t>(spec.num_classes), 0.0);
  return model;
}

std::vector<double> forward(const Model& model, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(model.spec.input_dim)) {
    throw std::invalid_argument("forward: feature dimension mismatch");
  }
  std::vector<double> logits;
  if (model.spec.kind == ModelKind::kMlp) {
    std::vector<double> hidden;
    affine(model.hidden_w, model.hidden_b, x, hidden);
    for (double& h : hidden) h = std::tanh(h);
    affine(model.out_w, model.out_b, hidden, logits);
  } else {
    affine(model.out_w, model.out_b, x, logits);
  }
  return logits;
}

std::vector<double> forward_batch(const Model& model, std::span<const double> features,
                                  std::size_t n) {
  const auto dim = static_cast<std::size_t>(model.spec.input_dim);
  if (features.size() != n * dim) {
    throw std::invalid_argument("forward_batch: feature matrix shape mismatch");
  }
  const auto classes = static_cast<std::size_t>(model.spec.num_classes);
  std::vector<double> logits(n * classes);
  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<double> z = forward(model, features.subspan(i * dim, dim));
    std::copy(z.begin(), z.end(), logits.begin() + static_cast<std::ptrdiff_t>(i * classes));
  }
  return logits;
}

TrainResult train(const Model& initial, const OrdinalDataset& train_ds, const TrainConfig& cfg) {
  if (train_ds.size() == 0) throw std::invalid_argument("train: empty dataset");
  if (train_ds.dim != initial.spec.input_dim) {
    throw std::invalid_argument("train: dataset dim does not match the model");
  }
  if (train_ds.num_classes != initial.spec.num_classes) {
    throw std::invalid_argument("train: dataset classes do not match the model");
  }
  if (!(cfg.learning_rate > 0.0)) throw std::invalid_argument("train: learning_rate must be > 0");
  if (cfg.epochs < 1) throw std::invalid_argument("train: epochs must be >= 1");
  if (cfg.batch_size < 1) throw std::invalid_argument("train: batch_size must be >= 1");

  TrainResult result;
  result.model = initial;
  Model& model = result.model;
  const bool is_mlp = model.spec.kind == ModelKind::kMlp;
  const auto n = train_ds.size();
  const auto dim = static_cast<std::size_t>(train_ds.dim);
  const auto classes = static_cast<std::size_t>(model.spec.num_classes);
  const auto hidden_dim = static_cast<std::size_t>(model.spec.hidden_dim);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng shuffle_rng(cfg.shuffle_seed);

  Gradients grads(model);
  std::vector<double> hidden, activated, logits, hidden_grad;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    shuffle(order, shuffle_rng);
    double epoch_loss_sum = 0.0;

    for (std::size_t start = 0; start < n; start += static_cast<std::size_t>(cfg.batch_size)) {
      const std::size_t batch = std::min(static_cast<std::size_t>(cfg.batch_size), n - start);
      const double scale = cfg.reduction == Reduction::kMean ? 1.0 / static_cast<double>(batch) : 1.0;
      grads.clear();
      double batch_loss_sum = 0.0;

      for (std::size_t b = 0; b < batch; ++b) {
        const std::size_t idx = order[start + b];
        const auto x = train_ds.row(idx);
        const int label = train_ds.labels[idx];

        if (is_mlp) {
          affine(model.hidden_w, model.hidden_b, x, hidden);
          activated = hidden;
          for (double& h : activated) h = std::tanh(h);
          affine(model.out_w, model.out_b, activated, logits);
        } else {
          affine(model.out_w, model.out_b, x, logits);
        }
        for (double z : logits) {
          if (!std::isfinite(z)) {
            throw std::runtime_error("training diverged to non-finite logits at epoch " +
                                     std::to_string(epoch + 1));
          }
        }

        const LossResult loss = eval_loss(cfg.loss, logits, label);
        batch_loss_sum += loss.value;

        const std::span<const double> input = is_mlp ? std::span<const double>(activated) : x;
        for (std::size_t c = 0; c < classes; ++c) {
          const double g = loss.grad[c] * scale;
          grads.out_b[c] += g;
          double* row = grads.out_w.data() + c * input.size();
          for (std::size_t j = 0; j < input.size(); ++j) row[j] += g * input[j];
        }
        if (is_mlp) {
          hidden_grad.assign(hidden_dim, 0.0);
          for (std::size_t c = 0; c < classes; ++c) {
            const double g = loss.grad[c] * scale;
            const double* w_row = model.out_w.data() + c * hidden_dim;
            for (std::size_t h = 0; h < hidden_dim; ++h) hidden_grad[h] += g * w_row[h];
          }
          for (std::size_t h = 0; h < hidden_dim; ++h) {
            const double d = hidden_grad[h] * (1.0 - activated[h] * activated[h]);
            grads.hidden_b[h] += d;
            double* row = grads.hidden_w.data() + h * dim;
            for (std::size_t j = 0; j < dim; ++j) row[j] += d * x[j];
          }
        }
      }

      if (!std::isfinite(batch_loss_sum)) {
        throw std::runtime_error("training diverged to a non-finite loss at epoch " +
                                 std::to_string(epoch + 1));
      }
      epoch_loss_sum += batch_loss_sum;

      const double lr = cfg.learning_rate;
      for (std::size_t i = 0; i < model.out_w.size(); ++i) model.out_w[i] -= lr * grads.out_w[i];
      for (std::size_t i = 0; i < model.out_b.size(); ++i) model.out_b[i] -= lr * grads.out_b[i];
      for (std::size_t i = 0; i < model.hidden_w.size(); ++i) {
        model.hidden_w[i] -= lr * grads.hidden_w[i];
      }
      for (std::size_t i = 0; i < model.hidden_b.size(); ++i) {
        model.hidden_b[i] -= lr * grads.hidden_b[i];
      }
    }

    result.epoch_loss.push_back(epoch_loss_sum / static_cast<double>(n));
  }
  return result;
}

Evaluation evaluate(const Model& model, const OrdinalDataset& test_ds, int num_bins) {
  if (test_ds.size() == 0) throw std::invalid_argument("evaluate: empty dataset");
  if (test_ds.dim != model.spec.input_dim) {
    throw std::invalid_argument("evaluate: dataset dim does not match the model");
  }

  Evaluation out;
  PredictionSet& preds = out.predictions;
  preds.num_classes = model.spec.num_classes;
  preds.labels = test_ds.labels;
  preds.probs.resize(test_ds.size() * static_cast<std::size_t>(model.spec.num_classes));
  for (std::size_t i = 0; i < test_ds.size(); ++i) {
    const std::vector<double> probs = softmax(forward(model, test_ds.row(i)));
    std::copy(probs.begin(), probs.end(),
              preds.probs.begin() +
                  static_cast<std::ptrdiff_t>(i * static_cast<std::size_t>(model.spec.num_classes)));
  }

  const std::vector<int> predicted = predicted_classes(preds);
  out.metrics.accuracy = accuracy(predicted, preds.labels);
  out.metrics.mae = mean_absolute_error(predicted, preds.labels);
  out.metrics.qwk = quadratic_weighted_kappa(predicted, preds.labels, preds.num_classes);
  out.metrics.ece = expected_calibration_error(preds, num_bins);
  out.metrics.sce = static_calibration_error(preds, num_bins);
  out.metrics.ace = adaptive_calibration_error(preds, num_bins);
  out.metrics.unimodal_fraction = unimodality_fraction(preds);
  out.reliability = reliability_bins(preds, num_bins);
  return out;
}

std::string report_to_json(const TrainReport& report) {
  nlohmann::json doc;
  doc["model"] = {{"kind", model_kind_name(report.model_spec.kind)},
                  {"input_dim", report.model_spec.input_dim},
                  {"hidden_dim", report.model_spec.hidden_dim},
                  {"num_classes", report.model_spec.num_classes},
                  {"init_seed", report.model_spec.init_seed}};
  doc["config"] = {{"loss", loss_kind_name(report.config.loss.kind)},
                   {"epsilon", report.config.loss.epsilon},
                   {"metric", distance_kind_name(report.config.loss.metric.kind)},
                   {"huber_delta", report.config.loss.metric.huber_delta},
                   {"t", report.config.loss.barrier.t},
                   {"learning_rate", report.config.learning_rate},
                   {"epochs", report.config.epochs},
                   {"batch_size", report.config.batch_size},
                   {"shuffle_seed", report.config.shuffle_seed},
                   {"reduction", reduction_name(report.config.reduction)}};
  doc["epoch_loss"] = report.epoch_loss;
  doc["metrics"] = {{"accuracy", report.metrics.accuracy},
                    {"mae", report.metrics.mae},
                    {"qwk", report.metrics.qwk},
                    {"ece", report.metrics.ece},
                    {"sce", report.metrics.sce},
                    {"ace", report.metrics.ace},
                    {"unimodal_fraction", report.metrics.unimodal_fraction}};
  doc["num_bins"] = report.num_bins;
  doc["reliability"] = nlohmann::json::parse(bins_to_json(report.reliability));
  return doc.dump(2) + "\n";
}

std::string curves_to_csv(std::span<const double> epoch_loss) {
  std::string out = "epoch,loss\n";
  for (std::size_t e = 0; e < epoch_loss.size(); ++e) {
    out += std::to_string(e + 1);
    out += ',';
    out += format_double(epoch_loss[e]);
    out += '\n';
  }
  return out;
}

std::string_view model_kind_name(ModelKind kind) {
  return kind == ModelKind::kMlp ? "mlp" : "linear";
}

ModelKind model_kind_from_name(std::string_view name) {
  if (name == "linear") return ModelKind::kLinear;
  if (name == "mlp") return ModelKind::kMlp;
  throw std::invalid_argument("unknown model kind: " + std::string(name));
}

std::string_view reduction_name(Reduction reduction) {
  return reduction == Reduction::kSum ? "sum" : "mean";
}

Reduction reduction_from_name(std::string_view name) {
  if (name == "mean") return Reduction::kMean;
  if (name == "sum") return Reduction::kSum;
  throw std::invalid_argument("unknown reduction: " + std::string(name));
}

}  // namespace orcu
