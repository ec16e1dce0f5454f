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
#ifndef ORCU_TRAINER_HPP_
#define ORCU_TRAINER_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orcu/dataset.hpp"
#include "orcu/losses.hpp"
#include "orcu/metrics.hpp"

namespace orcu {

enum class ModelKind { kLinear, kMlp };

struct ModelSpec {
  ModelKind kind = ModelKind::kLinear;
  int input_dim = 0;
  int hidden_dim = 0;  // MLP only
  int num_classes = 0;
  std::uint64_t init_seed = 0;
};

/// Linear softmax model or one-hidden-layer tanh MLP. For the linear kind
/// the hidden arrays stay empty and out_w is num_classes x input_dim.
struct Model {
  ModelSpec spec;
  std::vector<double> hidden_w;  // hidden_dim x input_dim
  std::vector<double> hidden_b;  // hidden_dim
  std::vector<double> out_w;     // num_classes x (input_dim | hidden_dim)
  std::vector<double> out_b;     // num_classes
};

enum class Reduction { kMean, kSum };

struct TrainConfig {
  LossSpec loss;
  double learning_rate = 0.05;
  int epochs = 200;
  int batch_size = 64;
  std::uint64_t shuffle_seed = 0;
  Reduction reduction = Reduction::kMean;
};

struct TrainResult {
  Model model;
  std::vector<double> epoch_loss;  // mean per-sample training loss per epoch
};

struct MetricSummary {
  double accuracy = 0.0;
  double mae = 0.0;
  double qwk = 0.0;
  double ece = 0.0;
  double sce = 0.0;
  double ace = 0.0;
  double unimodal_fraction = 0.0;
};

struct Evaluation {
  MetricSummary metrics;
  std::vector<BinStats> reliability;
  PredictionSet predictions;
};

/// Everything a finished run reports: training curve, test metrics,
/// reliability bins and an echo of the configuration that produced them.
struct TrainReport {
  std::vector<double> epoch_loss;
  MetricSummary metrics;
  std::vector<BinStats> reliability;
  ModelSpec model_spec;
  TrainConfig config;
  int num_bins = 15;
};

/// Weights drawn uniformly from (-1/sqrt(fan_in), 1/sqrt(fan_in)) using the
/// portable generator seeded with init_seed; biases start at zero.
Model init_model(const ModelSpec& spec);

/// Raw class scores for one feature vector.
std::vector<double> forward(const Model& model, std::span<const double> x);

/// Row-major N x num_classes scores for a feature matrix.
std::vector<double> forward_batch(const Model& model, std::span<const double> features,
                                  std::size_t n);

/// Mini-batch gradient descent with hand-written backpropagation chaining
/// the analytic loss gradients. Sample order is reshuffled every epoch from
/// cfg.shuffle_seed; the whole run is deterministic. Throws std::runtime_error
/// naming the epoch if the loss turns non-finite.
TrainResult train(const Model& initial, const OrdinalDataset& train_ds, const TrainConfig& cfg);

/// Softmax predictions on a dataset plus the full metric suite.
Evaluation evaluate(const Model& model, const OrdinalDataset& test_ds, int num_bins = 15);

std::string report_to_json(const TrainReport& report);

/// CSV with header epoch,loss (epochs are 1-based).
std::string curves_to_csv(std::span<const double> epoch_loss);

std::string_view model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(std::string_view name);
std::string_view reduction_name(Reduction reduction);
Reduction reduction_from_name(std::string_view name);

}  // namespace orcu

#endif  // ORCU_TRAINER_HPP_
