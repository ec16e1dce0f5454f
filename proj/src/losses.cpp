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
#include "orcu/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace orcu {

namespace {

void require_finite(std::span<const double> logits) {
  for (double z : logits) {
    if (!std::isfinite(z)) throw std::invalid_argument("losses: logits must be finite");
  }
}

void require_valid_problem(std::span<const double> logits, int true_class) {
  if (logits.size() < 2) {
    throw std::invalid_argument("losses: an ordinal problem needs at least 2 classes");
  }
  require_finite(logits);
  if (true_class < 0 || static_cast<std::size_t>(true_class) >= logits.size()) {
    throw std::invalid_argument("losses: true_class " + std::to_string(true_class) +
                                " out of range for " + std::to_string(logits.size()) +
                                " logits");
  }
}

void require_positive_temperature(const BarrierConfig& cfg) {
  if (!(cfg.t > 0.0) || !std::isfinite(cfg.t)) {
    throw std::invalid_argument("barrier: temperature t must be positive and finite");
  }
}

}  // namespace

std::vector<double> log_softmax(std::span<const double> logits) {
  if (logits.empty()) throw std::invalid_argument("log_softmax: empty input");
  require_finite(logits);
  const double top = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double z : logits) sum += std::exp(z - top);
  const double log_norm = top + std::log(sum);
  std::vector<double> out(logits.size());
  for (std::size_t k = 0; k < logits.size(); ++k) out[k] = logits[k] - log_norm;
  return out;
}

std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> out = log_softmax(logits);
  for (double& v : out) v = std::exp(v);
  return out;
}

LossResult sce_loss(std::span<const double> logits, const SoftLabel& target) {
  if (logits.size() != target.probs.size()) {
    throw std::invalid_argument("sce_loss: logit/target dimension mismatch");
  }
  if (logits.size() < 2) {
    throw std::invalid_argument("sce_loss: an ordinal problem needs at least 2 classes");
  }
  require_finite(logits);
  const std::vector<double> log_probs = log_softmax(logits);
  LossResult out;
  out.grad.resize(logits.size());
  for (std::size_t k = 0; k < logits.size(); ++k) {
    out.value -= target.probs[k] * log_probs[k];
    out.grad[k] = std::exp(log_probs[k]) - target.probs[k];
  }
  return out;
}

double barrier_penalty(double r, const BarrierConfig& cfg) {
  require_positive_temperature(cfg);
  const double t = cfg.t;
  if (r <= cfg.boundary()) return -std::log(-r) / t;
  // -(1/t) log(1/t^2) + 1/t written as (2 log t + 1)/t.
  return t * r + (2.0 * std::log(t) + 1.0) / t;
}

double barrier_penalty_grad(double r, const BarrierConfig& cfg) {
  require_positive_temperature(cfg);
  const double t = cfg.t;
  // Strict comparison: at r == -1/t^2 both branch derivatives equal t, and
  // the linear branch yields that value without rounding.
  if (r < cfg.boundary()) return -1.0 / (t * r);
  return t;
}

LossResult reg_loss(std::span<const double> logits, int true_class, const BarrierConfig& cfg) {
  require_valid_problem(logits, true_class);
  require_positive_temperature(cfg);
  LossResult out;
  out.grad.assign(logits.size(), 0.0);
  for (std::size_t p = 0; p + 1 < logits.size(); ++p) {
    const bool below_target = static_cast<int>(p) < true_class;
    const double r = below_target ? logits[p] - logits[p + 1] : logits[p + 1] - logits[p];
    out.value += barrier_penalty(r, cfg);
    const double g = barrier_penalty_grad(r, cfg);
    if (below_target) {
      out.grad[p] += g;
      out.grad[p + 1] -= g;
    } else {
      out.grad[p + 1] += g;
      out.grad[p] -= g;
    }
  }
  return out;
}

LossResult orcu_loss(std::span<const double> logits, int true_class, int num_classes,
                     const DistanceMetric& metric, const BarrierConfig& cfg) {
  if (num_classes != static_cast<int>(logits.size())) {
    throw std::invalid_argument("orcu_loss: num_classes does not match logit dimension");
  }
  LossResult out = sce_loss(logits, soft_encode(true_class, num_classes, metric));
  const LossResult reg = reg_loss(logits, true_class, cfg);
  out.value += reg.value;
  for (std::size_t k = 0; k < out.grad.size(); ++k) out.grad[k] += reg.grad[k];
  return out;
}

LossResult ce_loss(std::span<const double> logits, int true_class) {
  return sce_loss(logits, one_hot(true_class, static_cast<int>(logits.size())));
}

LossResult ls_loss(std::span<const double> logits, int true_class, double epsilon) {
  return sce_loss(logits, smooth_labels(true_class, static_cast<int>(logits.size()), epsilon));
}

LossResult eval_loss(const LossSpec& spec, std::span<const double> logits, int true_class) {
  const int num_classes = static_cast<int>(logits.size());
  switch (spec.kind) {
    case LossKind::kCrossEntropy:
      return ce_loss(logits, true_class);
    case LossKind::kLabelSmoothing:
      return ls_loss(logits, true_class, spec.epsilon);
    case LossKind::kSoftCrossEntropy:
      return sce_loss(logits, soft_encode(true_class, num_classes, spec.metric));
    case LossKind::kOrcu:
      return orcu_loss(logits, true_class, num_classes, spec.metric, spec.barrier);
  }
  throw std::invalid_argument("eval_loss: unknown loss kind");
}

std::string_view loss_kind_name(LossKind kind) {
  switch (kind) {
    case LossKind::kCrossEntropy: return "ce";
    case LossKind::kLabelSmoothing: return "ls";
    case LossKind::kSoftCrossEntropy: return "sce";
    case LossKind::kOrcu: return "orcu";
  }
  return "unknown";
}

LossKind loss_kind_from_name(std::string_view name) {
  if (name == "ce") return LossKind::kCrossEntropy;
  if (name == "ls") return LossKind::kLabelSmoothing;
  if (name == "sce") return LossKind::kSoftCrossEntropy;
  if (name == "orcu") return LossKind::kOrcu;
  throw std::invalid_argument("unknown loss: " + std::string(name));
}

}  // namespace orcu
