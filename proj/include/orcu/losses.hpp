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
#ifndef ORCU_LOSSES_HPP_
#define ORCU_LOSSES_HPP_

#include <span>
#include <string_view>
#include <vector>

#include "orcu/encoding.hpp"

namespace orcu {

/// Scalar loss for one sample paired with its exact gradient w.r.t. logits.
struct LossResult {
  double value = 0.0;
  std::vector<double> grad;
};

/// Temperature of the log-barrier penalty. The regime boundary sits at
/// r = -1/t^2: a log barrier below it, a linear penalty of slope t above.
struct BarrierConfig {
  double t = 3.0;

  double boundary() const { return -1.0 / (t * t); }
};

/// log(softmax(z)) via max subtraction; exp of the result sums to one.
std::vector<double> log_softmax(std::span<const double> logits);

/// softmax(z), computed through log_softmax for stability.
std::vector<double> softmax(std::span<const double> logits);

/// Cross-entropy of softmax(z) against an arbitrary target distribution:
/// value = -sum_k target_k log softmax(z)_k, grad_k = softmax(z)_k - target_k.
LossResult sce_loss(std::span<const double> logits, const SoftLabel& target);

/// Piecewise barrier penalty on an adjacent-logit difference r:
///   -(1/t) log(-r)               for r <= -1/t^2
///   t r + (2 log t + 1) / t      otherwise
/// Continuous and monotonically increasing; both branches meet at the
/// boundary with common value (2 log t)/t and common slope t.
double barrier_penalty(double r, const BarrierConfig& cfg);

/// Derivative of barrier_penalty: -1/(t r) on the log branch, t on the
/// linear branch. The boundary point is evaluated through the linear
/// branch so the closed-form value t is returned exactly.
double barrier_penalty_grad(double r, const BarrierConfig& cfg);

/// Ordinal regularizer: sum of barrier penalties over adjacent logit pairs,
/// oriented by the true class. Pair p (logits p, p+1) contributes
/// barrier_penalty(r_p) with r_p = z_p - z_{p+1} for p < true_class and
/// r_p = z_{p+1} - z_p otherwise, so every difference is pushed toward the
/// ordering that makes the distribution unimodal with peak at true_class.
/// The gradient is the exact chain-rule sum: interior logits accumulate
/// contributions from both adjacent pairs.
LossResult reg_loss(std::span<const double> logits, int true_class, const BarrierConfig& cfg);

/// Combined loss: sce_loss against the soft-encoded target plus reg_loss.
/// Value and gradient are the exact entrywise sums of the two parts.
LossResult orcu_loss(std::span<const double> logits, int true_class, int num_classes,
                     const DistanceMetric& metric, const BarrierConfig& cfg);

/// Cross-entropy against the one-hot target.
LossResult ce_loss(std::span<const double> logits, int true_class);

/// Cross-entropy against the label-smoothed target.
LossResult ls_loss(std::span<const double> logits, int true_class, double epsilon);

enum class LossKind { kCrossEntropy, kLabelSmoothing, kSoftCrossEntropy, kOrcu };

/// A fully resolved loss selection; unused fields are ignored by the kinds
/// that do not read them.
struct LossSpec {
  LossKind kind = LossKind::kOrcu;
  double epsilon = 0.1;    // kLabelSmoothing
  DistanceMetric metric;   // kSoftCrossEntropy, kOrcu
  BarrierConfig barrier;   // kOrcu
};

LossResult eval_loss(const LossSpec& spec, std::span<const double> logits, int true_class);

std::string_view loss_kind_name(LossKind kind);
LossKind loss_kind_from_name(std::string_view name);

}  // namespace orcu

#endif  // ORCU_LOSSES_HPP_
