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
#ifndef ORCU_ENCODING_HPP_
#define ORCU_ENCODING_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace orcu {

/// Distance penalty placed between a true class rank and a candidate rank.
/// All forms are zero at identity, symmetric and non-negative.
enum class DistanceKind { kSquared, kAbsolute, kHuber, kExponential };

struct DistanceMetric {
  DistanceKind kind = DistanceKind::kSquared;
  double huber_delta = 1.0;  // only read by kHuber
};

/// A length-C target probability vector for one sample.
struct SoftLabel {
  std::vector<double> probs;
  int true_class = 0;

  int num_classes() const { return static_cast<int>(probs.size()); }
};

/// Evaluates the distance form on two class ranks taken as reals.
double distance(const DistanceMetric& metric, double a, double b);

/// Soft ordinal target: softmax over the negated distances -phi(true_class, k)
/// for ranks k = 0..num_classes-1. For the squared and absolute forms the
/// result is unimodal with its peak exactly at true_class.
SoftLabel soft_encode(int true_class, int num_classes, const DistanceMetric& metric);

/// Classic one-hot target.
SoftLabel one_hot(int true_class, int num_classes);

/// Uniform label smoothing: 1 - eps + eps/C on the true class, eps/C elsewhere.
/// eps = 0 reproduces one_hot exactly.
SoftLabel smooth_labels(int true_class, int num_classes, double epsilon);

std::string_view distance_kind_name(DistanceKind kind);
DistanceKind distance_kind_from_name(std::string_view name);

}  // namespace orcu

#endif  // ORCU_ENCODING_HPP_
