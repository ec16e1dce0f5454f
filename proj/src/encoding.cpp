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
#include "orcu/encoding.hpp"

#include <cmath>
#include <stdexcept>

namespace orcu {

namespace {

void check_class_range(int true_class, int num_classes) {
  if (num_classes < 2) {
    throw std::invalid_argument("encoding: num_classes must be at least 2, got " +
                                std::to_string(num_classes));
  }
  if (true_class < 0 || true_class >= num_classes) {
    throw std::invalid_argument("encoding: true_class " + std::to_string(true_class) +
                                " out of range [0, " + std::to_string(num_classes) + ")");
  }
}

}  // namespace

double distance(const DistanceMetric& metric, double a, double b) {
  const double d = std::abs(a - b);
  switch (metric.kind) {
    case DistanceKind::kSquared:
      return d * d;
    case DistanceKind::kAbsolute:
      return d;
    case DistanceKind::kHuber: {
      const double delta = metric.huber_delta;
      if (!(delta > 0.0)) {
        throw std::invalid_argument("distance: huber_delta must be positive");
      }
      return d <= delta ? 0.5 * d * d : delta * (d - 0.5 * delta);
    }
    case DistanceKind::kExponential:
      // expm1 keeps the zero-at-identity property exact.
      return std::expm1(d);
  }
  throw std::invalid_argument("distance: unknown kind");
}

SoftLabel soft_encode(int true_class, int num_classes, const DistanceMetric& metric) {
  check_class_range(true_class, num_classes);
  SoftLabel label;
  label.true_class = true_class;
  label.probs.resize(static_cast<std::size_t>(num_classes));
  // -phi is at most zero (phi(y, y) = 0), so the exponentials never overflow.
  double total = 0.0;
  for (int k = 0; k < num_classes; ++k) {
    const double w = std::exp(-distance(metric, static_cast<double>(true_class),
                                        static_cast<double>(k)));
    label.probs[static_cast<std::size_t>(k)] = w;
    total += w;
  }
  for (double& p : label.probs) p /= total;
  return label;
}

SoftLabel one_hot(int true_class, int num_classes) {
  check_class_range(true_class, num_classes);
  SoftLabel label;
  label.true_class = true_class;
  label.probs.assign(static_cast<std::size_t>(num_classes), 0.0);
  label.probs[static_cast<std::size_t>(true_class)] = 1.0;
  return label;
}

SoftLabel smooth_labels(int true_class, int num_classes, double epsilon) {
  check_class_range(true_class, num_classes);
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("smooth_labels: epsilon must lie in [0, 1)");
  }
  SoftLabel label;
  label.true_class = true_class;
  const double off = epsilon / static_cast<double>(num_classes);
  label.probs.assign(static_cast<std::size_t>(num_classes), off);
  label.probs[static_cast<std::size_t>(true_class)] = 1.0 - epsilon + off;
  return label;
}

std::string_view distance_kind_name(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::kSquared: return "squared";
    case DistanceKind::kAbsolute: return "absolute";
    case DistanceKind::kHuber: return "huber";
    case DistanceKind::kExponential: return "exponential";
  }
  return "unknown";
}

DistanceKind distance_kind_from_name(std::string_view name) {
  if (name == "squared") return DistanceKind::kSquared;
  if (name == "absolute") return DistanceKind::kAbsolute;
  if (name == "huber") return DistanceKind::kHuber;
  if (name == "exponential") return DistanceKind::kExponential;
  throw std::invalid_argument("unknown distance metric: " + std::string(name));
}

}  // namespace orcu
