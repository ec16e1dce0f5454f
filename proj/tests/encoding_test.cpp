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

#include "doctest.h"
#include "orcu/rng.hpp"

using namespace orcu;

namespace {

const DistanceMetric kSquared{DistanceKind::kSquared, 1.0};
const DistanceMetric kAbsolute{DistanceKind::kAbsolute, 1.0};
const DistanceMetric kHuber{DistanceKind::kHuber, 1.0};
const DistanceMetric kExponential{DistanceKind::kExponential, 1.0};
const DistanceMetric kAllMetrics[] = {kSquared, kAbsolute, kHuber, kExponential};

}  // namespace

TEST_SUITE("encoding") {

TEST_CASE("distance forms") {
  CHECK(distance(kSquared, 2, 0) == 4.0);
  CHECK(distance(kAbsolute, 3, 3) == 0.0);
  // Huber with delta = 1 at |d| = 2: delta * (|d| - delta/2).
  CHECK(distance(kHuber, 2, 0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(distance(kHuber, 0.5, 0) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(distance(kExponential, 1, 0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-15));
}

TEST_CASE("distance is symmetric, non-negative and zero only at identity") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const double a = rng.next_unit() * 10.0;
    const double b = rng.next_unit() * 10.0;
    for (const auto& metric : kAllMetrics) {
      CHECK(distance(metric, a, b) == distance(metric, b, a));
      CHECK(distance(metric, a, b) >= 0.0);
      CHECK(distance(metric, a, a) == 0.0);
      if (a != b) CHECK(distance(metric, a, b) > 0.0);
    }
  }
}

TEST_CASE("soft_encode matches direct evaluation for (0, 3, squared)") {
  const SoftLabel label = soft_encode(0, 3, kSquared);
  // Independent route: normalized exponentials of -[0, 1, 4].
  const double w0 = std::exp(-0.0), w1 = std::exp(-1.0), w2 = std::exp(-4.0);
  const double total = w0 + w1 + w2;
  CHECK(label.probs[0] == doctest::Approx(w0 / total).epsilon(1e-14));
  CHECK(label.probs[1] == doctest::Approx(w1 / total).epsilon(1e-14));
  CHECK(label.probs[2] == doctest::Approx(w2 / total).epsilon(1e-14));
  CHECK(label.probs[0] == doctest::Approx(0.7214).epsilon(1e-4));
  CHECK(label.probs[1] == doctest::Approx(0.2654).epsilon(1e-4));
  CHECK(label.probs[2] == doctest::Approx(0.0132).epsilon(2e-3));
}

TEST_CASE("soft_encode two-class closed form") {
  const SoftLabel label = soft_encode(0, 2, kSquared);
  const double e = std::exp(-1.0);
  CHECK(label.probs[0] == doctest::Approx(1.0 / (1.0 + e)).epsilon(1e-15));
  CHECK(label.probs[1] == doctest::Approx(e / (1.0 + e)).epsilon(1e-15));
}

TEST_CASE("soft_encode center class is symmetric under the absolute metric") {
  const SoftLabel label = soft_encode(1, 3, kAbsolute);
  CHECK(label.probs[0] == label.probs[2]);
  CHECK(label.probs[1] > label.probs[0]);
}

TEST_CASE("soft_encode argument validation") {
  CHECK_THROWS_AS(soft_encode(-1, 3, kSquared), std::invalid_argument);
  CHECK_THROWS_AS(soft_encode(3, 3, kSquared), std::invalid_argument);
  CHECK_THROWS_AS(soft_encode(0, 1, kSquared), std::invalid_argument);
}

TEST_CASE("soft_encode normalization and unimodality across all shapes") {
  for (int num_classes = 2; num_classes <= 10; ++num_classes) {
    for (int y = 0; y < num_classes; ++y) {
      for (const auto& metric : kAllMetrics) {
        const SoftLabel label = soft_encode(y, num_classes, metric);
        double sum = 0.0;
        for (double p : label.probs) {
          CHECK(p >= 0.0);
          sum += p;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        // Entries stay strictly positive whenever exp(-phi) is representable;
        // the exponential form underflows for distant ranks at wide C.
        if (metric.kind != DistanceKind::kExponential) {
          for (double p : label.probs) CHECK(p > 0.0);
        }
        if (metric.kind == DistanceKind::kSquared || metric.kind == DistanceKind::kAbsolute) {
          for (int k = 0; k + 1 < num_classes; ++k) {
            const double lo = label.probs[static_cast<std::size_t>(k)];
            const double hi = label.probs[static_cast<std::size_t>(k + 1)];
            if (k < y) CHECK(lo <= hi);
            else CHECK(lo >= hi);
          }
          CHECK(label.probs[static_cast<std::size_t>(y)] ==
                *std::max_element(label.probs.begin(), label.probs.end()));
        }
      }
    }
  }
}

TEST_CASE("scaling the squared distances converges the encoding to one-hot") {
  // The encoding of ranks scaled by s equals softmax over -phi(s*y, s*k);
  // for large s this collapses onto the true class.
  const double s = 50.0;
  const int num_classes = 5;
  for (int y = 0; y < num_classes; ++y) {
    double total = 0.0;
    std::vector<double> probs(num_classes);
    for (int k = 0; k < num_classes; ++k) {
      probs[static_cast<std::size_t>(k)] = std::exp(-distance(kSquared, s * y, s * k));
      total += probs[static_cast<std::size_t>(k)];
    }
    const SoftLabel hard = one_hot(y, num_classes);
    for (int k = 0; k < num_classes; ++k) {
      CHECK(probs[static_cast<std::size_t>(k)] / total ==
            doctest::Approx(hard.probs[static_cast<std::size_t>(k)]).epsilon(1e-8));
    }
  }
}

TEST_CASE("one_hot") {
  const SoftLabel label = one_hot(2, 4);
  CHECK(label.probs == std::vector<double>{0.0, 0.0, 1.0, 0.0});
  CHECK(one_hot(0, 2).probs == std::vector<double>{1.0, 0.0});
  CHECK_THROWS_AS(one_hot(3, 3), std::invalid_argument);
}

TEST_CASE("smooth_labels") {
  CHECK(smooth_labels(1, 4, 0.0).probs == one_hot(1, 4).probs);
  const SoftLabel label = smooth_labels(0, 2, 0.2);
  CHECK(label.probs[0] == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(label.probs[1] == doctest::Approx(0.1).epsilon(1e-15));

  const SoftLabel wide = smooth_labels(2, 5, 0.1);
  double sum = 0.0;
  for (double p : wide.probs) {
    CHECK(p > 0.0);
    sum += p;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(smooth_labels(0, 3, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(smooth_labels(0, 3, 1.0), std::invalid_argument);
}

TEST_CASE("metric names round-trip") {
  for (const auto& metric : kAllMetrics) {
    CHECK(distance_kind_from_name(distance_kind_name(metric.kind)) == metric.kind);
  }
  CHECK_THROWS_AS(distance_kind_from_name("euclidean"), std::invalid_argument);
}

}  // TEST_SUITE
