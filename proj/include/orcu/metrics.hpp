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
#ifndef ORCU_METRICS_HPP_
#define ORCU_METRICS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace orcu {

/// Predicted probability rows plus ground-truth labels for N samples.
struct PredictionSet {
  std::vector<double> probs;  // N x num_classes, row-major
  std::vector<int> labels;    // length N
  int num_classes = 0;

  std::size_t size() const { return labels.size(); }
  std::span<const double> row(std::size_t n) const {
    return {probs.data() + n * static_cast<std::size_t>(num_classes),
            static_cast<std::size_t>(num_classes)};
  }

  /// Throws std::invalid_argument unless every row is a probability vector
  /// (entries in [0, 1], sum within 1e-9 of one) and labels are in range.
  void validate() const;
};

/// One reliability-diagram bin. Bins are half-open [lower, upper) except the
/// last, which includes 1.0. Mean fields are zero when the bin is empty.
struct BinStats {
  int bin_id = 0;
  std::int64_t count = 0;
  double mean_confidence = 0.0;
  double mean_accuracy = 0.0;
  double lower_edge = 0.0;
  double upper_edge = 0.0;
};

/// Argmax with lowest-index tie-breaking.
int argmax_class(std::span<const double> probs);

/// Confidence of a prediction row: its maximum probability.
double confidence(std::span<const double> probs);

/// Per-prediction argmax classes for a whole set.
std::vector<int> predicted_classes(const PredictionSet& p);

/// Equal-width confidence bins over [0, 1]; every sample lands in exactly
/// one bin and empty bins are reported with count zero.
std::vector<BinStats> reliability_bins(const PredictionSet& p, int num_bins);

/// Expected calibration error: bin-count-weighted mean of |accuracy - confidence|.
double expected_calibration_error(const PredictionSet& p, int num_bins = 15);

/// Static calibration error: the binned error computed per class, using
/// column k as the class-k confidence and (label == k) as correctness,
/// averaged over classes.
double static_calibration_error(const PredictionSet& p, int num_bins = 15);

/// Adaptive calibration error: per class, samples are stably sorted by
/// class-k confidence and split into num_ranges contiguous ranges whose
/// sizes differ by at most one (earlier ranges take the remainder); the
/// result is the plain mean of |accuracy - confidence| over all cells.
double adaptive_calibration_error(const PredictionSet& p, int num_ranges = 15);

/// Quadratic weighted kappa with weights (i-j)^2/(C-1)^2. Returns 1 when
/// both expected and observed disagreement vanish (perfect agreement on a
/// single class).
double quadratic_weighted_kappa(std::span<const int> preds, std::span<const int> labels,
                                int num_classes);

/// Fraction of rows whose probabilities rise monotonically up to the true
/// label and fall monotonically after it (non-strict comparisons).
double unimodality_fraction(const PredictionSet& p);

double accuracy(std::span<const int> preds, std::span<const int> labels);
double mean_absolute_error(std::span<const int> preds, std::span<const int> labels);

/// CSV with header bin_id,lower_edge,upper_edge,count,mean_confidence,mean_accuracy;
/// doubles carry 17 significant digits so values round-trip exactly.
std::string bins_to_csv(const std::vector<BinStats>& bins);

/// The same records as a JSON array.
std::string bins_to_json(const std::vector<BinStats>& bins);

}  // namespace orcu

#endif  // ORCU_METRICS_HPP_
