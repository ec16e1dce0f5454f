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
#ifndef ORCU_DATASET_HPP_
#define ORCU_DATASET_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace orcu {

/// Feature matrix plus integer ordinal labels in [0, num_classes).
struct OrdinalDataset {
  std::vector<double> features;  // N x dim, row-major
  std::vector<int> labels;       // length N
  int dim = 0;
  int num_classes = 0;
  std::uint64_t seed = 0;  // generator provenance

  std::size_t size() const { return labels.size(); }
  std::span<const double> row(std::size_t n) const {
    return {features.data() + n * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
  }
};

/// Deterministic three-way split request. Fractions must each lie in (0, 1)
/// and sum to one within 1e-12.
struct SplitSpec {
  double train_fraction = 0.8;
  double val_fraction = 0.1;
  double test_fraction = 0.1;
  std::uint64_t seed = 0;
};

struct DatasetSplits {
  OrdinalDataset train;
  OrdinalDataset val;
  OrdinalDataset test;
};

/// Ordered-logit generator: features are standard normals, a unit direction
/// w is derived from the seed, the latent score is u = w.x + noise_scale * e
/// with e standard normal, and labels come from slicing u at its empirical
/// quantiles so classes are near-balanced. Adjacent classes are therefore
/// more confusable than distant ones. Fully determined by the arguments.
OrdinalDataset generate_ordered_logit(std::size_t n, int dim, int num_classes,
                                      double noise_scale, std::uint64_t seed);

/// Disjoint, covering split after a seeded Fisher-Yates shuffle. Train and
/// val take floor(fraction * N) samples, test takes the rest; every part
/// must end up with at least one sample.
DatasetSplits split_dataset(const OrdinalDataset& ds, const SplitSpec& spec);

/// CSV with header f0,...,f{D-1},label; feature values carry 17 significant
/// digits and round-trip exactly.
void save_dataset_csv(const OrdinalDataset& ds, const std::string& path);

/// Parses a dataset CSV, validating width and label range; errors name the
/// offending line. The class count is not part of the CSV schema, so the
/// caller supplies it (typically from the sidecar manifest).
OrdinalDataset load_dataset_csv(const std::string& path, int num_classes);

/// Provenance sidecar describing a generated dataset.
std::string dataset_manifest_json(std::size_t n, int dim, int num_classes, double noise_scale,
                                  std::uint64_t seed);

/// Reads num_classes back out of a manifest produced by the function above.
int num_classes_from_manifest(const std::string& path);

}  // namespace orcu

#endif  // ORCU_DATASET_HPP_
