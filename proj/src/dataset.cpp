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
#include "orcu/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "orcu/rng.hpp"
#include "orcu/text.hpp"

namespace orcu {

namespace {

OrdinalDataset take_rows(const OrdinalDataset& ds, std::span<const std::size_t> indices) {
  OrdinalDataset part;
  part.dim = ds.dim;
  part.num_classes = ds.num_classes;
  part.seed = ds.seed;
  part.features.reserve(indices.size() * static_cast<std::size_t>(ds.dim));
  part.labels.reserve(indices.size());
  for (std::size_t idx : indices) {
    const auto row = ds.row(idx);
    part.features.insert(part.features.end(), row.begin(), row.end());
    part.labels.push_back(ds.labels[idx]);
  }
  return part;
}

}  // namespace

OrdinalDataset generate_ordered_logit(std::size_t n, int dim, int num_classes,
                                      double noise_scale, std::uint64_t seed) {
  if (num_classes < 2) throw std::invalid_argument("generate: num_classes must be >= 2");
  if (dim < 1) throw std::invalid_argument("generate: dim must be >= 1");
  if (n < static_cast<std::size_t>(num_classes)) {
    throw std::invalid_argument("generate: need at least one sample per class");
  }
  if (!(noise_scale >= 0.0)) throw std::invalid_argument("generate: noise_scale must be >= 0");

  Rng rng(seed);

  // Unit latent direction, then per sample: dim feature draws, one noise draw.
  std::vector<double> direction(static_cast<std::size_t>(dim));
  double norm_sq = 0.0;
  for (double& w : direction) {
    w = rng.next_normal();
    norm_sq += w * w;
  }
  const double norm = std::sqrt(norm_sq);
  if (norm == 0.0) direction[0] = 1.0;  // unreachable in practice
  else for (double& w : direction) w /= norm;

  OrdinalDataset ds;
  ds.dim = dim;
  ds.num_classes = num_classes;
  ds.seed = seed;
  ds.features.resize(n * static_cast<std::size_t>(dim));
  ds.labels.resize(n);

  std::vector<double> latent(n);
  for (std::size_t i = 0; i < n; ++i) {
    double score = 0.0;
    for (int j = 0; j < dim; ++j) {
      const double x = rng.next_normal();
      ds.features[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(j)] = x;
      score += direction[static_cast<std::size_t>(j)] * x;
    }
    latent[i] = score + noise_scale * rng.next_normal();
  }

  // Thresholds at the empirical quantiles k/C of the latent scores; class
  // counts then differ by at most one.
  std::vector<double> sorted_latent = latent;
  std::sort(sorted_latent.begin(), sorted_latent.end());
  std::vector<double> thresholds(static_cast<std::size_t>(num_classes - 1));
  for (int k = 1; k < num_classes; ++k) {
    const std::size_t pos = static_cast<std::size_t>(k) * n / static_cast<std::size_t>(num_classes);
    thresholds[static_cast<std::size_t>(k - 1)] = sorted_latent[pos];
  }
  for (std::size_t i = 0; i < n; ++i) {
    int label = 0;
    for (double threshold : thresholds) {
      if (latent[i] >= threshold) ++label;
    }
    ds.labels[i] = label;
  }
  return ds;
}

DatasetSplits split_dataset(const OrdinalDataset& ds, const SplitSpec& spec) {
  const double sum = spec.train_fraction + spec.val_fraction + spec.test_fraction;
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("split: fractions must sum to 1");
  }
  for (double f : {spec.train_fraction, spec.val_fraction, spec.test_fraction}) {
    if (!(f > 0.0 && f < 1.0)) throw std::invalid_argument("split: fractions must lie in (0, 1)");
  }
  const std::size_t n = ds.size();
  const auto n_train = static_cast<std::size_t>(spec.train_fraction * static_cast<double>(n));
  const auto n_val = static_cast<std::size_t>(spec.val_fraction * static_cast<double>(n));
  if (n_train == 0 || n_val == 0 || n_train + n_val >= n) {
    throw std::invalid_argument("split: every part needs at least one sample");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(spec.seed);
  shuffle(order, rng);

  const std::span<const std::size_t> view(order);
  DatasetSplits out;
  out.train = take_rows(ds, view.subspan(0, n_train));
  out.val = take_rows(ds, view.subspan(n_train, n_val));
  out.test = take_rows(ds, view.subspan(n_train + n_val));
  return out;
}

void save_dataset_csv(const OrdinalDataset& ds, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open for writing: " + path);
  for (int j = 0; j < ds.dim; ++j) file << 'f' << j << ',';
  file << "label\n";
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (double v : ds.row(i)) file << format_double(v) << ',';
    file << ds.labels[i] << '\n';
  }
  if (!file) throw std::runtime_error("write failed: " + path);
}

OrdinalDataset load_dataset_csv(const std::string& path, int num_classes) {
  if (num_classes < 2) throw std::invalid_argument("load: num_classes must be >= 2");
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open dataset: " + path);

  std::string line;
  if (!std::getline(file, line)) throw std::invalid_argument(path + ":1: empty file");
  const auto header = split_csv_line(line);
  if (header.size() < 2 || header.back() != "label") {
    throw std::invalid_argument(path + ":1: expected header f0,...,label");
  }
  const int dim = static_cast<int>(header.size()) - 1;
  for (int j = 0; j < dim; ++j) {
    if (header[static_cast<std::size_t>(j)] != "f" + std::to_string(j)) {
      throw std::invalid_argument(path + ":1: expected column f" + std::to_string(j));
    }
  }

  OrdinalDataset ds;
  ds.dim = dim;
  ds.num_classes = num_classes;
  std::size_t line_no = 1;
  while (std::getline(file, line)) {
    ++line_no;
    if (line.empty() && file.peek() == std::ifstream::traits_type::eof()) break;
    const std::string context = path + ":" + std::to_string(line_no);
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw std::invalid_argument(context + ": expected " + std::to_string(header.size()) +
                                  " columns, got " + std::to_string(fields.size()));
    }
    for (int j = 0; j < dim; ++j) {
      const double value = parse_double(fields[static_cast<std::size_t>(j)], context);
      if (!std::isfinite(value)) {
        throw std::invalid_argument(context + ": non-finite feature value");
      }
      ds.features.push_back(value);
    }
    const long label = parse_long(fields.back(), context);
    if (label < 0 || label >= num_classes) {
      throw std::invalid_argument(context + ": label " + std::to_string(label) +
                                  " out of range [0, " + std::to_string(num_classes) + ")");
    }
    ds.labels.push_back(static_cast<int>(label));
  }
  if (ds.labels.empty()) throw std::invalid_argument(path + ": no data rows");
  return ds;
}

std::string dataset_manifest_json(std::size_t n, int dim, int num_classes, double noise_scale,
                                  std::uint64_t seed) {
  nlohmann::json doc{{"kind", "ordered_logit"},
                     {"n", n},
                     {"dim", dim},
                     {"num_classes", num_classes},
                     {"noise_scale", noise_scale},
                     {"seed", seed}};
  return doc.dump(2) + "\n";
}

int num_classes_from_manifest(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open manifest: " + path);
  nlohmann::json doc;
  try {
    file >> doc;
    return doc.at("num_classes").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path + ": bad manifest: " + e.what());
  }
}

}  // namespace orcu
