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
#include "orcu/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "orcu/text.hpp"

namespace orcu {

namespace {

void require_nonempty(const PredictionSet& p) {
  if (p.size() == 0) throw std::invalid_argument("metrics: empty prediction set");
  if (p.num_classes < 2) throw std::invalid_argument("metrics: need at least 2 classes");
  if (p.probs.size() != p.size() * static_cast<std::size_t>(p.num_classes)) {
    throw std::invalid_argument("metrics: probability matrix shape mismatch");
  }
}

int bin_index(double conf, int num_bins) {
  const int idx = static_cast<int>(conf * num_bins);
  return std::clamp(idx, 0, num_bins - 1);
}

}  // namespace

void PredictionSet::validate() const {
  if (num_classes < 2) throw std::invalid_argument("PredictionSet: need at least 2 classes");
  if (probs.size() != size() * static_cast<std::size_t>(num_classes)) {
    throw std::invalid_argument("PredictionSet: probability matrix shape mismatch");
  }
  for (std::size_t n = 0; n < size(); ++n) {
    double sum = 0.0;
    for (double v : row(n)) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument("PredictionSet: probability out of [0, 1] in row " +
                                    std::to_string(n));
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw std::invalid_argument("PredictionSet: row " + std::to_string(n) +
                                  " sums to " + format_double(sum));
    }
    if (labels[n] < 0 || labels[n] >= num_classes) {
      throw std::invalid_argument("PredictionSet: label out of range in row " +
                                  std::to_string(n));
    }
  }
}

int argmax_class(std::span<const double> probs) {
  int best = 0;
  for (std::size_t k = 1; k < probs.size(); ++k) {
    if (probs[k] > probs[static_cast<std::size_t>(best)]) best = static_cast<int>(k);
  }
  return best;
}

double confidence(std::span<const double> probs) {
  return probs[static_cast<std::size_t>(argmax_class(probs))];
}

std::vector<int> predicted_classes(const PredictionSet& p) {
  std::vector<int> preds(p.size());
  for (std::size_t n = 0; n < p.size(); ++n) preds[n] = argmax_class(p.row(n));
  return preds;
}

std::vector<BinStats> reliability_bins(const PredictionSet& p, int num_bins) {
  if (num_bins < 1) throw std::invalid_argument("reliability_bins: num_bins must be >= 1");
  std::vector<BinStats> bins(static_cast<std::size_t>(num_bins));
  for (int b = 0; b < num_bins; ++b) {
    bins[static_cast<std::size_t>(b)].bin_id = b;
    bins[static_cast<std::size_t>(b)].lower_edge = static_cast<double>(b) / num_bins;
    bins[static_cast<std::size_t>(b)].upper_edge = static_cast<double>(b + 1) / num_bins;
  }
  std::vector<double> conf_sum(static_cast<std::size_t>(num_bins), 0.0);
  std::vector<double> hit_sum(static_cast<std::size_t>(num_bins), 0.0);
  for (std::size_t n = 0; n < p.size(); ++n) {
    const auto row = p.row(n);
    const int pred = argmax_class(row);
    const double conf = row[static_cast<std::size_t>(pred)];
    const auto b = static_cast<std::size_t>(bin_index(conf, num_bins));
    bins[b].count += 1;
    conf_sum[b] += conf;
    hit_sum[b] += (pred == p.labels[n]) ? 1.0 : 0.0;
  }
  for (std::size_t b = 0; b < bins.size(); ++b) {
    if (bins[b].count > 0) {
      bins[b].mean_confidence = conf_sum[b] / static_cast<double>(bins[b].count);
      bins[b].mean_accuracy = hit_sum[b] / static_cast<double>(bins[b].count);
    }
  }
  return bins;
}

double expected_calibration_error(const PredictionSet& p, int num_bins) {
  require_nonempty(p);
  const std::vector<BinStats> bins = reliability_bins(p, num_bins);
  double err = 0.0;
  for (const BinStats& bin : bins) {
    if (bin.count == 0) continue;
    const double weight = static_cast<double>(bin.count) / static_cast<double>(p.size());
    err += weight * std::abs(bin.mean_accuracy - bin.mean_confidence);
  }
  return err;
}

double static_calibration_error(const PredictionSet& p, int num_bins) {
  require_nonempty(p);
  if (num_bins < 1) throw std::invalid_argument("static_calibration_error: num_bins must be >= 1");
  const auto bins = static_cast<std::size_t>(num_bins);
  double total = 0.0;
  std::vector<double> conf_sum(bins), hit_sum(bins);
  std::vector<std::int64_t> count(bins);
  for (int k = 0; k < p.num_classes; ++k) {
    std::fill(conf_sum.begin(), conf_sum.end(), 0.0);
    std::fill(hit_sum.begin(), hit_sum.end(), 0.0);
    std::fill(count.begin(), count.end(), 0);
    for (std::size_t n = 0; n < p.size(); ++n) {
      const double conf = p.row(n)[static_cast<std::size_t>(k)];
      const auto b = static_cast<std::size_t>(bin_index(conf, num_bins));
      count[b] += 1;
      conf_sum[b] += conf;
      hit_sum[b] += (p.labels[n] == k) ? 1.0 : 0.0;
    }
    for (std::size_t b = 0; b < bins; ++b) {
      if (count[b] == 0) continue;
      const double weight = static_cast<double>(count[b]) / static_cast<double>(p.size());
      total += weight * std::abs(hit_sum[b] / static_cast<double>(count[b]) -
                                 conf_sum[b] / static_cast<double>(count[b]));
    }
  }
  return total / p.num_classes;
}

double adaptive_calibration_error(const PredictionSet& p, int num_ranges) {
  require_nonempty(p);
  if (num_ranges < 1) {
    throw std::invalid_argument("adaptive_calibration_error: num_ranges must be >= 1");
  }
  if (p.size() < static_cast<std::size_t>(num_ranges)) {
    throw std::invalid_argument("adaptive_calibration_error: fewer samples than ranges");
  }
  const std::size_t n_samples = p.size();
  std::vector<std::size_t> order(n_samples);
  double total = 0.0;
  for (int k = 0; k < p.num_classes; ++k) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return p.row(a)[static_cast<std::size_t>(k)] < p.row(b)[static_cast<std::size_t>(k)];
    });
    std::size_t start = 0;
    const std::size_t base = n_samples / static_cast<std::size_t>(num_ranges);
    const std::size_t remainder = n_samples % static_cast<std::size_t>(num_ranges);
    for (int r = 0; r < num_ranges; ++r) {
      const std::size_t len = base + (static_cast<std::size_t>(r) < remainder ? 1 : 0);
      double conf_sum = 0.0;
      double hit_sum = 0.0;
      for (std::size_t i = start; i < start + len; ++i) {
        conf_sum += p.row(order[i])[static_cast<std::size_t>(k)];
        hit_sum += (p.labels[order[i]] == k) ? 1.0 : 0.0;
      }
      start += len;
      total += std::abs(hit_sum / static_cast<double>(len) - conf_sum / static_cast<double>(len));
    }
  }
  return total / (static_cast<double>(p.num_classes) * static_cast<double>(num_ranges));
}

double quadratic_weighted_kappa(std::span<const int> preds, std::span<const int> labels,
                                int num_classes) {
  if (preds.size() != labels.size() || preds.empty()) {
    throw std::invalid_argument("quadratic_weighted_kappa: need equal-length, nonempty inputs");
  }
  if (num_classes < 1) throw std::invalid_argument("quadratic_weighted_kappa: bad num_classes");
  const auto classes = static_cast<std::size_t>(num_classes);
  std::vector<double> observed(classes * classes, 0.0);
  std::vector<double> label_marginal(classes, 0.0);
  std::vector<double> pred_marginal(classes, 0.0);
  for (std::size_t n = 0; n < preds.size(); ++n) {
    if (preds[n] < 0 || preds[n] >= num_classes || labels[n] < 0 || labels[n] >= num_classes) {
      throw std::invalid_argument("quadratic_weighted_kappa: class index out of range");
    }
    observed[static_cast<std::size_t>(labels[n]) * classes + static_cast<std::size_t>(preds[n])] += 1.0;
    label_marginal[static_cast<std::size_t>(labels[n])] += 1.0;
    pred_marginal[static_cast<std::size_t>(preds[n])] += 1.0;
  }
  const double total = static_cast<double>(preds.size());
  const double denom_sq =
      num_classes > 1 ? static_cast<double>(num_classes - 1) * (num_classes - 1) : 1.0;
  double weighted_observed = 0.0;
  double weighted_expected = 0.0;
  for (std::size_t i = 0; i < classes; ++i) {
    for (std::size_t j = 0; j < classes; ++j) {
      const double diff = static_cast<double>(i) - static_cast<double>(j);
      const double w = diff * diff / denom_sq;
      weighted_observed += w * observed[i * classes + j];
      weighted_expected += w * label_marginal[i] * pred_marginal[j] / total;
    }
  }
  if (weighted_expected == 0.0) {
    // Both marginals sit on one class; agreement is perfect or the counts
    // are inconsistent.
    if (weighted_observed == 0.0) return 1.0;
    throw std::runtime_error("quadratic_weighted_kappa: degenerate expected disagreement");
  }
  return 1.0 - weighted_observed / weighted_expected;
}

double unimodality_fraction(const PredictionSet& p) {
  require_nonempty(p);
  std::size_t unimodal = 0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    const auto row = p.row(n);
    const auto y = static_cast<std::size_t>(p.labels[n]);
    bool ok = true;
    for (std::size_t k = 0; k + 1 < row.size(); ++k) {
      if (k < y ? row[k] > row[k + 1] : row[k] < row[k + 1]) {
        ok = false;
        break;
      }
    }
    if (ok) ++unimodal;
  }
  return static_cast<double>(unimodal) / static_cast<double>(p.size());
}

double accuracy(std::span<const int> preds, std::span<const int> labels) {
  if (preds.size() != labels.size() || preds.empty()) {
    throw std::invalid_argument("accuracy: need equal-length, nonempty inputs");
  }
  std::size_t hits = 0;
  for (std::size_t n = 0; n < preds.size(); ++n) {
    if (preds[n] == labels[n]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(preds.size());
}

double mean_absolute_error(std::span<const int> preds, std::span<const int> labels) {
  if (preds.size() != labels.size() || preds.empty()) {
    throw std::invalid_argument("mean_absolute_error: need equal-length, nonempty inputs");
  }
  double sum = 0.0;
  for (std::size_t n = 0; n < preds.size(); ++n) {
    sum += std::abs(static_cast<double>(preds[n]) - static_cast<double>(labels[n]));
  }
  return sum / static_cast<double>(preds.size());
}

std::string bins_to_csv(const std::vector<BinStats>& bins) {
  std::string out = "bin_id,lower_edge,upper_edge,count,mean_confidence,mean_accuracy\n";
  for (const BinStats& bin : bins) {
    out += std::to_string(bin.bin_id);
    out += ',';
    out += format_double(bin.lower_edge);
    out += ',';
    out += format_double(bin.upper_edge);
    out += ',';
    out += std::to_string(bin.count);
    out += ',';
    out += format_double(bin.mean_confidence);
    out += ',';
    out += format_double(bin.mean_accuracy);
    out += '\n';
  }
  return out;
}

std::string bins_to_json(const std::vector<BinStats>& bins) {
  nlohmann::json arr = nlohmann::json::array();
  for (const BinStats& bin : bins) {
    arr.push_back({{"bin_id", bin.bin_id},
                   {"lower_edge", bin.lower_edge},
                   {"upper_edge", bin.upper_edge},
                   {"count", bin.count},
                   {"mean_confidence", bin.mean_confidence},
                   {"mean_accuracy", bin.mean_accuracy}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace orcu
