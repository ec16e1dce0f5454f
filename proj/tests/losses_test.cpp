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

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "orcu/rng.hpp"

using namespace orcu;

namespace {

std::vector<double> random_logits(Rng& rng, int num_classes, double span = 4.0) {
  std::vector<double> z(static_cast<std::size_t>(num_classes));
  for (double& v : z) v = (2.0 * rng.next_unit() - 1.0) * span;
  return z;
}

// Central differences are O(step)-inaccurate within a step of the barrier's
// piecewise boundary, so gradient-check instances keep every adjacent
// difference away from it.
bool near_barrier_boundary(const std::vector<double>& z, double t, double margin = 1e-4) {
  const double boundary = -1.0 / (t * t);
  for (std::size_t p = 0; p + 1 < z.size(); ++p) {
    const double d = z[p] - z[p + 1];
    if (std::abs(d - boundary) < margin || std::abs(-d - boundary) < margin) return true;
  }
  return false;
}

std::vector<double> safe_logits(Rng& rng, int num_classes, double t) {
  for (;;) {
    std::vector<double> z = random_logits(rng, num_classes);
    if (!near_barrier_boundary(z, t)) return z;
  }
}

}  // namespace

TEST_SUITE("losses") {

TEST_CASE("log_softmax basics") {
  const std::vector<double> uniform{0.0, 0.0, 0.0};
  for (double v : log_softmax(uniform)) CHECK(v == doctest::Approx(-std::log(3.0)).epsilon(1e-15));

  const std::vector<double> extreme{1000.0, 0.0};
  for (double v : log_softmax(extreme)) CHECK(std::isfinite(v));

  const std::vector<double> ramp{1.0, 2.0, 3.0};
  double sum = 0.0;
  for (double v : log_softmax(ramp)) sum += std::exp(v);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

  const std::vector<double> bad{1.0, std::numeric_limits<double>::quiet_NaN()};
  CHECK_THROWS_AS(log_softmax(bad), std::invalid_argument);
  const std::vector<double> inf{1.0, std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(log_softmax(inf), std::invalid_argument);
}

TEST_CASE("sce_loss closed-form cases") {
  const std::vector<double> z{0.0, 0.0, 0.0};
  SoftLabel uniform;
  uniform.true_class = 0;
  uniform.probs = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  const LossResult at_optimum = sce_loss(z, uniform);
  for (double g : at_optimum.grad) CHECK(g == doctest::Approx(0.0).epsilon(1e-15));

  const LossResult vs_one_hot = sce_loss(z, one_hot(0, 3));
  CHECK(vs_one_hot.value == doctest::Approx(std::log(3.0)).epsilon(1e-15));

  SoftLabel short_target;
  short_target.probs = {1.0, 0.0};
  CHECK_THROWS_AS(sce_loss(z, short_target), std::invalid_argument);
}

TEST_CASE("barrier_penalty values") {
  CHECK(barrier_penalty(-1.0, {1.0}) == 0.0);

  // Both branches agree at the boundary -1/t^2.
  const BarrierConfig t3{3.0};
  const double log_side = barrier_penalty(-1.0 / 9.0, t3);
  CHECK(log_side == doctest::Approx(std::log(9.0) / 3.0).epsilon(1e-15));
  CHECK(barrier_penalty(0.0, t3) == doctest::Approx(std::log(9.0) / 3.0 + 1.0 / 3.0).epsilon(1e-15));
  CHECK(barrier_penalty(0.0, t3) == doctest::Approx(1.06574152577874).epsilon(1e-12));

  CHECK_THROWS_AS(barrier_penalty(0.0, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(barrier_penalty(0.0, {-2.0}), std::invalid_argument);
}

TEST_CASE("barrier_penalty continuity at the boundary") {
  for (double t : {1.0, 3.0, 5.0, 10.0}) {
    const BarrierConfig cfg{t};
    const double boundary = cfg.boundary();
    const double gap =
        std::abs(barrier_penalty(boundary - 1e-9, cfg) - barrier_penalty(boundary + 1e-9, cfg));
    CHECK(gap <= 1e-7);
  }
}

TEST_CASE("barrier_penalty is monotone") {
  for (double t : {1.0, 3.0, 5.0, 10.0}) {
    const BarrierConfig cfg{t};
    double prev = barrier_penalty(-10.0, cfg);
    for (int i = 1; i <= 2000; ++i) {
      const double r = -10.0 + 20.0 * i / 2000.0;
      const double cur = barrier_penalty(r, cfg);
      CHECK(prev <= cur);
      prev = cur;
    }
  }
}

TEST_CASE("barrier_penalty_grad branch values") {
  for (double t : {1.0, 3.0, 5.0, 10.0}) {
    const BarrierConfig cfg{t};
    // Exactly t at the boundary, approached from both sides.
    CHECK(barrier_penalty_grad(cfg.boundary(), cfg) == t);
    const double below = std::nextafter(cfg.boundary(), -1.0);
    CHECK(barrier_penalty_grad(below, cfg) == doctest::Approx(t).epsilon(1e-12));
  }
  CHECK(barrier_penalty_grad(0.5, {3.0}) == 3.0);
  CHECK(barrier_penalty_grad(-2.0, {1.0}) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("regularizer gradient regimes") {
  // Constant slope t above the boundary, -1/(t r) decay below it.
  for (double t : {1.0, 3.0, 10.0}) {
    const BarrierConfig cfg{t};
    CHECK(barrier_penalty_grad(cfg.boundary() + 0.5, cfg) == t);
    const double near = barrier_penalty_grad(2.0 * cfg.boundary(), cfg);
    const double far = barrier_penalty_grad(10.0 * cfg.boundary(), cfg);
    CHECK(near == doctest::Approx(t / 2.0).epsilon(1e-12));
    CHECK(far == doctest::Approx(t / 10.0).epsilon(1e-12));
    CHECK(far < near);
  }
}

TEST_CASE("reg_loss single-pair case") {
  // C=2, y=0: the only pair is on the k >= y side, r = z1 - z0 = -2.
  const std::vector<double> z{2.0, 0.0};
  const BarrierConfig cfg{1.0};
  const LossResult res = reg_loss(z, 0, cfg);
  CHECK(res.value == doctest::Approx(-std::log(2.0)).epsilon(1e-15));
  CHECK(res.grad[1] == doctest::Approx(0.5).epsilon(1e-15));   // -1/(t r) at r=-2
  CHECK(res.grad[0] == doctest::Approx(-0.5).epsilon(1e-15));

  const std::vector<double> grad_fd = oracle::central_differences(
      [&](const std::vector<double>& v) { return reg_loss(v, 0, cfg).value; }, z);
  CHECK(oracle::max_relative_error(res.grad, grad_fd) <= 1e-6);
}

TEST_CASE("reg_loss vanishes far from the boundary") {
  // Strongly unimodal logits with wide gaps: every pair sits deep in the
  // log branch where the pull decays like -1/(t r).
  const std::vector<double> z{-300.0, -100.0, 100.0, -100.0, -300.0};
  const BarrierConfig cfg{3.0};
  const LossResult res = reg_loss(z, 2, cfg);
  for (double g : res.grad) CHECK(std::abs(g) < 4e-3);
}

TEST_CASE("reg_loss validation") {
  const std::vector<double> z{0.0, 1.0, 2.0};
  CHECK_THROWS_AS(reg_loss(z, 3, {3.0}), std::invalid_argument);
  CHECK_THROWS_AS(reg_loss(z, -1, {3.0}), std::invalid_argument);
  const std::vector<double> single{1.0};
  CHECK_THROWS_AS(reg_loss(single, 0, {3.0}), std::invalid_argument);
}

TEST_CASE("orcu_loss is the exact sum of its parts") {
  Rng rng(5);
  const DistanceMetric metric{DistanceKind::kSquared, 1.0};
  const BarrierConfig cfg{3.0};
  for (int trial = 0; trial < 50; ++trial) {
    const int num_classes = 2 + static_cast<int>(rng.next_below(7));
    const int y = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(num_classes)));
    const std::vector<double> z = random_logits(rng, num_classes);
    const LossResult whole = orcu_loss(z, y, num_classes, metric, cfg);
    const LossResult sce = sce_loss(z, soft_encode(y, num_classes, metric));
    const LossResult reg = reg_loss(z, y, cfg);
    CHECK(whole.value == sce.value + reg.value);
    for (std::size_t k = 0; k < z.size(); ++k) CHECK(whole.grad[k] == sce.grad[k] + reg.grad[k]);
  }
}

TEST_CASE("orcu regularizer contributes exactly -t above the boundary on the k >= y side") {
  // C=2, y=0, r = z1 - z0 = 0.1 > -1/t^2: the pair adds -t to grad[0].
  const std::vector<double> z{0.0, 0.1};
  const DistanceMetric metric{DistanceKind::kSquared, 1.0};
  const BarrierConfig cfg{3.0};
  const LossResult whole = orcu_loss(z, 0, 2, metric, cfg);
  const LossResult sce = sce_loss(z, soft_encode(0, 2, metric));
  CHECK(whole.grad[0] == sce.grad[0] - cfg.t);
  CHECK(whole.grad[1] == sce.grad[1] + cfg.t);
}

TEST_CASE("ce_loss basics") {
  const std::vector<double> z{0.0, 0.0, 0.0, 0.0};
  CHECK(ce_loss(z, 1).value == doctest::Approx(std::log(4.0)).epsilon(1e-15));

  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const int num_classes = 2 + static_cast<int>(rng.next_below(7));
    const int y = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(num_classes)));
    const std::vector<double> logits = random_logits(rng, num_classes);
    const LossResult res = ce_loss(logits, y);
    const std::vector<double> probs = softmax(logits);
    double grad_sum = 0.0;
    for (std::size_t k = 0; k < logits.size(); ++k) {
      const double expected = probs[k] - (static_cast<int>(k) == y ? 1.0 : 0.0);
      CHECK(res.grad[k] == doctest::Approx(expected).epsilon(1e-14));
      grad_sum += res.grad[k];
    }
    CHECK(std::abs(grad_sum) <= 1e-10);
  }
  const std::vector<double> single{1.0};
  CHECK_THROWS_AS(ce_loss(single, 0), std::invalid_argument);
}

TEST_CASE("ls_loss basics") {
  Rng rng(23);
  const std::vector<double> z = random_logits(rng, 5);
  const LossResult smoothed = ls_loss(z, 2, 0.0);
  const LossResult plain = ce_loss(z, 2);
  CHECK(smoothed.value == plain.value);
  CHECK(smoothed.grad == plain.grad);

  const std::vector<double> uniform{0.0, 0.0};
  CHECK(ls_loss(uniform, 0, 0.1).value == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(ls_loss(uniform, 0, 1.0), std::invalid_argument);
}

TEST_CASE("analytic gradients match central finite differences") {
  Rng rng(101);
  const DistanceKind kinds[] = {DistanceKind::kSquared, DistanceKind::kAbsolute,
                                DistanceKind::kHuber, DistanceKind::kExponential};
  const double temperatures[] = {1.0, 3.0, 5.0, 10.0};
  for (int trial = 0; trial < 100; ++trial) {
    const int num_classes = 2 + static_cast<int>(rng.next_below(9));
    const int y = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(num_classes)));
    const DistanceMetric metric{kinds[rng.next_below(4)], 1.0};
    const BarrierConfig cfg{temperatures[rng.next_below(4)]};
    const std::vector<double> z = safe_logits(rng, num_classes, cfg.t);

    const auto check = [&](const LossResult& res, auto&& value_fn) {
      const std::vector<double> fd = oracle::central_differences(value_fn, z);
      CHECK(oracle::max_relative_error(res.grad, fd) <= 1e-6);
    };
    // Softmax-Jacobian null direction: cross-entropy-family gradients sum to 0.
    for (const LossResult& res :
         {sce_loss(z, soft_encode(y, num_classes, metric)), ce_loss(z, y), ls_loss(z, y, 0.1)}) {
      double grad_sum = 0.0;
      for (double g : res.grad) grad_sum += g;
      CHECK(std::abs(grad_sum) <= 1e-10);
    }

    check(sce_loss(z, soft_encode(y, num_classes, metric)), [&](const std::vector<double>& v) {
      return sce_loss(v, soft_encode(y, num_classes, metric)).value;
    });
    check(reg_loss(z, y, cfg),
          [&](const std::vector<double>& v) { return reg_loss(v, y, cfg).value; });
    check(orcu_loss(z, y, num_classes, metric, cfg), [&](const std::vector<double>& v) {
      return orcu_loss(v, y, num_classes, metric, cfg).value;
    });
    check(ce_loss(z, y), [&](const std::vector<double>& v) { return ce_loss(v, y).value; });
    check(ls_loss(z, y, 0.1),
          [&](const std::vector<double>& v) { return ls_loss(v, y, 0.1).value; });
  }
}

TEST_CASE("losses are translation invariant") {
  Rng rng(31);
  const DistanceMetric metric{DistanceKind::kSquared, 1.0};
  const BarrierConfig cfg{3.0};
  for (double shift : {0.7, -3.2, 100.0}) {
    for (int trial = 0; trial < 20; ++trial) {
      const int num_classes = 2 + static_cast<int>(rng.next_below(7));
      const int y = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(num_classes)));
      const std::vector<double> z = random_logits(rng, num_classes);
      std::vector<double> shifted = z;
      for (double& v : shifted) v += shift;

      const auto compare = [&](const LossResult& a, const LossResult& b) {
        CHECK(std::abs(a.value - b.value) <= 1e-9);
        for (std::size_t k = 0; k < a.grad.size(); ++k) {
          CHECK(std::abs(a.grad[k] - b.grad[k]) <= 1e-9);
        }
      };
      compare(ce_loss(z, y), ce_loss(shifted, y));
      compare(ls_loss(z, y, 0.1), ls_loss(shifted, y, 0.1));
      compare(sce_loss(z, soft_encode(y, num_classes, metric)),
              sce_loss(shifted, soft_encode(y, num_classes, metric)));
      compare(reg_loss(z, y, cfg), reg_loss(shifted, y, cfg));
      compare(orcu_loss(z, y, num_classes, metric, cfg),
              orcu_loss(shifted, y, num_classes, metric, cfg));
    }
  }
}

TEST_CASE("gradient descent on the loss alone reaches a unimodal optimum") {
  // Spot check; the acceptance suite sweeps every C in {3..8} and class.
  const DistanceMetric metric{DistanceKind::kSquared, 1.0};
  const BarrierConfig cfg{3.0};
  Rng rng(47);
  for (const int num_classes : {3, 5}) {
    for (int y = 0; y < num_classes; ++y) {
      std::vector<double> z = random_logits(rng, num_classes, 1.0);
      for (int step = 0; step < 4000; ++step) {
        const LossResult res = orcu_loss(z, y, num_classes, metric, cfg);
        for (std::size_t k = 0; k < z.size(); ++k) z[k] -= 0.1 * res.grad[k];
      }
      for (int k = 0; k + 1 < num_classes; ++k) {
        if (k < y) CHECK(z[static_cast<std::size_t>(k)] < z[static_cast<std::size_t>(k + 1)]);
        else CHECK(z[static_cast<std::size_t>(k)] > z[static_cast<std::size_t>(k + 1)]);
      }
    }
  }
}

TEST_CASE("eval_loss dispatch matches the direct calls") {
  Rng rng(59);
  const std::vector<double> z = random_logits(rng, 4);
  LossSpec spec;
  spec.kind = LossKind::kCrossEntropy;
  CHECK(eval_loss(spec, z, 1).value == ce_loss(z, 1).value);
  spec.kind = LossKind::kLabelSmoothing;
  spec.epsilon = 0.2;
  CHECK(eval_loss(spec, z, 1).value == ls_loss(z, 1, 0.2).value);
  spec.kind = LossKind::kSoftCrossEntropy;
  CHECK(eval_loss(spec, z, 1).value == sce_loss(z, soft_encode(1, 4, spec.metric)).value);
  spec.kind = LossKind::kOrcu;
  CHECK(eval_loss(spec, z, 1).value == orcu_loss(z, 1, 4, spec.metric, spec.barrier).value);

  CHECK(loss_kind_from_name("orcu") == LossKind::kOrcu);
  CHECK_THROWS_AS(loss_kind_from_name("focal"), std::invalid_argument);
}

}  // TEST_SUITE
