// Copyright 2026 The RegretForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "regretforge/coin_bettor.hpp"
#include "regretforge/geometry.hpp"
#include "regretforge/learner.hpp"
#include "regretforge/vector.hpp"

namespace regretforge {

/// Adaptive dual averaging over the unit ball of a p-norm.
///
/// The played direction minimizes <theta, x> + ||x||_p^2 / (2 eta) over
/// ||x||_p <= 1, where theta is the running gradient sum and
/// eta = sqrt(lambda / (1 + sum ||g_s||_q^2)). The minimizer is
/// -min(1, eta ||theta||_q) * v, with v the unit p-norm vector attaining the
/// dual norm of theta.
class UnitBallDirection {
 public:
  UnitBallDirection(std::size_t dim, NormSpec norm)
      : norm_(norm), theta_(dim), direction_(dim), scratch_(dim) {
    if (!(norm.lambda > 0.0)) {
      throw ConfigError("direction learner needs a strongly convex norm (p > 1)");
    }
  }

  const Vector& direction() const { return direction_; }
  const NormSpec& norm() const { return norm_; }
  double grad_sq_sum() const { return grad_sq_; }

  void update(const Vector& g) {
    theta_ += g;
    const double gq = dual_norm(g, norm_);
    grad_sq_ += gq * gq;
    recompute();
  }

 private:
  void recompute() {
    const std::size_t d = theta_.dim();
    double m = 0.0;
    for (std::size_t i = 0; i < d; ++i) m = std::max(m, std::abs(theta_[i]));
    // Zero accumulated gradient: keep the previous direction.
    if (m == 0.0) return;

    const double eta = std::sqrt(norm_.lambda / (1.0 + grad_sq_));
    double theta_q = 0.0;
    if (norm_.q == 2.0) {
      theta_q = norm2(theta_);
      for (std::size_t i = 0; i < d; ++i) scratch_[i] = theta_[i] / theta_q;
    } else {
      // a_i = (|theta_i|/m)^(q-1); sum a_i |theta_i|/m = sum (|theta_i|/m)^q.
      double sum_q = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        const double r = std::abs(theta_[i]) / m;
        const double a = std::pow(r, norm_.q - 1.0);
        scratch_[i] = std::copysign(a, theta_[i]);
        sum_q += a * r;
      }
      theta_q = m * std::pow(sum_q, 1.0 / norm_.q);
      const double a_p = std::pow(sum_q, 1.0 / norm_.p);
      for (std::size_t i = 0; i < d; ++i) scratch_[i] /= a_p;
    }
    const double radius = std::min(1.0, eta * theta_q);
    for (std::size_t i = 0; i < d; ++i) direction_[i] = -radius * scratch_[i];
  }

  NormSpec norm_;
  Vector theta_;
  Vector direction_;
  Vector scratch_;
  double grad_sq_ = 0.0;
};

/// Dimension-free parameter-free learner: a coin-betting magnitude times a
/// unit-ball direction. The bettor is fed -<g, direction>, which lies in
/// [-1, 1] because ||g||_q <= ||g||_2 <= 1 for q >= 2.
class DimFreeLearner final : public Learner {
 public:
  DimFreeLearner(std::size_t dim, double epsilon = kDefaultEpsilon,
                 NormSpec norm = NormSpec::euclidean(), double stake_cap = kDefaultStakeCap)
      : Learner(dim), magnitude_(epsilon, stake_cap), direction_(dim, norm) {}

  const CoinBettor& magnitude() const { return magnitude_; }
  const UnitBallDirection& direction() const { return direction_; }

 protected:
  Vector compute_prediction() override { return direction_.direction() * magnitude_.predict(); }

  void update(const Vector& g) override {
    const double s = dot(g, direction_.direction());
    magnitude_.observe(-s);
    direction_.update(g);
  }

 private:
  CoinBettor magnitude_;
  UnitBallDirection direction_;
};

}  // namespace regretforge
