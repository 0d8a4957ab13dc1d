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
#include <string>

#include "regretforge/errors.hpp"
#include "regretforge/learner.hpp"
#include "regretforge/vector.hpp"

namespace regretforge {

inline constexpr double kDefaultEpsilon = 1.0;

// Upper limit on the wealth a bettor puts at stake in one round. Consistently
// positive outcomes grow wealth geometrically, which overflows a double
// within a few thousand rounds; staking at most this much keeps every iterate
// finite. Any stake below the current wealth keeps wealth positive, so the
// regret-at-origin guarantee is unaffected.
inline constexpr double kDefaultStakeCap = 1e6;

/// Krichevsky-Trofimov coin bettor on the real line.
///
/// Starts with wealth epsilon and bets the fraction
/// beta_t = (sum of past outcomes) / (round + 1) of its wealth. Outcomes z
/// are rewards (negated losses) with |z| <= 1, so |beta_t| < 1 and the
/// wealth never reaches zero. Its loss at the origin is epsilon - wealth.
class CoinBettor {
 public:
  explicit CoinBettor(double epsilon = kDefaultEpsilon, double stake_cap = kDefaultStakeCap)
      : epsilon_(epsilon), stake_cap_(stake_cap), wealth_(epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
      throw ConfigError("coin bettor budget epsilon must be positive, got " + std::to_string(epsilon));
    }
    if (!(stake_cap > 0.0)) throw ConfigError("coin bettor stake cap must be positive");
  }

  double betting_fraction() const { return signed_sum_ / static_cast<double>(round_ + 1); }

  double predict() const { return betting_fraction() * std::min(wealth_, stake_cap_); }

  // Reward convention: a bettor driven by loss l is fed z = -l.
  void observe(double z) {
    if (!std::isfinite(z) || std::abs(z) > 1.0 + kNormTolerance) {
      throw ContractError("coin bettor outcome |z| = " + std::to_string(std::abs(z)) +
                          " exceeds 1 at round " + std::to_string(round_));
    }
    const double y = predict();
    wealth_ += y * z;
    loss_ -= y * z;
    signed_sum_ += z;
    ++round_;
  }

  double epsilon() const { return epsilon_; }
  double wealth() const { return wealth_; }
  double signed_sum() const { return signed_sum_; }
  std::size_t round() const { return round_; }
  // Sum of y_t * (-z_t): the bettor's own loss, i.e. its regret at 0.
  double cumulative_loss() const { return loss_.value(); }

 private:
  double epsilon_;
  double stake_cap_;
  double wealth_;
  double signed_sum_ = 0.0;
  std::size_t round_ = 0;
  CompensatedSum loss_;
};

/// One-dimensional learner backed by a coin bettor; gradient g is fed as
/// outcome -g.
class CoinLearner final : public Learner {
 public:
  explicit CoinLearner(double epsilon = kDefaultEpsilon, double stake_cap = kDefaultStakeCap)
      : Learner(1), bettor_(epsilon, stake_cap) {}

  const CoinBettor& bettor() const { return bettor_; }

 protected:
  Vector compute_prediction() override { return Vector{bettor_.predict()}; }
  void update(const Vector& g) override { bettor_.observe(-g[0]); }

 private:
  CoinBettor bettor_;
};

}  // namespace regretforge
