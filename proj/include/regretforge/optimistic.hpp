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
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "regretforge/coin_bettor.hpp"
#include "regretforge/errors.hpp"
#include "regretforge/learner.hpp"
#include "regretforge/vector.hpp"

namespace regretforge {

/// Learner that receives k hint vectors before fixing each prediction.
///
/// Hints must have unit-bounded norm. A second predict() inside one round
/// returns the cached iterate if the hints are unchanged and is a contract
/// violation otherwise.
class HintedLearner {
 public:
  HintedLearner(std::size_t dim, std::size_t num_hints) : dim_(dim), num_hints_(num_hints) {
    if (dim == 0) throw ConfigError("hinted learner dimension must be positive");
    if (num_hints == 0) throw ConfigError("hinted learner needs at least one hint");
  }
  virtual ~HintedLearner() = default;

  HintedLearner(const HintedLearner&) = delete;
  HintedLearner& operator=(const HintedLearner&) = delete;

  std::size_t dim() const { return dim_; }
  std::size_t num_hints() const { return num_hints_; }
  std::size_t round_index() const { return round_; }

  const Vector& predict(std::span<const Vector> hints) {
    if (hints.size() != num_hints_) {
      throw ContractError("expected " + std::to_string(num_hints_) + " hints, got " +
                          std::to_string(hints.size()) + " at round " + std::to_string(round_));
    }
    if (pending_) {
      if (!std::equal(hints.begin(), hints.end(), hints_.begin())) {
        throw ContractError("hint changed after the prediction was fixed at round " +
                            std::to_string(round_));
      }
      return *pending_;
    }
    for (const Vector& h : hints) {
      if (h.dim() != dim_) {
        throw DimensionError("hint has dimension " + std::to_string(h.dim()) + ", expected " +
                             std::to_string(dim_));
      }
      if (!h.all_finite()) throw ContractError("non-finite hint at round " + std::to_string(round_));
      require_unit_bounded(h, "hint", round_);
    }
    hints_.assign(hints.begin(), hints.end());
    Vector w = compute_prediction(hints_);
    if (!w.all_finite()) throw ContractError("non-finite iterate at round " + std::to_string(round_));
    pending_ = std::move(w);
    return *pending_;
  }

  const Vector& predict(const Vector& hint) { return predict(std::span<const Vector>(&hint, 1)); }

  void observe(const Vector& g) {
    if (!pending_) {
      throw ContractError("observe without a hinted prediction at round " + std::to_string(round_));
    }
    if (g.dim() != dim_) {
      throw DimensionError("gradient has dimension " + std::to_string(g.dim()) + ", expected " +
                           std::to_string(dim_));
    }
    if (!g.all_finite()) throw ContractError("non-finite gradient at round " + std::to_string(round_));
    require_unit_bounded(g, "gradient", round_);
    update(g, hints_);
    pending_.reset();
    ++round_;
  }

  // Cumulative loss of each hint-weight bettor, i.e. its regret at 0.
  virtual std::vector<double> bettor_losses() const = 0;

 protected:
  virtual Vector compute_prediction(std::span<const Vector> hints) = 0;
  virtual void update(const Vector& g, std::span<const Vector> hints) = 0;

 private:
  std::size_t dim_;
  std::size_t num_hints_;
  std::size_t round_ = 0;
  std::vector<Vector> hints_;
  std::optional<Vector> pending_;
};

using HintedLearnerPtr = std::unique_ptr<HintedLearner>;

// Bettor outcome <a, b> for inputs already validated to unit norm; clamping
// only absorbs the rounding slack those checks allow.
inline double unit_outcome(const Vector& a, const Vector& b) {
  return std::clamp(dot(a, b), -1.0, 1.0);
}

// x - y h.
inline Vector optimistic_play(Vector x, double y, const Vector& h) {
  axpy(-y, h, x);
  return x;
}

/// Optimistic reduction on the whole space: plays w = x - y h with x from
/// the base learner and the scalar y from a coin bettor. The base learner
/// sees g; the bettor sees loss -<g, h> (outcome <g, h>).
class OptimisticLearner final : public HintedLearner {
 public:
  OptimisticLearner(LearnerPtr base, double bettor_epsilon = kDefaultEpsilon,
                    double stake_cap = kDefaultStakeCap)
      : HintedLearner(base->dim(), 1), base_(std::move(base)), bettor_(bettor_epsilon, stake_cap) {}

  Learner& base() { return *base_; }
  const CoinBettor& bettor() const { return bettor_; }
  std::vector<double> bettor_losses() const override { return {bettor_.cumulative_loss()}; }

 protected:
  Vector compute_prediction(std::span<const Vector> hints) override {
    return optimistic_play(base_->predict(), bettor_.predict(), hints[0]);
  }

  void update(const Vector& g, std::span<const Vector> hints) override {
    base_->observe(g);
    bettor_.observe(unit_outcome(g, hints[0]));
  }

 private:
  LearnerPtr base_;
  CoinBettor bettor_;
};

}  // namespace regretforge
