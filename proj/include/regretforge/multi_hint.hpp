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

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "regretforge/coin_bettor.hpp"
#include "regretforge/learner.hpp"
#include "regretforge/optimistic.hpp"
#include "regretforge/vector.hpp"

namespace regretforge {

/// Optimism with k hint sequences: plays x - sum_i y_i h_i with one
/// independent coin bettor per hint. Bettor i sees loss -<g, h_i>.
class MultiHintLearner final : public HintedLearner {
 public:
  MultiHintLearner(LearnerPtr base, std::size_t num_hints, double bettor_epsilon = kDefaultEpsilon,
                   double stake_cap = kDefaultStakeCap)
      : HintedLearner(base->dim(), num_hints), base_(std::move(base)) {
    bettors_.reserve(num_hints);
    for (std::size_t i = 0; i < num_hints; ++i) bettors_.emplace_back(bettor_epsilon, stake_cap);
  }

  Learner& base() { return *base_; }
  const CoinBettor& bettor(std::size_t i) const { return bettors_.at(i); }

  std::vector<double> bettor_losses() const override {
    std::vector<double> out;
    out.reserve(bettors_.size());
    for (const auto& b : bettors_) out.push_back(b.cumulative_loss());
    return out;
  }

 protected:
  Vector compute_prediction(std::span<const Vector> hints) override {
    Vector w = base_->predict();
    for (std::size_t i = 0; i < hints.size(); ++i) axpy(-bettors_[i].predict(), hints[i], w);
    return w;
  }

  void update(const Vector& g, std::span<const Vector> hints) override {
    base_->observe(g);
    for (std::size_t i = 0; i < hints.size(); ++i) bettors_[i].observe(unit_outcome(g, hints[i]));
  }

 private:
  LearnerPtr base_;
  std::vector<CoinBettor> bettors_;
};

}  // namespace regretforge
