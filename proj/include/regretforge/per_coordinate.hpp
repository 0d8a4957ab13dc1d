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
#include <vector>

#include "regretforge/coin_bettor.hpp"
#include "regretforge/learner.hpp"
#include "regretforge/vector.hpp"

namespace regretforge {

/// d independent coin bettors, one per coordinate, each with budget eps / d.
class PerCoordinateLearner final : public Learner {
 public:
  PerCoordinateLearner(std::size_t dim, double epsilon = kDefaultEpsilon,
                       double stake_cap = kDefaultStakeCap)
      : Learner(dim) {
    coords_.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      coords_.emplace_back(epsilon / static_cast<double>(dim), stake_cap);
    }
  }

  const CoinBettor& coordinate(std::size_t i) const { return coords_.at(i); }

 protected:
  Vector compute_prediction() override {
    Vector w(dim());
    for (std::size_t i = 0; i < dim(); ++i) w[i] = coords_[i].predict();
    return w;
  }

  void update(const Vector& g) override {
    for (std::size_t i = 0; i < dim(); ++i) coords_[i].observe(-g[i]);
  }

 private:
  std::vector<CoinBettor> coords_;
};

}  // namespace regretforge
