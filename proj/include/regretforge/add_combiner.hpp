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
#include <string>
#include <utility>
#include <vector>

#include "regretforge/dimfree.hpp"
#include "regretforge/errors.hpp"
#include "regretforge/geometry.hpp"
#include "regretforge/learner.hpp"

namespace regretforge {

/// Plays the sum of its children's iterates and forwards every gradient to
/// every child unchanged. Per round, <g, w> = sum_i <g, w_i>, so the combined
/// regret at u equals the sum of the children's regrets at any split of u.
class AddCombiner final : public Learner {
 public:
  explicit AddCombiner(std::vector<LearnerPtr> children)
      : Learner(first_dim(children)), children_(std::move(children)) {
    for (std::size_t i = 0; i < children_.size(); ++i) {
      if (!children_[i]) throw ConfigError("add combiner child " + std::to_string(i) + " is null");
      if (children_[i]->dim() != dim()) {
        throw DimensionError("add combiner child " + std::to_string(i) + " has dimension " +
                             std::to_string(children_[i]->dim()) + ", expected " +
                             std::to_string(dim()));
      }
    }
  }

  std::size_t size() const { return children_.size(); }
  Learner& child(std::size_t i) { return *children_.at(i); }
  const Learner& child(std::size_t i) const { return *children_.at(i); }

  bool unit_bounded_gradients() const override {
    for (const auto& c : children_) {
      if (c->unit_bounded_gradients()) return true;
    }
    return false;
  }

 protected:
  Vector compute_prediction() override {
    Vector w = children_.front()->predict();
    for (std::size_t i = 1; i < children_.size(); ++i) w += children_[i]->predict();
    return w;
  }

  void update(const Vector& g) override {
    for (auto& c : children_) c->observe(g);
  }

 private:
  static std::size_t first_dim(const std::vector<LearnerPtr>& children) {
    if (children.empty() || !children.front()) {
      throw ConfigError("add combiner needs at least one child");
    }
    return children.front()->dim();
  }

  std::vector<LearnerPtr> children_;
};

// Combines two or more learners by adding their iterates. Each child should
// already carry its share of the origin budget (eps / k for k children).
inline std::unique_ptr<AddCombiner> add_iterates(std::vector<LearnerPtr> children) {
  if (children.size() < 2) {
    throw ConfigError("add_iterates needs at least two children, got " +
                      std::to_string(children.size()));
  }
  return std::make_unique<AddCombiner>(std::move(children));
}

/// One dimension-free learner per p-norm grid entry, each with budget
/// eps / |grid|, combined by adding iterates. Costs O(d * |grid|) per round.
inline std::unique_ptr<AddCombiner> multi_norm(std::size_t d, double epsilon = kDefaultEpsilon,
                                               double stake_cap = kDefaultStakeCap) {
  const auto grid = pnorm_grid(d);
  const double share = epsilon / static_cast<double>(grid.size());
  std::vector<LearnerPtr> children;
  children.reserve(grid.size());
  for (const NormSpec& spec : grid) {
    children.push_back(std::make_unique<DimFreeLearner>(d, share, spec, stake_cap));
  }
  return std::make_unique<AddCombiner>(std::move(children));
}

}  // namespace regretforge
