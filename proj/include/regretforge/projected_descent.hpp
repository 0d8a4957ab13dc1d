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

#include <cmath>
#include <optional>
#include <utility>

#include "regretforge/errors.hpp"
#include "regretforge/geometry.hpp"
#include "regretforge/learner.hpp"
#include "regretforge/vector.hpp"

namespace regretforge {

/// Projected gradient descent on a bounded domain with step
/// diameter / sqrt(sum ||g_s||^2). Starts at the domain's center unless an
/// initial point is given.
class AdaptiveProjectedDescent final : public Learner {
 public:
  explicit AdaptiveProjectedDescent(ConvexDomain domain, std::optional<Vector> initial = std::nullopt)
      : Learner(domain.dim()), domain_(std::move(domain)) {
    if (!domain_.bounded()) {
      throw ConfigError("adaptive projected descent requires a bounded domain");
    }
    current_ = domain_.project(initial ? *initial : domain_.center());
  }

  const ConvexDomain& domain() const { return domain_; }
  double grad_sq_sum() const { return grad_sq_; }
  double step_size() const {
    return grad_sq_ > 0.0 ? domain_.diameter() / std::sqrt(grad_sq_) : 0.0;
  }

 protected:
  Vector compute_prediction() override { return current_; }

  void update(const Vector& g) override {
    grad_sq_ += norm2_sq(g);
    if (grad_sq_ == 0.0) return;
    Vector next = current_;
    axpy(-step_size(), g, next);
    current_ = domain_.project(next);
  }

 private:
  ConvexDomain domain_;
  Vector current_;
  double grad_sq_ = 0.0;
};

}  // namespace regretforge
