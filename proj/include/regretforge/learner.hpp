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
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "regretforge/errors.hpp"
#include "regretforge/vector.hpp"

namespace regretforge {

// Slack allowed on the unit-norm bound for gradients, hints and bettor
// outcomes.
inline constexpr double kNormTolerance = 1e-9;

inline void require_unit_bounded(const Vector& v, const char* what, std::size_t round) {
  const double n = norm2(v);
  if (!(n <= 1.0 + kNormTolerance)) {
    throw ContractError(std::string(what) + " norm " + std::to_string(n) + " exceeds 1 at round " +
                        std::to_string(round));
  }
}

/// Online linear optimization learner.
///
/// Each round the caller reads predict() and then reports the round's loss
/// vector through observe(). The prediction is computed once per round and
/// cached, so repeated predict() calls inside a round return the same iterate.
/// Subclasses implement compute_prediction() and update(); the protocol and
/// input validation live here.
class Learner {
 public:
  explicit Learner(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw ConfigError("learner dimension must be positive");
  }
  virtual ~Learner() = default;

  Learner(const Learner&) = delete;
  Learner& operator=(const Learner&) = delete;

  std::size_t dim() const { return dim_; }
  std::size_t round_index() const { return round_; }

  const Vector& predict() {
    if (!pending_) {
      Vector w = compute_prediction();
      if (w.dim() != dim_) {
        throw ContractError("iterate has dimension " + std::to_string(w.dim()) + ", expected " +
                            std::to_string(dim_) + " at round " + std::to_string(round_));
      }
      if (!w.all_finite()) {
        throw ContractError("non-finite iterate at round " + std::to_string(round_));
      }
      pending_ = std::move(w);
    }
    return *pending_;
  }

  void observe(const Vector& g) {
    if (!pending_) {
      throw ContractError("observe without a prediction at round " + std::to_string(round_));
    }
    if (g.dim() != dim_) {
      throw DimensionError("gradient has dimension " + std::to_string(g.dim()) + ", expected " +
                           std::to_string(dim_));
    }
    if (!g.all_finite()) {
      throw ContractError("non-finite gradient at round " + std::to_string(round_));
    }
    if (unit_bounded_gradients()) require_unit_bounded(g, "gradient", round_);
    update(g);
    pending_.reset();
    ++round_;
  }

  // Learners declaring this reject gradients with ||g||_2 > 1 + tol.
  virtual bool unit_bounded_gradients() const { return true; }

 protected:
  virtual Vector compute_prediction() = 0;
  virtual void update(const Vector& g) = 0;

 private:
  std::size_t dim_;
  std::size_t round_ = 0;
  std::optional<Vector> pending_;
};

using LearnerPtr = std::unique_ptr<Learner>;

/// Always plays the origin.
class ZeroLearner final : public Learner {
 public:
  explicit ZeroLearner(std::size_t dim) : Learner(dim) {}

 protected:
  Vector compute_prediction() override { return Vector::zeros(dim()); }
  void update(const Vector&) override {}
};

/// Always plays a fixed point.
class ConstantLearner final : public Learner {
 public:
  explicit ConstantLearner(Vector point) : Learner(point.dim()), point_(std::move(point)) {}

 protected:
  Vector compute_prediction() override { return point_; }
  void update(const Vector&) override {}

 private:
  Vector point_;
};

}  // namespace regretforge
