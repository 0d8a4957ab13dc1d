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
#include <string>
#include <utility>
#include <vector>

#include "regretforge/coin_bettor.hpp"
#include "regretforge/errors.hpp"
#include "regretforge/geometry.hpp"
#include "regretforge/learner.hpp"
#include "regretforge/optimistic.hpp"
#include "regretforge/vector.hpp"

namespace regretforge {

// Below this, y * ||h|| is treated as zero and z is never rescaled.
inline constexpr double kRescaleGuard = 1e-12;

struct TildeHint {
  Vector hint;  // h~ = h/2 + ||h|| z / 2
  Vector z;     // subgradient of the distance function at x - y h~
};

/// Solves h~ = h/2 + ||h|| dS(x - y h~) / 2 in closed form.
///
/// z starts as the distance subgradient at p = x - y h/2. Moving from p to
/// x - y h~ shifts by -y ||h|| z / 2 along the outward normal; while that
/// shift does not exceed S(p) the projection is unchanged and z stays a
/// subgradient. Otherwise z is scaled by a = 2 S(p) / (y ||h||), which lands
/// x - y h~ exactly on the projection of p, where a z is still a subgradient.
/// For y < 0 the shift points outward and no rescaling is needed.
inline TildeHint tilde_hint(const ConvexDomain& domain, const Vector& x, double y, const Vector& h) {
  require_same_dim(x, h, "tilde_hint");
  const double h_norm = norm2(h);
  Vector probe = x;
  axpy(-y / 2.0, h, probe);
  Vector z = domain.distance_subgradient(probe);
  const double reach = y * h_norm;
  if (reach > kRescaleGuard) {
    const double s = domain.distance(probe);
    if (reach / 2.0 > s) z *= 2.0 * s / reach;
  }
  Vector th = h * 0.5;
  axpy(h_norm / 2.0, z, th);
  return {std::move(th), std::move(z)};
}

// g~ = g/2 + ||g|| z / 2.
inline Vector surrogate_gradient(const Vector& g, const Vector& z) {
  Vector out = g * 0.5;
  axpy(norm2(g) / 2.0, z, out);
  return out;
}

/// Per-round internals of the constrained reduction, exposed for auditing.
struct ConstrainedTrace {
  Vector x;
  double y = 0.0;
  Vector hint;
  Vector tilde_hint;
  Vector z;
  Vector tilde_w;
  Vector played;
  Vector gradient;        // filled on observe
  Vector tilde_gradient;  // filled on observe
};

/// Optimistic reduction for a convex domain. Builds the unconstrained point
/// w~ = x - y h~ from the solved surrogate hint, plays its projection, and
/// trains the base learner on the surrogate gradient g~ and the bettor on
/// loss -<g~, h~>.
class ConstrainedOptimisticLearner final : public HintedLearner {
 public:
  ConstrainedOptimisticLearner(LearnerPtr base, ConvexDomain domain,
                               double bettor_epsilon = kDefaultEpsilon,
                               double stake_cap = kDefaultStakeCap)
      : HintedLearner(base->dim(), 1),
        base_(std::move(base)),
        bettor_(bettor_epsilon, stake_cap),
        domain_(std::move(domain)) {
    if (domain_.dim() != dim()) {
      throw DimensionError("constrained learner: domain dimension " + std::to_string(domain_.dim()) +
                           " differs from base dimension " + std::to_string(dim()));
    }
  }

  Learner& base() { return *base_; }
  const CoinBettor& bettor() const { return bettor_; }
  const ConvexDomain& domain() const { return domain_; }
  const ConstrainedTrace& last_trace() const { return trace_; }
  std::vector<double> bettor_losses() const override { return {bettor_.cumulative_loss()}; }

 protected:
  Vector compute_prediction(std::span<const Vector> hints) override {
    trace_ = ConstrainedTrace{};
    trace_.x = base_->predict();
    trace_.y = bettor_.predict();
    trace_.hint = hints[0];
    TildeHint th = tilde_hint(domain_, trace_.x, trace_.y, hints[0]);
    trace_.tilde_hint = std::move(th.hint);
    trace_.z = std::move(th.z);
    trace_.tilde_w = optimistic_play(trace_.x, trace_.y, trace_.tilde_hint);
    trace_.played = domain_.project(trace_.tilde_w);
    return trace_.played;
  }

  void update(const Vector& g, std::span<const Vector>) override {
    trace_.gradient = g;
    trace_.tilde_gradient = surrogate_gradient(g, trace_.z);
    base_->observe(trace_.tilde_gradient);
    bettor_.observe(unit_outcome(trace_.tilde_gradient, trace_.tilde_hint));
  }

 private:
  LearnerPtr base_;
  CoinBettor bettor_;
  ConvexDomain domain_;
  ConstrainedTrace trace_;
};

}  // namespace regretforge
