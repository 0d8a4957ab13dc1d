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
#include <string>
#include <utility>
#include <vector>

#include "regretforge/errors.hpp"
#include "regretforge/hints.hpp"
#include "regretforge/learner.hpp"
#include "regretforge/optimistic.hpp"

namespace regretforge {

/// Closes a hinted learner over its hint sources so it composes like any
/// other learner: each round the sources are queried, the hinted learner
/// plays, and the observed gradient is fed back to both.
class SelfHintedLearner final : public Learner {
 public:
  SelfHintedLearner(HintedLearnerPtr inner, std::vector<HintSourcePtr> sources)
      : Learner(inner->dim()), inner_(std::move(inner)), sources_(std::move(sources)) {
    if (sources_.size() != inner_->num_hints()) {
      throw ConfigError("hinted learner expects " + std::to_string(inner_->num_hints()) +
                        " hint sources, got " + std::to_string(sources_.size()));
    }
    for (const auto& s : sources_) {
      if (!s || s->dim() != dim()) throw DimensionError("hint source dimension mismatch");
    }
    stats_.sum_gh_sq.resize(sources_.size());
    stats_.sum_gh_sq_minus_h_sq.resize(sources_.size());
  }

  HintedLearner& inner() { return *inner_; }
  const HintedLearner& inner() const { return *inner_; }
  const HintStats& stats() const { return stats_; }
  const std::vector<Vector>& last_hints() const { return hints_; }

 protected:
  Vector compute_prediction() override {
    hints_.clear();
    for (auto& s : sources_) hints_.push_back(s->next_hint());
    return inner_->predict(hints_);
  }

  void update(const Vector& g) override {
    inner_->observe(g);
    for (std::size_t i = 0; i < sources_.size(); ++i) {
      const double e = distance2(g, hints_[i]);
      stats_.sum_gh_sq[i] += e * e;
      stats_.sum_gh_sq_minus_h_sq[i] += e * e - norm2_sq(hints_[i]);
      sources_[i]->feed(g);
    }
  }

 private:
  HintedLearnerPtr inner_;
  std::vector<HintSourcePtr> sources_;
  std::vector<Vector> hints_;
  HintStats stats_;
};

// Convenience for a single hint source.
inline std::unique_ptr<SelfHintedLearner> with_hints(HintedLearnerPtr inner, HintSourcePtr source) {
  std::vector<HintSourcePtr> sources;
  sources.push_back(std::move(source));
  return std::make_unique<SelfHintedLearner>(std::move(inner), std::move(sources));
}

}  // namespace regretforge
