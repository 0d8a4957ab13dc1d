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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "regretforge/errors.hpp"
#include "regretforge/learner.hpp"
#include "regretforge/vector.hpp"

namespace regretforge {

/// Replay record of (iterate, gradient) pairs.
class RegretLedger {
 public:
  void record(Vector w, Vector g) {
    if (!w_.empty()) {
      require_same_dim(w_.front(), w, "RegretLedger::record");
    }
    require_same_dim(w, g, "RegretLedger::record");
    for (std::size_t i = 0; i < w.dim(); ++i) loss_ += g[i] * w[i];
    w_.push_back(std::move(w));
    g_.push_back(std::move(g));
  }

  std::size_t size() const { return w_.size(); }
  bool empty() const { return w_.empty(); }
  std::size_t dim() const { return w_.empty() ? 0 : w_.front().dim(); }

  const Vector& iterate(std::size_t t) const { return w_.at(t); }
  const Vector& gradient(std::size_t t) const { return g_.at(t); }
  const std::vector<Vector>& iterates() const { return w_; }
  const std::vector<Vector>& gradients() const { return g_; }

  // Sum of <g_t, w_t> over recorded rounds.
  double cumulative_loss() const { return loss_.value(); }

  Vector gradient_sum() const {
    const std::size_t d = dim();
    std::vector<CompensatedSum> acc(d);
    for (const Vector& g : g_) {
      for (std::size_t i = 0; i < d; ++i) acc[i] += g[i];
    }
    Vector out(d);
    for (std::size_t i = 0; i < d; ++i) out[i] = acc[i].value();
    return out;
  }

 private:
  std::vector<Vector> w_;
  std::vector<Vector> g_;
  CompensatedSum loss_;
};

// Sum over rounds of <g_t, w_t - u>, in one compensated pass.
inline double regret_at(const RegretLedger& ledger, const Vector& u) {
  if (ledger.empty()) return 0.0;
  if (u.dim() != ledger.dim()) {
    throw DimensionError("regret_at: comparator has dimension " + std::to_string(u.dim()) +
                         ", ledger has " + std::to_string(ledger.dim()));
  }
  CompensatedSum acc;
  for (std::size_t t = 0; t < ledger.size(); ++t) {
    const Vector& w = ledger.iterate(t);
    const Vector& g = ledger.gradient(t);
    for (std::size_t i = 0; i < u.dim(); ++i) acc += g[i] * (w[i] - u[i]);
  }
  return acc.value();
}

/// Feeds every gradient of the stream to the learner and records what it
/// played. Protocol violations are rethrown naming the offending round.
inline RegretLedger replay(Learner& learner, std::span<const Vector> stream) {
  RegretLedger ledger;
  for (std::size_t t = 0; t < stream.size(); ++t) {
    if (stream[t].dim() != learner.dim()) {
      throw DimensionError("replay: gradient at round " + std::to_string(t) + " has dimension " +
                           std::to_string(stream[t].dim()) + ", learner has " +
                           std::to_string(learner.dim()));
    }
    try {
      Vector w = learner.predict();
      learner.observe(stream[t]);
      ledger.record(std::move(w), stream[t]);
    } catch (const ContractError& e) {
      throw ContractError("replay aborted at round " + std::to_string(t) + ": " + e.what());
    }
  }
  return ledger;
}

/// Decorator that records the wrapped learner's rounds into a shared ledger.
class RecordingLearner final : public Learner {
 public:
  RecordingLearner(LearnerPtr inner, std::shared_ptr<RegretLedger> sink)
      : Learner(inner->dim()), inner_(std::move(inner)), sink_(std::move(sink)) {}

  bool unit_bounded_gradients() const override { return inner_->unit_bounded_gradients(); }
  Learner& inner() { return *inner_; }

 protected:
  Vector compute_prediction() override { return inner_->predict(); }
  void update(const Vector& g) override {
    Vector w = inner_->predict();
    inner_->observe(g);
    sink_->record(std::move(w), g);
  }

 private:
  LearnerPtr inner_;
  std::shared_ptr<RegretLedger> sink_;
};

// Wraps a learner so that everything it plays is recorded into a fresh ledger.
inline std::pair<LearnerPtr, std::shared_ptr<RegretLedger>> recorded(LearnerPtr inner) {
  auto sink = std::make_shared<RegretLedger>();
  LearnerPtr wrapped = std::make_unique<RecordingLearner>(std::move(inner), sink);
  return {std::move(wrapped), std::move(sink)};
}

}  // namespace regretforge
