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
#include <cstddef>
#include <fstream>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "regretforge/errors.hpp"
#include "regretforge/learner.hpp"
#include "regretforge/vector.hpp"

namespace regretforge {

/// Stateful producer of one hint per round. next_hint() is the hint for the
/// current round and does not change until feed() reports the round's
/// gradient. Emitted hints are clipped to the unit ball.
class HintSource {
 public:
  explicit HintSource(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw ConfigError("hint source dimension must be positive");
  }
  virtual ~HintSource() = default;

  HintSource(const HintSource&) = delete;
  HintSource& operator=(const HintSource&) = delete;

  std::size_t dim() const { return dim_; }
  std::size_t round_index() const { return round_; }

  Vector next_hint() {
    Vector h = raw_hint();
    if (h.dim() != dim_) {
      throw DimensionError("hint source '" + std::string(kind()) + "' produced dimension " +
                           std::to_string(h.dim()) + ", expected " + std::to_string(dim_));
    }
    return clip_to_ball(std::move(h));
  }

  void feed(const Vector& g) {
    if (g.dim() != dim_) {
      throw DimensionError("hint source fed dimension " + std::to_string(g.dim()) + ", expected " +
                           std::to_string(dim_));
    }
    absorb(g);
    ++round_;
  }

  virtual std::string_view kind() const = 0;

 protected:
  virtual Vector raw_hint() = 0;
  virtual void absorb(const Vector& g) = 0;

 private:
  std::size_t dim_;
  std::size_t round_ = 0;
};

using HintSourcePtr = std::unique_ptr<HintSource>;

class ZeroHints final : public HintSource {
 public:
  using HintSource::HintSource;
  std::string_view kind() const override { return "zero"; }

 protected:
  Vector raw_hint() override { return Vector::zeros(dim()); }
  void absorb(const Vector&) override {}
};

// h_t = g_{t-1}; h_1 = 0.
class LastGradientHints final : public HintSource {
 public:
  explicit LastGradientHints(std::size_t dim) : HintSource(dim), last_(dim) {}
  std::string_view kind() const override { return "last_gradient"; }

 protected:
  Vector raw_hint() override { return last_; }
  void absorb(const Vector& g) override { last_ = g; }

 private:
  Vector last_;
};

// h_t = -g_{t-1}; a deliberately harmful hint.
class AdversarialNegateHints final : public HintSource {
 public:
  explicit AdversarialNegateHints(std::size_t dim) : HintSource(dim), last_(dim) {}
  std::string_view kind() const override { return "adversarial_negate"; }

 protected:
  Vector raw_hint() override { return -last_; }
  void absorb(const Vector& g) override { last_ = g; }

 private:
  Vector last_;
};

// Follow-the-leader on ||g - h||^2: the mean of all gradients seen so far,
// 0 before the first. Updated incrementally, so a constant stream yields its
// value exactly.
class RunningAverageHints final : public HintSource {
 public:
  explicit RunningAverageHints(std::size_t dim) : HintSource(dim), mean_(dim) {}
  std::string_view kind() const override { return "running_average"; }

 protected:
  Vector raw_hint() override { return mean_; }
  void absorb(const Vector& g) override {
    const double n = static_cast<double>(round_index() + 1);
    for (std::size_t i = 0; i < dim(); ++i) mean_[i] += (g[i] - mean_[i]) / n;
  }

 private:
  Vector mean_;
};

// Projected adaptive descent on the unit ball for the linear hint loss
// l_t(h) = <g_t, g_t - 2h>, whose gradient in h is -2 g_t. Step size
// 1 / sqrt(sum ||2 g_s||^2). The loss falls as h aligns with g, so under a
// constant stream the hint approaches +g/||g||.
class UnitBallDescentHints final : public HintSource {
 public:
  explicit UnitBallDescentHints(std::size_t dim) : HintSource(dim), h_(dim) {}
  std::string_view kind() const override { return "unit_ball_descent"; }

 protected:
  Vector raw_hint() override { return h_; }
  void absorb(const Vector& g) override {
    grad_sq_ += 4.0 * norm2_sq(g);
    if (grad_sq_ == 0.0) return;
    const double eta = 1.0 / std::sqrt(grad_sq_);
    axpy(2.0 * eta, g, h_);
    h_ = clip_to_ball(std::move(h_));
  }

 private:
  Vector h_;
  double grad_sq_ = 0.0;
};

class ConstantHints final : public HintSource {
 public:
  explicit ConstantHints(Vector value) : HintSource(value.dim()), value_(clip_to_ball(std::move(value))) {
    if (!value_.all_finite()) throw ConfigError("constant hint must be finite");
  }
  std::string_view kind() const override { return "constant"; }

 protected:
  Vector raw_hint() override { return value_; }
  void absorb(const Vector&) override {}

 private:
  Vector value_;
};

// Replays a fixed sequence, one row per round. Also serves as the "perfect"
// source when the sequence is the gradient stream itself.
class ExternalHints final : public HintSource {
 public:
  ExternalHints(std::size_t dim, std::vector<Vector> rows, std::string label = "external")
      : HintSource(dim), rows_(std::move(rows)), label_(std::move(label)) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (rows_[i].dim() != dim) {
        throw DimensionError("external hint row " + std::to_string(i) + " has dimension " +
                             std::to_string(rows_[i].dim()) + ", expected " + std::to_string(dim));
      }
      if (!rows_[i].all_finite()) {
        throw ConfigError("external hint row " + std::to_string(i) + " is not finite");
      }
    }
  }
  std::string_view kind() const override { return label_; }

 protected:
  Vector raw_hint() override {
    if (round_index() >= rows_.size()) {
      throw ContractError("external hint sequence exhausted at round " +
                          std::to_string(round_index()));
    }
    return rows_[round_index()];
  }
  void absorb(const Vector&) override {}

 private:
  std::vector<Vector> rows_;
  std::string label_;
};

// One whitespace-separated row of reals per line; blank lines are skipped.
inline std::vector<Vector> read_hint_rows(std::istream& in) {
  std::vector<Vector> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::vector<double> vals;
    std::string tok;
    while (ss >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) {
        throw ConfigError("hint file line " + std::to_string(line_no) + ": bad number '" + tok + "'");
      }
      vals.push_back(v);
    }
    if (!vals.empty()) rows.emplace_back(std::move(vals));
  }
  return rows;
}

inline std::vector<Vector> read_hint_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open hint file '" + path + "'");
  return read_hint_rows(in);
}

// Sum ||g_t - h_t||^2 - sum ||g_t - gbar||^2 for the running-average source
// over a prefix of the stream, gbar being the prefix mean.
inline double ftl_regret_check(std::span<const Vector> stream) {
  if (stream.empty()) return 0.0;
  const std::size_t d = stream.front().dim();
  RunningAverageHints source(d);
  CompensatedSum played;
  for (const Vector& g : stream) {
    const Vector h = source.next_hint();
    const double e = distance2(g, h);
    played += e * e;
    source.feed(g);
  }
  const Vector gbar = source.next_hint();
  CompensatedSum best;
  for (const Vector& g : stream) {
    const double e = distance2(g, gbar);
    best += e * e;
  }
  return played.value() - best.value();
}

/// Hint statistics accumulated by a self-hinted learner: per hint sequence,
/// sum ||g - h||^2 and sum (||g - h||^2 - ||h||^2).
struct HintStats {
  std::vector<CompensatedSum> sum_gh_sq;
  std::vector<CompensatedSum> sum_gh_sq_minus_h_sq;
};

}  // namespace regretforge
