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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "regretforge/errors.hpp"
#include "regretforge/parallel.hpp"
#include "regretforge/vector.hpp"

namespace regretforge::harness {

enum class StreamKind { zero, rademacher_iid, gaussian_clipped, slowly_varying, sparse, biased };

inline std::string_view stream_kind_name(StreamKind k) {
  switch (k) {
    case StreamKind::zero: return "zero";
    case StreamKind::rademacher_iid: return "rademacher_iid";
    case StreamKind::gaussian_clipped: return "gaussian_clipped";
    case StreamKind::slowly_varying: return "slowly_varying";
    case StreamKind::sparse: return "sparse";
    case StreamKind::biased: return "biased";
  }
  return "unknown";
}

inline StreamKind parse_stream_kind(std::string_view name) {
  for (StreamKind k : {StreamKind::zero, StreamKind::rademacher_iid, StreamKind::gaussian_clipped,
                       StreamKind::slowly_varying, StreamKind::sparse, StreamKind::biased}) {
    if (stream_kind_name(k) == name) return k;
  }
  throw ConfigError("unknown stream kind '" + std::string(name) + "'");
}

/// Gradient stream description. Every emitted gradient is clipped to the
/// unit Euclidean ball; the stream is a pure function of the spec.
struct StreamSpec {
  StreamKind kind = StreamKind::rademacher_iid;
  std::size_t dim = 1;
  std::size_t T = 1024;
  std::uint64_t seed = 0;
  double sigma = 0.5;       // gaussian_clipped: per-coordinate std
  double step_size = 0.01;  // slowly_varying: drift scale per round
  bool step_inv_sqrt_T = false;  // slowly_varying: use 1/sqrt(T) instead
  std::size_t k_active = 1; // sparse: nonzero coordinates per round
  Vector mu;                // biased: mean (clipped to the unit ball)
  double noise = 0.1;       // biased: noise scale

  void validate() const {
    if (dim == 0) throw ConfigError("stream dim must be positive");
    if (kind == StreamKind::sparse && (k_active == 0 || k_active > dim)) {
      throw ConfigError("sparse stream needs 1 <= k_active <= dim");
    }
    if (kind == StreamKind::biased && mu.dim() != dim) {
      throw ConfigError("biased stream mean has dimension " + std::to_string(mu.dim()) +
                        ", expected " + std::to_string(dim));
    }
    if (!(sigma >= 0.0) || !(step_size >= 0.0) || !(noise >= 0.0)) {
      throw ConfigError("stream scale parameters must be nonnegative");
    }
  }
};

/// Generates the stream one gradient at a time.
///
///   rademacher_iid    independent +-1/sqrt(d) entries
///   gaussian_clipped  N(0, sigma^2) entries
///   slowly_varying    g_t = g_{t-1} + step * N(0, 1/d) entries, from a
///                     Rademacher start
///   sparse            k_active random coordinates set to +-1/sqrt(k)
///   biased            mu + noise * N(0, 1/d) entries
class StreamGenerator {
 public:
  explicit StreamGenerator(StreamSpec spec) : spec_(std::move(spec)), rng_(spec_.seed) {
    spec_.validate();
    if (spec_.kind == StreamKind::biased) spec_.mu = clip_to_ball(spec_.mu);
    if (spec_.step_inv_sqrt_T) spec_.step_size = 1.0 / std::sqrt(static_cast<double>(spec_.T));
    if (spec_.kind == StreamKind::slowly_varying) state_ = rademacher();
    order_.resize(spec_.dim);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
  }

  const StreamSpec& spec() const { return spec_; }

  Vector next() {
    const std::size_t d = spec_.dim;
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
    Vector g(d);
    switch (spec_.kind) {
      case StreamKind::zero:
        break;
      case StreamKind::rademacher_iid:
        g = rademacher();
        break;
      case StreamKind::gaussian_clipped:
        for (std::size_t i = 0; i < d; ++i) g[i] = spec_.sigma * normal_(rng_);
        break;
      case StreamKind::slowly_varying:
        if (emitted_ > 0) {
          for (std::size_t i = 0; i < d; ++i) state_[i] += spec_.step_size * inv_sqrt_d * normal_(rng_);
          state_ = clip_to_ball(std::move(state_));
        }
        g = state_;
        break;
      case StreamKind::sparse: {
        const std::size_t k = spec_.k_active;
        const double v = 1.0 / std::sqrt(static_cast<double>(k));
        // Partial Fisher-Yates picks k distinct coordinates.
        for (std::size_t i = 0; i < k; ++i) {
          std::uniform_int_distribution<std::size_t> pick(i, d - 1);
          std::swap(order_[i], order_[pick(rng_)]);
          g[order_[i]] = coin_(rng_) ? v : -v;
        }
        break;
      }
      case StreamKind::biased:
        g = spec_.mu;
        for (std::size_t i = 0; i < d; ++i) g[i] += spec_.noise * inv_sqrt_d * normal_(rng_);
        break;
    }
    ++emitted_;
    return clip_to_ball(std::move(g));
  }

 private:
  Vector rademacher() {
    const double s = 1.0 / std::sqrt(static_cast<double>(spec_.dim));
    Vector g(spec_.dim);
    for (std::size_t i = 0; i < spec_.dim; ++i) g[i] = coin_(rng_) ? s : -s;
    return g;
  }

  StreamSpec spec_;
  Rng rng_;
  std::normal_distribution<double> normal_;
  std::bernoulli_distribution coin_{0.5};
  Vector state_;
  std::vector<std::size_t> order_;
  std::size_t emitted_ = 0;
};

inline std::vector<Vector> generate_stream(const StreamSpec& spec) {
  StreamGenerator gen(spec);
  std::vector<Vector> out;
  out.reserve(spec.T);
  for (std::size_t t = 0; t < spec.T; ++t) out.push_back(gen.next());
  return out;
}

}  // namespace regretforge::harness
