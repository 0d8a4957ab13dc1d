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
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "regretforge/errors.hpp"
#include "regretforge/vector.hpp"

namespace regretforge {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A p-norm with p in [1, 2], its dual exponent q (1/p + 1/q = 1, q = inf at
/// p = 1) and lambda = p - 1, the strong-convexity modulus of ||.||_p^2.
struct NormSpec {
  double p = 2.0;
  double q = 2.0;
  double lambda = 1.0;

  static NormSpec from_p(double p) {
    if (!(p >= 1.0 && p <= 2.0)) {
      throw ConfigError("p-norm exponent must lie in [1, 2], got " + std::to_string(p));
    }
    const double q = (p == 1.0) ? kInf : p / (p - 1.0);
    return {p, q, p - 1.0};
  }

  // Builds the spec from the dual exponent, the natural parametrization of
  // the grid recurrence below.
  static NormSpec from_inverse_q(double inv_q) {
    if (!(inv_q >= 0.0 && inv_q <= 0.5)) {
      throw ConfigError("1/q must lie in [0, 1/2], got " + std::to_string(inv_q));
    }
    const double inv_p = 1.0 - inv_q;
    const double q = (inv_q == 0.0) ? kInf : 1.0 / inv_q;
    const double p = 1.0 / inv_p;
    return {p, q, p - 1.0};
  }

  static NormSpec euclidean() { return {2.0, 2.0, 1.0}; }
};

// (sum |x_i|^p)^(1/p) for p in [1, inf]; p = inf is the max norm. Entries are
// scaled by max|x_i| first so large exponents cannot overflow.
inline double lp_norm(std::span<const double> x, double p) {
  if (p == 2.0) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
  }
  if (p == 1.0) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
  }
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (m == 0.0 || std::isinf(p)) return m;
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v) / m, p);
  return m * std::pow(s, 1.0 / p);
}

inline double lp_norm(const Vector& x, double p) { return lp_norm(x.entries(), p); }
inline double p_norm(const Vector& x, const NormSpec& spec) { return lp_norm(x, spec.p); }
inline double dual_norm(const Vector& x, const NormSpec& spec) { return lp_norm(x, spec.q); }

/// Discretization of p in [1, 2] for dimension d: q_0 = 2 and
/// 1/q_i = 1/q_{i-1} - 1/ln(d) for i = 1 .. floor(ln(d)/2).
inline std::vector<NormSpec> pnorm_grid(std::size_t d) {
  if (d < 3) {
    throw ConfigError("p-norm grid needs d >= 3, got " + std::to_string(d));
  }
  const double log_d = std::log(static_cast<double>(d));
  const auto last = static_cast<std::size_t>(std::floor(log_d / 2.0));
  std::vector<NormSpec> grid;
  grid.reserve(last + 1);
  grid.push_back(NormSpec::euclidean());
  double inv_q = 0.5;
  for (std::size_t i = 1; i <= last; ++i) {
    inv_q -= 1.0 / log_d;
    grid.push_back(NormSpec::from_inverse_q(std::max(inv_q, 0.0)));
  }
  return grid;
}

// Largest grid index whose dual exponent does not exceed that of p.
inline std::size_t grid_cover(std::span<const NormSpec> grid, double p) {
  const NormSpec target = NormSpec::from_p(p);
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i].q <= target.q) best = i;
  }
  return best;
}

inline std::size_t grid_cover(std::size_t d, double p) {
  const auto grid = pnorm_grid(d);
  return grid_cover(grid, p);
}

/// Convex set with closed-form Euclidean projection: the whole space, a
/// Euclidean ball or an axis-aligned box.
class ConvexDomain {
 public:
  struct WholeSpace {};
  struct Ball {
    Vector center;
    double radius;
  };
  struct Box {
    Vector lo;
    Vector hi;
  };

  static ConvexDomain whole_space(std::size_t dim) { return ConvexDomain(dim, WholeSpace{}); }

  static ConvexDomain ball(Vector center, double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
      throw ConfigError("ball radius must be positive and finite");
    }
    if (center.empty() || !center.all_finite()) throw ConfigError("ball center must be finite");
    const std::size_t d = center.dim();
    return ConvexDomain(d, Ball{std::move(center), radius});
  }

  static ConvexDomain unit_ball(std::size_t dim) { return ball(Vector::zeros(dim), 1.0); }

  static ConvexDomain box(Vector lo, Vector hi) {
    require_same_dim(lo, hi, "ConvexDomain::box");
    if (lo.empty()) throw ConfigError("box must have positive dimension");
    for (std::size_t i = 0; i < lo.dim(); ++i) {
      if (!(lo[i] <= hi[i]) || !std::isfinite(lo[i]) || !std::isfinite(hi[i])) {
        throw ConfigError("box bounds must be finite with lo <= hi");
      }
    }
    const std::size_t d = lo.dim();
    return ConvexDomain(d, Box{std::move(lo), std::move(hi)});
  }

  std::size_t dim() const { return dim_; }
  bool bounded() const { return !std::holds_alternative<WholeSpace>(kind_); }
  bool is_whole_space() const { return std::holds_alternative<WholeSpace>(kind_); }
  const auto& kind() const { return kind_; }

  double diameter() const {
    if (const auto* b = std::get_if<Ball>(&kind_)) return 2.0 * b->radius;
    if (const auto* b = std::get_if<Box>(&kind_)) return distance2(b->lo, b->hi);
    return kInf;
  }

  // Center of a ball, midpoint of a box, origin of the whole space.
  Vector center() const {
    if (const auto* b = std::get_if<Ball>(&kind_)) return b->center;
    if (const auto* b = std::get_if<Box>(&kind_)) return (b->lo + b->hi) * 0.5;
    return Vector::zeros(dim_);
  }

  bool contains(const Vector& x) const {
    require_same_dim_(x);
    if (const auto* b = std::get_if<Ball>(&kind_)) return distance2(x, b->center) <= b->radius;
    if (const auto* b = std::get_if<Box>(&kind_)) {
      for (std::size_t i = 0; i < dim_; ++i) {
        if (x[i] < b->lo[i] || x[i] > b->hi[i]) return false;
      }
      return true;
    }
    return true;
  }

  // Euclidean projection. The result always passes contains().
  Vector project(const Vector& x) const {
    require_same_dim_(x);
    if (const auto* b = std::get_if<Ball>(&kind_)) {
      if (contains(x)) return x;
      const Vector offset = x - b->center;
      double scale = b->radius / norm2(offset);
      Vector out = b->center + offset * scale;
      while (!contains(out)) {
        scale = std::nextafter(scale, 0.0);
        out = b->center + offset * scale;
      }
      return out;
    }
    if (const auto* b = std::get_if<Box>(&kind_)) {
      Vector out = x;
      for (std::size_t i = 0; i < dim_; ++i) out[i] = std::clamp(x[i], b->lo[i], b->hi[i]);
      return out;
    }
    return x;
  }

  // S(x) = ||x - project(x)||.
  double distance(const Vector& x) const {
    if (is_whole_space()) {
      require_same_dim_(x);
      return 0.0;
    }
    return distance2(x, project(x));
  }

  // (x - project(x)) / S(x) outside the domain; the zero vector (a valid
  // subgradient) inside it and on its boundary.
  Vector distance_subgradient(const Vector& x) const {
    if (is_whole_space()) {
      require_same_dim_(x);
      return Vector::zeros(dim_);
    }
    Vector diff = x - project(x);
    const double s = norm2(diff);
    if (s == 0.0) return Vector::zeros(dim_);
    return diff / s;
  }

 private:
  using Kind = std::variant<WholeSpace, Ball, Box>;
  ConvexDomain(std::size_t dim, Kind kind) : dim_(dim), kind_(std::move(kind)) {}

  void require_same_dim_(const Vector& x) const {
    if (x.dim() != dim_) {
      throw DimensionError("domain has dimension " + std::to_string(dim_) + ", point has " +
                           std::to_string(x.dim()));
    }
  }

  std::size_t dim_;
  Kind kind_;
};

}  // namespace regretforge
