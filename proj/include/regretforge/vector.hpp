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
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "regretforge/errors.hpp"

namespace regretforge {

/// Neumaier-compensated accumulator. Regret identities are checked to
/// 1e-9 * T, which naive summation does not reliably reach for long runs.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double init) : sum_(init) {}

  CompensatedSum& operator+=(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }
  CompensatedSum& operator-=(double x) { return *this += -x; }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Dense real vector. Iterates, gradients, hints and comparators all share
/// this type.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim, double fill = 0.0) : data_(dim, fill) {}
  Vector(std::initializer_list<double> entries) : data_(entries) {}
  explicit Vector(std::vector<double> entries) : data_(std::move(entries)) {}

  static Vector zeros(std::size_t dim) { return Vector(dim); }
  static Vector unit(std::size_t dim, std::size_t axis) {
    Vector e(dim);
    e[axis] = 1.0;
    return e;
  }

  std::size_t dim() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double operator[](std::size_t i) const { return data_[i]; }
  double& operator[](std::size_t i) { return data_[i]; }

  std::span<const double> entries() const { return data_; }
  std::span<double> entries() { return data_; }
  const std::vector<double>& raw() const { return data_; }

  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }
  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }

  bool all_finite() const {
    for (double v : data_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  bool is_zero() const {
    for (double v : data_) {
      if (v != 0.0) return false;
    }
    return true;
  }

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }
  Vector& operator/=(double s) {
    for (double& v : data_) v /= s;
    return *this;
  }

  bool operator==(const Vector&) const = default;

 private:
  std::vector<double> data_;
};

inline void require_same_dim(const Vector& a, const Vector& b, const char* context) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(context) + ": dimension mismatch (" + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()) + ")");
  }
}

inline Vector& Vector::operator+=(const Vector& other) {
  require_same_dim(*this, other, "Vector::operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

inline Vector& Vector::operator-=(const Vector& other) {
  require_same_dim(*this, other, "Vector::operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

inline Vector operator+(Vector a, const Vector& b) { return a += b; }
inline Vector operator-(Vector a, const Vector& b) { return a -= b; }
inline Vector operator*(Vector a, double s) { return a *= s; }
inline Vector operator*(double s, Vector a) { return a *= s; }
inline Vector operator/(Vector a, double s) { return a /= s; }
inline Vector operator-(Vector a) { return a *= -1.0; }

// y += a * x
inline void axpy(double a, const Vector& x, Vector& y) {
  require_same_dim(x, y, "axpy");
  for (std::size_t i = 0; i < x.dim(); ++i) y[i] += a * x[i];
}

inline double dot(const Vector& a, const Vector& b) {
  require_same_dim(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline double dot_compensated(const Vector& a, const Vector& b) {
  require_same_dim(a, b, "dot_compensated");
  CompensatedSum s;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s.value();
}

inline double norm2_sq(const Vector& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

inline double norm2(const Vector& x) { return std::sqrt(norm2_sq(x)); }

inline double distance2(const Vector& a, const Vector& b) {
  require_same_dim(a, b, "distance2");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

// Radially rescales x onto the Euclidean ball of the given radius when it
// lies outside; the result's computed norm never exceeds the radius.
inline Vector clip_to_ball(Vector x, double radius = 1.0) {
  double n = norm2(x);
  if (n <= radius) return x;
  double scale = radius / n;
  Vector out = x * scale;
  while (norm2(out) > radius) {
    scale = std::nextafter(scale, 0.0);
    out = x * scale;
  }
  return out;
}

}  // namespace regretforge
