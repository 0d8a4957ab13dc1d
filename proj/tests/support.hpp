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
#include <random>
#include <vector>

#include "regretforge/vector.hpp"

namespace rf_test {

using regretforge::Vector;

// Plain-double reference arithmetic, written without the library helpers.
inline double ref_dot(const Vector& a, const Vector& b) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < a.dim(); ++i) s += static_cast<long double>(a[i]) * b[i];
  return static_cast<double>(s);
}

inline double ref_norm(const Vector& a) { return std::sqrt(ref_dot(a, a)); }

inline Vector gaussian(std::size_t d, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> n;
  Vector v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = scale * n(rng);
  return v;
}

// Uniform direction times a uniform radius in [0, 1]: unit-bounded.
inline Vector in_unit_ball(std::size_t d, std::mt19937_64& rng) {
  Vector v = gaussian(d, rng);
  const double n = ref_norm(v);
  std::uniform_real_distribution<double> r(0.0, 1.0);
  const double s = n > 0.0 ? r(rng) / n : 0.0;
  for (std::size_t i = 0; i < d; ++i) v[i] *= s;
  // Guard against rounding just above 1.
  while (ref_norm(v) > 1.0) {
    for (std::size_t i = 0; i < d; ++i) v[i] *= 0.999999;
  }
  return v;
}

inline std::vector<Vector> unit_stream(std::size_t d, std::size_t T, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vector> out;
  out.reserve(T);
  for (std::size_t t = 0; t < T; ++t) out.push_back(in_unit_ball(d, rng));
  return out;
}

inline std::vector<Vector> rademacher(std::size_t d, std::size_t T, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<Vector> out;
  out.reserve(T);
  for (std::size_t t = 0; t < T; ++t) {
    Vector g(d);
    for (std::size_t i = 0; i < d; ++i) g[i] = coin(rng) ? s : -s;
    out.push_back(g);
  }
  return out;
}

// Regret by explicit double summation: sum_t sum_i g_ti (w_ti - u_i).
inline double ref_regret(const std::vector<Vector>& w, const std::vector<Vector>& g, const Vector& u) {
  long double s = 0.0L;
  for (std::size_t t = 0; t < w.size(); ++t) {
    for (std::size_t i = 0; i < u.dim(); ++i) s += static_cast<long double>(g[t][i]) * (w[t][i] - u[i]);
  }
  return static_cast<double>(s);
}

}  // namespace rf_test
