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
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "regretforge/geometry.hpp"
#include "support.hpp"

namespace rf = regretforge;
using rf::ConvexDomain;
using rf::Vector;

namespace {

// Direct evaluation without rescaling: (sum |x_i|^p)^(1/p).
double ref_lp(const Vector& x, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
  }
  long double s = 0.0L;
  for (double v : x) s += std::pow(static_cast<long double>(std::abs(v)), p);
  return static_cast<double>(std::pow(s, 1.0L / p));
}

std::vector<ConvexDomain> sample_domains(std::size_t d) {
  Vector lo(d), hi(d);
  for (std::size_t i = 0; i < d; ++i) {
    lo[i] = -0.5 - 0.1 * static_cast<double>(i);
    hi[i] = 0.25 + 0.05 * static_cast<double>(i);
  }
  return {ConvexDomain::unit_ball(d), ConvexDomain::ball(Vector(d, 0.4), 0.6),
          ConvexDomain::box(lo, hi), ConvexDomain::whole_space(d)};
}

}  // namespace

TEST(Norms, Examples) {
  EXPECT_DOUBLE_EQ(rf::p_norm(Vector{3, 4}, rf::NormSpec::from_p(2.0)), 5.0);
  EXPECT_DOUBLE_EQ(rf::p_norm(Vector{1, 1, 1, 1}, rf::NormSpec::from_p(1.0)), 4.0);
  const double oracle = ref_lp(Vector{1, 1}, 1.5);
  EXPECT_NEAR(oracle, 1.5874, 1e-4);
  EXPECT_NEAR(rf::p_norm(Vector{1, 1}, rf::NormSpec::from_p(1.5)), oracle, 1e-14);
}

TEST(Norms, AgreeWithDirectEvaluation) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> pd(1.0, 2.0);
  for (int i = 0; i < 2000; ++i) {
    const Vector x = rf_test::gaussian(9, rng);
    const double p = pd(rng);
    EXPECT_NEAR(rf::lp_norm(x, p), ref_lp(x, p), 1e-12 * ref_lp(x, p));
  }
  EXPECT_EQ(rf::lp_norm(Vector{-3, 2, 1}, rf::kInf), 3.0);
  // Large exponents do not overflow.
  EXPECT_NEAR(rf::lp_norm(Vector{1e300, 1e300}, 40.0), 1e300 * std::pow(2.0, 1.0 / 40.0), 1e286);
}

TEST(NormSpec, DualityAndModulus) {
  for (double p : {1.0, 1.1, 1.3, 1.5, 1.77, 2.0}) {
    const auto s = rf::NormSpec::from_p(p);
    if (p == 1.0) {
      EXPECT_TRUE(std::isinf(s.q));
    } else {
      EXPECT_NEAR(1.0 / s.p + 1.0 / s.q, 1.0, 1e-12);
    }
    EXPECT_DOUBLE_EQ(s.lambda, p - 1.0);
  }
  EXPECT_THROW(rf::NormSpec::from_p(0.5), rf::ConfigError);
  EXPECT_THROW(rf::NormSpec::from_p(2.5), rf::ConfigError);
}

TEST(PnormGrid, Dimension16) {
  const auto grid = rf::pnorm_grid(16);
  ASSERT_EQ(grid.size(), 2u);
  EXPECT_EQ(grid[0].p, 2.0);
  EXPECT_EQ(grid[0].q, 2.0);
  // Recurrence oracle: 1/q1 = 1/2 - 1/ln 16.
  const double inv_q1 = 0.5 - 1.0 / std::log(16.0);
  const double q1 = 1.0 / inv_q1;
  const double p1 = 1.0 / (1.0 - inv_q1);
  EXPECT_NEAR(grid[1].q, q1, 1e-12);
  EXPECT_NEAR(grid[1].p, p1, 1e-12);
  EXPECT_NEAR(grid[1].q, 7.1774, 1e-4);
  EXPECT_NEAR(grid[1].p, 1.16188, 1e-5);
}

TEST(PnormGrid, SizesAndDegenerateDimensions) {
  const auto g3 = rf::pnorm_grid(3);
  ASSERT_GE(g3.size(), 1u);
  EXPECT_EQ(g3[0].p, 2.0);
  EXPECT_EQ(rf::pnorm_grid(1024).size(),
            static_cast<std::size_t>(std::floor(std::log(1024.0) / 2.0)) + 1);
  EXPECT_EQ(rf::pnorm_grid(1024).size(), 4u);
  EXPECT_THROW(rf::pnorm_grid(2), rf::ConfigError);
  EXPECT_THROW(rf::pnorm_grid(0), rf::ConfigError);
  for (std::size_t d : {3u, 8u, 100u, 5000u}) {
    const auto g = rf::pnorm_grid(d);
    for (std::size_t i = 1; i < g.size(); ++i) {
      EXPECT_GT(g[i].q, g[i - 1].q);
      EXPECT_GE(g[i].p, 1.0);
    }
  }
}

TEST(PnormGrid, CoverExamples) {
  EXPECT_EQ(rf::grid_cover(16, 2.0), 0u);
  EXPECT_EQ(rf::grid_cover(1024, 2.0), 0u);
  EXPECT_EQ(rf::grid_cover(16, 1.05), 1u);
}

TEST(PnormGrid, CoverInequalities) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> pd(1.0, 2.0);
  for (std::size_t d : {8u, 64u}) {
    const auto grid = rf::pnorm_grid(d);
    for (int i = 0; i < 10000; ++i) {
      const double p = pd(rng);
      const Vector x = rf_test::gaussian(d, rng);
      const auto& g = grid[rf::grid_cover(grid, p)];
      const double q = rf::NormSpec::from_p(p).q;
      ASSERT_LE(ref_lp(x, g.p), ref_lp(x, p) + 1e-10);
      ASSERT_LE(ref_lp(x, g.q), std::numbers::e * ref_lp(x, q) + 1e-10);
    }
  }
}

TEST(Domain, ProjectionExamples) {
  const auto ball = ConvexDomain::unit_ball(2);
  const Vector p = ball.project(Vector{3, 4});
  EXPECT_NEAR(p[0], 0.6, 1e-15);
  EXPECT_NEAR(p[1], 0.8, 1e-15);
  EXPECT_EQ(ball.project(Vector{0.1, -0.2}), (Vector{0.1, -0.2}));
  const auto box = ConvexDomain::box(Vector{-1, -1}, Vector{1, 1});
  EXPECT_EQ(box.project(Vector{2, -3}), (Vector{1, -1}));
  EXPECT_EQ(ConvexDomain::whole_space(2).project(Vector{5, 6}), (Vector{5, 6}));
}

TEST(Domain, SubgradientExamples) {
  const auto ball = ConvexDomain::unit_ball(2);
  const Vector z = ball.distance_subgradient(Vector{3, 4});
  EXPECT_NEAR(z[0], 0.6, 1e-15);
  EXPECT_NEAR(z[1], 0.8, 1e-15);
  EXPECT_EQ(ball.distance_subgradient(Vector{0.2, 0.1}), Vector(2));
  EXPECT_EQ(ConvexDomain::whole_space(3).distance_subgradient(Vector{9, 9, 9}), Vector(3));
  EXPECT_NEAR(ball.distance(Vector{3, 4}), 4.0, 1e-15);
}

TEST(Domain, ConstructionErrors) {
  EXPECT_THROW(ConvexDomain::ball(Vector{0, 0}, 0.0), rf::ConfigError);
  EXPECT_THROW(ConvexDomain::box(Vector{1, 0}, Vector{0, 1}), rf::ConfigError);
  EXPECT_THROW(ConvexDomain::box(Vector{1}, Vector{0, 1}), rf::DimensionError);
  EXPECT_THROW(ConvexDomain::unit_ball(2).project(Vector{1}), rf::DimensionError);
}

TEST(Domain, ProjectionLandsInsideAndFixesInterior) {
  std::mt19937_64 rng(3);
  for (const auto& dom : sample_domains(5)) {
    for (int i = 0; i < 2000; ++i) {
      const Vector x = rf_test::gaussian(5, rng, 3.0);
      const Vector p = dom.project(x);
      ASSERT_TRUE(dom.contains(p));
      EXPECT_EQ(dom.project(p), p);
      EXPECT_NEAR(dom.distance(x), rf_test::ref_norm(x - p), 1e-10);
    }
  }
}

TEST(Domain, SubgradientInequalityAndLipschitz) {
  std::mt19937_64 rng(4);
  for (const auto& dom : sample_domains(4)) {
    for (int i = 0; i < 10000; ++i) {
      const Vector x = rf_test::gaussian(4, rng, 2.0);
      const Vector v = rf_test::gaussian(4, rng, 2.0);
      const Vector z = dom.distance_subgradient(x);
      ASSERT_GE(dom.distance(v), dom.distance(x) + rf_test::ref_dot(z, v - x) - 1e-9);
      ASSERT_LE(std::abs(dom.distance(x) - dom.distance(v)), rf_test::ref_norm(x - v) + 1e-12);
      if (!dom.contains(x)) {
        ASSERT_NEAR(rf_test::ref_norm(z), 1.0, 1e-12);
      }
    }
  }
}

TEST(Domain, ProjectionOptimality) {
  std::mt19937_64 rng(5);
  for (const auto& dom : sample_domains(3)) {
    for (int i = 0; i < 3000; ++i) {
      const Vector x = rf_test::gaussian(3, rng, 3.0);
      const Vector w = dom.project(rf_test::gaussian(3, rng, 3.0));
      const Vector p = dom.project(x);
      ASSERT_LE(rf_test::ref_dot(x - p, w - p), 1e-9);
    }
  }
}

TEST(Domain, DiameterAndCenter) {
  EXPECT_EQ(ConvexDomain::ball(Vector{1, 1}, 0.5).diameter(), 1.0);
  EXPECT_NEAR(ConvexDomain::box(Vector{0, 0}, Vector{3, 4}).diameter(), 5.0, 1e-15);
  EXPECT_TRUE(std::isinf(ConvexDomain::whole_space(2).diameter()));
  EXPECT_EQ(ConvexDomain::box(Vector{0, -2}, Vector{2, 2}).center(), (Vector{1, 0}));
}
