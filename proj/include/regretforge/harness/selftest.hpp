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
#include <functional>
#include <memory>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "regretforge/add_combiner.hpp"
#include "regretforge/coin_bettor.hpp"
#include "regretforge/concentration.hpp"
#include "regretforge/constrained.hpp"
#include "regretforge/dimfree.hpp"
#include "regretforge/geometry.hpp"
#include "regretforge/harness/streams.hpp"
#include "regretforge/hints.hpp"
#include "regretforge/ledger.hpp"
#include "regretforge/multi_hint.hpp"
#include "regretforge/optimistic.hpp"
#include "regretforge/parallel.hpp"
#include "regretforge/per_coordinate.hpp"
#include "regretforge/projected_descent.hpp"
#include "regretforge/self_hinted.hpp"

namespace regretforge::harness {

struct SelfTestResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace selftest_detail {

inline std::vector<Vector> rademacher_stream(std::size_t d, std::size_t T, std::uint64_t seed) {
  StreamSpec s;
  s.kind = StreamKind::rademacher_iid;
  s.dim = d;
  s.T = T;
  s.seed = seed;
  return generate_stream(s);
}

inline std::vector<Vector> gaussian_stream(std::size_t d, std::size_t T, std::uint64_t seed) {
  StreamSpec s;
  s.kind = StreamKind::gaussian_clipped;
  s.dim = d;
  s.T = T;
  s.seed = seed;
  s.sigma = 0.6;
  return generate_stream(s);
}

inline Vector random_vector(std::size_t d, Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> n;
  Vector v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = scale * n(rng);
  return v;
}

// Runs a plain learner; returns regret at the origin, i.e. the cumulative loss.
inline double origin_regret(Learner& learner, const std::vector<Vector>& stream) {
  return regret_at(replay(learner, stream), Vector::zeros(learner.dim()));
}

struct Check {
  std::ostringstream note;
  bool ok = true;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) note << what;
    ok = ok && cond;
  }
};

}  // namespace selftest_detail

/// Desk-scale versions of the library's invariant suites.
inline std::vector<SelfTestResult> run_selftest() {
  using namespace selftest_detail;
  std::vector<std::pair<std::string, std::function<void(Check&)>>> suites;

  suites.emplace_back("ledger.regret_identity", [](Check& c) {
    Rng rng(1);
    for (int trial = 0; trial < 20; ++trial) {
      const auto stream = gaussian_stream(5, 200, 100 + trial);
      DimFreeLearner l(5);
      const RegretLedger ledger = replay(l, stream);
      const Vector u = random_vector(5, rng);
      const double direct = regret_at(ledger, u);
      const double split = ledger.cumulative_loss() - dot(ledger.gradient_sum(), u);
      c.expect(std::abs(direct - split) <= 1e-9 * 200, "regret_at disagrees with loss - <G, u>");
    }
  });

  suites.emplace_back("ledger.replay_determinism", [](Check& c) {
    const auto stream = rademacher_stream(8, 500, 7);
    auto a = multi_norm(8);
    auto b = multi_norm(8);
    const RegretLedger la = replay(*a, stream);
    const RegretLedger lb = replay(*b, stream);
    for (std::size_t t = 0; t < la.size(); ++t) {
      c.expect(la.iterate(t) == lb.iterate(t), "replays differ");
    }
  });

  suites.emplace_back("geometry.domain_properties", [](Check& c) {
    Rng rng(2);
    const std::size_t d = 6;
    std::vector<ConvexDomain> domains = {
        ConvexDomain::unit_ball(d), ConvexDomain::ball(Vector(d, 0.3), 0.7),
        ConvexDomain::box(Vector(d, -0.5), Vector(d, 0.25))};
    for (const auto& dom : domains) {
      for (int i = 0; i < 300; ++i) {
        const Vector x = random_vector(d, rng, 2.0);
        const Vector y = random_vector(d, rng, 2.0);
        const Vector p = dom.project(x);
        c.expect(dom.contains(p), "projection left the domain");
        c.expect(std::abs(dom.distance(x) - dom.distance(y)) <= distance2(x, y) + 1e-12,
                 "distance is not 1-Lipschitz");
        const Vector z = dom.distance_subgradient(x);
        c.expect(dom.distance(y) >= dom.distance(x) + dot(z, y - x) - 1e-9,
                 "subgradient inequality failed");
        const Vector q = dom.project(y);
        c.expect(dot(x - p, q - p) <= 1e-9, "projection is not optimal");
      }
    }
  });

  suites.emplace_back("geometry.grid_cover", [](Check& c) {
    Rng rng(3);
    std::uniform_real_distribution<double> pdist(1.0, 2.0);
    for (std::size_t d : {8u, 64u}) {
      const auto grid = pnorm_grid(d);
      for (int i = 0; i < 500; ++i) {
        const double p = pdist(rng);
        const NormSpec spec = NormSpec::from_p(p);
        const NormSpec& g = grid[grid_cover(grid, p)];
        const Vector x = random_vector(d, rng);
        c.expect(lp_norm(x, g.p) <= lp_norm(x, p) + 1e-10, "primal cover failed");
        c.expect(lp_norm(x, g.q) <= std::numbers::e * lp_norm(x, spec.q) + 1e-10, "dual cover failed");
      }
    }
  });

  suites.emplace_back("base_learners.epsilon_at_origin", [](Check& c) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto s16 = rademacher_stream(16, 512, 200 + seed);
      const auto s1 = rademacher_stream(1, 512, 300 + seed);
      std::vector<std::pair<LearnerPtr, const std::vector<Vector>*>> runs;
      runs.emplace_back(std::make_unique<CoinLearner>(1.0), &s1);
      runs.emplace_back(std::make_unique<DimFreeLearner>(16, 1.0), &s16);
      runs.emplace_back(std::make_unique<DimFreeLearner>(16, 1.0, NormSpec::from_p(1.3)), &s16);
      runs.emplace_back(std::make_unique<PerCoordinateLearner>(16, 1.0), &s16);
      runs.emplace_back(multi_norm(16, 1.0), &s16);
      for (auto& [l, s] : runs) {
        c.expect(origin_regret(*l, *s) <= 1.0 + 1e-6, "origin regret exceeds epsilon");
      }
    }
  });

  suites.emplace_back("base_learners.per_coordinate_split", [](Check& c) {
    const std::size_t d = 4;
    const auto stream = gaussian_stream(d, 300, 11);
    PerCoordinateLearner joint(d, 2.0);
    std::vector<CoinBettor> solo(d, CoinBettor(2.0 / d));
    for (const Vector& g : stream) {
      const Vector w = joint.predict();
      for (std::size_t i = 0; i < d; ++i) {
        c.expect(w[i] == solo[i].predict(), "coordinate differs from a 1-D bettor");
        solo[i].observe(-g[i]);
      }
      joint.observe(g);
    }
  });

  suites.emplace_back("base_learners.apd_membership", [](Check& c) {
    const auto stream = gaussian_stream(5, 400, 12);
    AdaptiveProjectedDescent apd(ConvexDomain::box(Vector(5, -1.0), Vector(5, 2.0)));
    for (const Vector& g : stream) {
      c.expect(apd.domain().contains(apd.predict()), "iterate left the domain");
      apd.observe(g);
    }
  });

  suites.emplace_back("combinators.add_additivity", [](Check& c) {
    const auto stream = gaussian_stream(6, 400, 13);
    std::vector<LearnerPtr> kids;
    kids.push_back(std::make_unique<DimFreeLearner>(6, 0.5));
    kids.push_back(std::make_unique<PerCoordinateLearner>(6, 0.5));
    auto [a, la] = recorded(std::move(kids[0]));
    auto [b, lb] = recorded(std::move(kids[1]));
    std::vector<LearnerPtr> rec;
    rec.push_back(std::move(a));
    rec.push_back(std::move(b));
    auto sum = add_iterates(std::move(rec));
    const RegretLedger total = replay(*sum, stream);
    Rng rng(14);
    for (int i = 0; i < 10; ++i) {
      const Vector u1 = random_vector(6, rng), u2 = random_vector(6, rng);
      const double lhs = regret_at(total, u1 + u2);
      const double rhs = regret_at(*la, u1) + regret_at(*lb, u2);
      c.expect(std::abs(lhs - rhs) <= 1e-9 * 400, "combined regret is not additive");
    }
  });

  suites.emplace_back("combinators.optimistic_safety", [](Check& c) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto stream = gaussian_stream(4, 400, 400 + seed);
      auto [base, base_ledger] = recorded(std::make_unique<DimFreeLearner>(4, 0.5));
      auto opt = std::make_unique<OptimisticLearner>(std::move(base), 0.5);
      const OptimisticLearner* raw = opt.get();
      auto l = with_hints(std::move(opt), std::make_unique<AdversarialNegateHints>(4));
      const RegretLedger ledger = replay(*l, stream);
      const Vector u(4, 0.3);
      const double gap = regret_at(ledger, u) - regret_at(*base_ledger, u);
      c.expect(std::abs(gap - raw->bettor().cumulative_loss()) <= 1e-9 * 400,
               "regret does not split into base plus bettor");
      c.expect(raw->bettor().cumulative_loss() <= 0.5 + 1e-6, "bettor exceeded its budget");
    }
  });

  suites.emplace_back("combinators.constrained_invariants", [](Check& c) {
    const auto stream = gaussian_stream(5, 300, 15);
    std::vector<ConvexDomain> domains = {ConvexDomain::unit_ball(5),
                                         ConvexDomain::box(Vector(5, -0.4), Vector(5, 0.6))};
    for (const auto& dom : domains) {
      auto inner = std::make_unique<ConstrainedOptimisticLearner>(
          std::make_unique<DimFreeLearner>(5, 0.25), dom, 0.25);
      const ConstrainedOptimisticLearner* raw = inner.get();
      auto l = with_hints(std::move(inner), std::make_unique<LastGradientHints>(5));
      for (const Vector& g : stream) {
        c.expect(dom.contains(l->predict()), "played iterate left the domain");
        const Vector h = l->last_hints()[0];
        l->observe(g);
        const auto& tr = raw->last_trace();
        c.expect(norm2(tr.tilde_gradient) <= norm2(g) + 1e-9, "surrogate gradient grew");
        c.expect(distance2(tr.tilde_hint, tr.tilde_gradient) <= distance2(h, g) + 1e-9,
                 "surrogate hint error grew");
      }
    }
  });

  suites.emplace_back("combinators.multi_hint_budget", [](Check& c) {
    const auto stream = gaussian_stream(4, 400, 16);
    auto inner = std::make_unique<MultiHintLearner>(std::make_unique<DimFreeLearner>(4, 0.25), 3, 0.25);
    const MultiHintLearner* raw = inner.get();
    std::vector<HintSourcePtr> src;
    src.push_back(std::make_unique<ExternalHints>(4, stream));
    src.push_back(std::make_unique<AdversarialNegateHints>(4));
    src.push_back(std::make_unique<AdversarialNegateHints>(4));
    SelfHintedLearner l(std::move(inner), std::move(src));
    replay(l, stream);
    double total = 0.0;
    for (double b : raw->bettor_losses()) total += b;
    c.expect(total <= 0.75 + 1e-6, "bettor budgets exceeded");
  });

  suites.emplace_back("hints.running_average_gap", [](Check& c) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const std::size_t T = 4096;
      const auto stream = gaussian_stream(3, T, 500 + seed);
      c.expect(ftl_regret_check(stream) <= 8.0 * std::log(static_cast<double>(T)),
               "FTL gap above 8 ln T");
    }
  });

  suites.emplace_back("hints.unit_bounded", [](Check& c) {
    const auto stream = gaussian_stream(3, 300, 17);
    std::vector<HintSourcePtr> sources;
    sources.push_back(std::make_unique<LastGradientHints>(3));
    sources.push_back(std::make_unique<RunningAverageHints>(3));
    sources.push_back(std::make_unique<UnitBallDescentHints>(3));
    sources.push_back(std::make_unique<AdversarialNegateHints>(3));
    sources.push_back(std::make_unique<ConstantHints>(Vector{3.0, 0.0, 4.0}));
    for (const Vector& g : stream) {
      for (auto& s : sources) {
        c.expect(norm2(s->next_hint()) <= 1.0 + kNormTolerance, "hint outside the unit ball");
        s->feed(g);
      }
    }
  });

  suites.emplace_back("concentration.coverage", [](Check& c) {
    for (const SamplerSpec& s : shipped_samplers()) {
      BernsteinConfig cfg;
      cfg.delta = 0.05;
      cfg.T = 256;
      cfg.trials = 200;
      cfg.sampler = s;
      cfg.seed = 18;
      const CoverageResult r = coverage_experiment(cfg);
      c.expect(r.failure_rate <= 0.05 + 0.03, "coverage failure rate too high for " +
                                                  std::string(sampler_name(s.kind)));
    }
  });

  suites.emplace_back("harness.stream_properties", [](Check& c) {
    for (StreamKind k : {StreamKind::rademacher_iid, StreamKind::gaussian_clipped,
                         StreamKind::slowly_varying, StreamKind::sparse, StreamKind::biased}) {
      StreamSpec s;
      s.kind = k;
      s.dim = 5;
      s.T = 300;
      s.seed = 19;
      s.sigma = 1.5;
      s.k_active = 2;
      s.mu = Vector(5, 0.8);
      const auto a = generate_stream(s);
      const auto b = generate_stream(s);
      for (std::size_t t = 0; t < a.size(); ++t) {
        c.expect(norm2(a[t]) <= 1.0, "stream gradient outside the unit ball");
        c.expect(a[t] == b[t], "stream is not deterministic");
      }
    }
  });

  std::vector<SelfTestResult> out;
  for (auto& [name, body] : suites) {
    Check c;
    try {
      body(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    out.push_back({name, c.ok, c.note.str()});
  }
  return out;
}

}  // namespace regretforge::harness
