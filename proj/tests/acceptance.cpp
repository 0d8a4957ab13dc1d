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
// Acceptance run: one PASS/FAIL line per criterion. Criteria may be picked
// by number on the command line; the default runs all ten.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "regretforge.hpp"
#include "regretforge/harness/config.hpp"
#include "regretforge/harness/experiment.hpp"
#include "regretforge/harness/streams.hpp"

namespace rf = regretforge;
namespace rh = regretforge::harness;
using rf::Vector;
using Json = nlohmann::json;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, a);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// A stream of a kind picked from the seed, so repeated draws mix shapes.
std::vector<Vector> mixed_stream(std::size_t d, std::size_t T, std::uint64_t seed) {
  static const rh::StreamKind kinds[] = {rh::StreamKind::rademacher_iid, rh::StreamKind::gaussian_clipped,
                                         rh::StreamKind::slowly_varying, rh::StreamKind::sparse,
                                         rh::StreamKind::biased};
  rf::Rng rng(seed);
  rh::StreamSpec s;
  s.kind = kinds[rng() % 5];
  s.dim = d;
  s.T = T;
  s.seed = rng();
  s.sigma = 0.6;
  s.step_size = 0.05;
  s.k_active = 1 + rng() % d;
  s.mu = Vector(d);
  std::normal_distribution<double> n;
  for (std::size_t i = 0; i < d; ++i) s.mu[i] = 0.5 * n(rng) / std::sqrt(static_cast<double>(d));
  s.noise = 0.5;
  return rh::generate_stream(s);
}

std::vector<Vector> stream_of(rh::StreamKind kind, std::size_t d, std::size_t T, std::uint64_t seed) {
  rh::StreamSpec s;
  s.kind = kind;
  s.dim = d;
  s.T = T;
  s.seed = seed;
  s.step_inv_sqrt_T = kind == rh::StreamKind::slowly_varying;
  return rh::generate_stream(s);
}

Vector random_vector(std::size_t d, double scale, rf::Rng& rng) {
  std::normal_distribution<double> n;
  Vector v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = scale * n(rng);
  return v;
}

double ldot(const Vector& a, const Vector& b) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < a.dim(); ++i) s += static_cast<long double>(a[i]) * b[i];
  return static_cast<double>(s);
}

double lnorm(const Vector& a) { return std::sqrt(ldot(a, a)); }

bool is_pow2(std::size_t t) { return (t & (t - 1)) == 0; }

// Regret against the best point of the unit ball, L + ||G||, at the
// power-of-two checkpoints 2^10 .. T.
struct Curve {
  std::vector<double> T, regret;
};

Curve unit_ball_curve(const std::function<const Vector&()>& predict,
                      const std::function<void(const Vector&)>& observe, const std::vector<Vector>& stream) {
  Curve c;
  const std::size_t d = stream.front().dim();
  rf::CompensatedSum loss;
  std::vector<rf::CompensatedSum> G(d);
  for (std::size_t t = 0; t < stream.size(); ++t) {
    const Vector& g = stream[t];
    const Vector& w = predict();
    for (std::size_t i = 0; i < d; ++i) {
      loss += g[i] * w[i];
      G[i] += g[i];
    }
    observe(g);
    const std::size_t n = t + 1;
    if (n >= 1024 && is_pow2(n)) {
      double gg = 0.0;
      for (const auto& s : G) gg += s.value() * s.value();
      c.T.push_back(static_cast<double>(n));
      c.regret.push_back(loss.value() + std::sqrt(gg));
    }
  }
  return c;
}

Curve run_plain(rf::Learner& l, const std::vector<Vector>& stream) {
  return unit_ball_curve([&]() -> const Vector& { return l.predict(); }, [&](const Vector& g) { l.observe(g); },
                         stream);
}

// ---------------------------------------------------------------------------

Outcome additivity() {
  Outcome out;
  double worst_round = 0.0, worst_total = 0.0, worst_split = 0.0;
  const std::size_t T = 4096;
  for (std::uint64_t s = 0; s < 50; ++s) {
    rf::Rng rng(rf::derive_seed(101, s));
    const std::size_t d = 1 + rng() % 32;
    const std::size_t k = 2 + rng() % 3;
    std::vector<rf::LearnerPtr> children;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t i = 0; i < k; ++i) {
      switch (rng() % 5) {
        case 0: children.push_back(std::make_unique<rf::DimFreeLearner>(d, 1.0 / k)); break;
        case 1:
          children.push_back(std::make_unique<rf::DimFreeLearner>(d, 1.0 / k, rf::NormSpec::from_p(1.05 + 0.95 * unif(rng))));
          break;
        case 2: children.push_back(std::make_unique<rf::PerCoordinateLearner>(d, 1.0 / k)); break;
        case 3:
          children.push_back(std::make_unique<rf::AdaptiveProjectedDescent>(
              rf::ConvexDomain::ball(random_vector(d, 0.3, rng), 0.5 + 2.5 * unif(rng))));
          break;
        default:
          if (d >= 3) children.push_back(rf::multi_norm(d, 1.0 / k));
          else if (d == 1) children.push_back(std::make_unique<rf::CoinLearner>(1.0 / k));
          else children.push_back(std::make_unique<rf::PerCoordinateLearner>(d, 1.0 / k));
      }
    }
    rf::AddCombiner add(std::move(children));
    const auto stream = mixed_stream(d, T, rng());
    rf::CompensatedSum total;
    std::vector<rf::CompensatedSum> part(k);
    std::vector<rf::CompensatedSum> G(d);
    for (const Vector& g : stream) {
      const double lw = ldot(g, add.predict());
      double sum = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        const double li = ldot(g, add.child(i).predict());
        part[i] += li;
        sum += li;
      }
      worst_round = std::max(worst_round, std::abs(lw - sum));
      total += lw;
      for (std::size_t i = 0; i < d; ++i) G[i] += g[i];
      add.observe(g);
    }
    Vector Gv(d);
    for (std::size_t i = 0; i < d; ++i) Gv[i] = G[i].value();
    double parts = 0.0;
    for (const auto& p : part) parts += p.value();
    worst_total = std::max(worst_total, std::abs(total.value() - parts));
    for (int split = 0; split < 20; ++split) {
      Vector u(d);
      double sum_child = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        const Vector ui = random_vector(d, 3.0 * unif(rng), rng);
        u += ui;
        sum_child += part[i].value() - ldot(Gv, ui);
      }
      const double combined = total.value() - ldot(Gv, u);
      worst_split = std::max(worst_split, std::abs(combined - sum_child));
    }
  }
  const double tol = 1e-9 * T;
  out.pass = worst_round <= tol && worst_total <= tol && worst_split <= tol;
  out.detail = "max per-round gap " + fmt("%.2e", worst_round) + ", loss gap " + fmt("%.2e", worst_total) +
               ", split gap " + fmt("%.2e", worst_split) + " (tol " + fmt("%.2e", tol) + ")";
  return out;
}

Outcome epsilon_at_origin() {
  const std::vector<Json> learners = {
      "dimfree",
      Json{{"kind", "dimfree"}, {"p", 1.5}},
      "per_coordinate",
      "multi_norm",
      Json{{"kind", "add"}, {"children", {"dimfree", "per_coordinate", "multi_norm"}}},
      Json{{"kind", "optimistic"}, {"base", "dimfree"}, {"hint", "running_average"}},
      Json{{"kind", "optimistic"}, {"base", "multi_norm"}, {"hint", "last_gradient"}},
      Json{{"kind", "optimistic"}, {"base", "per_coordinate"}, {"hint", "adversarial_negate"}},
      Json{{"kind", "optimistic"}, {"base", "dimfree"}, {"hint", "perfect"}},
      Json{{"kind", "constrained_optimistic"}, {"base", "dimfree"}, {"hint", "unit_ball_descent"},
           {"domain", {{"kind", "ball"}, {"radius", 2.0}}}},
      Json{{"kind", "constrained_optimistic"}, {"base", "per_coordinate"}, {"hint", "last_gradient"},
           {"domain", {{"kind", "box"}, {"lo", -1.0}, {"hi", 0.5}}}},
      Json{{"kind", "multi_hint"}, {"base", "dimfree"}, {"hints", {"zero", "last_gradient", "adversarial_negate"}}},
      Json{{"kind", "add"},
           {"children",
            {Json{{"kind", "optimistic"}, {"base", "multi_norm"}, {"hint", "unit_ball_descent"}},
             Json{{"kind", "multi_hint"}, {"base", "per_coordinate"}, {"hints", {"running_average", "perfect"}}}}}},
  };
  const std::size_t T = 2048;
  double worst = -1e300;
  std::string worst_name;
  std::size_t runs = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    rf::Rng rng(rf::derive_seed(202, s));
    const std::size_t d = 3 + rng() % 14;
    const double eps = s % 2 ? 1.0 : 0.1;
    const auto stream = mixed_stream(d, T, rng());
    const auto line = mixed_stream(1, T, rng());
    auto check = [&](const Json& node, const std::vector<Vector>& st) {
      Json n = node.is_string() ? Json{{"kind", node}} : node;
      n["epsilon"] = eps;
      rh::BuildContext ctx{st.front().dim(), &st, {}};
      auto l = rh::build_learner(n, ctx);
      rf::CompensatedSum loss;
      for (const Vector& g : st) {
        loss += ldot(g, l->predict());
        l->observe(g);
      }
      const double excess = loss.value() - eps;
      if (excess > worst) {
        worst = excess;
        worst_name = n.dump();
      }
      ++runs;
    };
    for (const auto& l : learners) check(l, stream);
    check("coin", line);
    check("dimfree", line);
    check(Json{{"kind", "optimistic"}, {"base", "coin"}, {"hint", "last_gradient"}}, line);
  }
  Outcome out;
  out.pass = worst <= 1e-6;
  out.detail = std::to_string(runs) + " runs, max regret(0) - eps = " + fmt("%.3e", worst) + " (" + worst_name + ")";
  return out;
}

Outcome sqrt_regime() {
  std::vector<double> coin, dimfree;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto line = stream_of(rh::StreamKind::rademacher_iid, 1, 1 << 16, rf::derive_seed(303, s));
    rf::CoinLearner c;
    const auto cc = run_plain(c, line);
    coin.push_back(rh::fit_slope(cc.T, cc.regret));
    const auto st = stream_of(rh::StreamKind::rademacher_iid, 16, 1 << 16, rf::derive_seed(304, s));
    rf::DimFreeLearner l(16);
    const auto dc = run_plain(l, st);
    dimfree.push_back(rh::fit_slope(dc.T, dc.regret));
  }
  const double mc = median(coin), md = median(dimfree);
  Outcome out;
  out.pass = mc >= 0.40 && mc <= 0.62 && md >= 0.40 && md <= 0.62;
  out.detail = "median slope coin " + fmt("%.4f", mc) + ", dimfree(d=16) " + fmt("%.4f", md) + " (band [0.40, 0.62])";
  return out;
}

Outcome optimism_payoff() {
  const std::size_t d = 16, T = 1 << 16;
  std::vector<double> perfect, hinted, plain;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto st = stream_of(rh::StreamKind::rademacher_iid, d, T, rf::derive_seed(401, s));
    auto opt = rf::with_hints(std::make_unique<rf::OptimisticLearner>(std::make_unique<rf::DimFreeLearner>(d, 0.5), 0.5),
                              std::make_unique<rf::ExternalHints>(d, st, "perfect"));
    const auto pc = run_plain(*opt, st);
    perfect.push_back(rh::fit_slope(pc.T, pc.regret));

    const auto sv = stream_of(rh::StreamKind::slowly_varying, d, T, rf::derive_seed(402, s));
    auto lg = rf::with_hints(std::make_unique<rf::OptimisticLearner>(std::make_unique<rf::DimFreeLearner>(d, 0.5), 0.5),
                             std::make_unique<rf::LastGradientHints>(d));
    hinted.push_back(run_plain(*lg, sv).regret.back());
    rf::DimFreeLearner base(d);
    plain.push_back(run_plain(base, sv).regret.back());
  }
  const double mp = median(perfect), mh = median(hinted), mb = median(plain);
  Outcome out;
  out.pass = mp <= 0.15 && mh <= 0.6 * mb;
  out.detail = "perfect-hint median slope " + fmt("%.4f", mp) + " (<= 0.15); slowly varying at T=2^16: hinted median " +
               fmt("%.4g", mh) + ", baseline median " + fmt("%.4g", mb) + " (need <= 0.6x)";
  return out;
}

Outcome safety() {
  const double eps = 1.0;
  double worst = -1e300, worst_decomp = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    rf::Rng rng(rf::derive_seed(505, s));
    const std::size_t d = 3 + rng() % 14;
    auto make_base = [&]() -> rf::LearnerPtr {
      switch (s % 3) {
        case 0: return std::make_unique<rf::DimFreeLearner>(d, eps);
        case 1: return std::make_unique<rf::PerCoordinateLearner>(d, eps);
        default: return rf::multi_norm(d, eps);
      }
    };
    rf::OptimisticLearner opt(make_base(), eps);
    rf::AdversarialNegateHints hints(d);
    auto standalone = make_base();
    const auto st = mixed_stream(d, 4096, rng());

    std::vector<Vector> comps = {Vector(d)};
    for (int i = 0; i < 6; ++i) comps.push_back(random_vector(d, 0.5 * (i + 1), rng));
    std::vector<rf::CompensatedSum> r_opt(comps.size()), r_base(comps.size());
    rf::CompensatedSum bettor_loss;
    for (const Vector& g : st) {
      const Vector h = hints.next_hint();
      const double y = opt.bettor().predict();
      const Vector& w = opt.predict(h);
      const Vector& x = standalone->predict();
      // The two learners differ by exactly -y h each round.
      const double gap = ldot(g, w) - ldot(g, x);
      worst_decomp = std::max(worst_decomp, std::abs(gap + y * ldot(g, h)));
      bettor_loss += -y * ldot(g, h);
      for (std::size_t c = 0; c < comps.size(); ++c) {
        r_opt[c] += ldot(g, w) - ldot(g, comps[c]);
        r_base[c] += ldot(g, x) - ldot(g, comps[c]);
        worst = std::max(worst, r_opt[c].value() - r_base[c].value() - eps);
      }
      opt.observe(g);
      standalone->observe(g);
      hints.feed(g);
    }
    worst_decomp = std::max(worst_decomp, std::abs(bettor_loss.value() - opt.bettor().cumulative_loss()));
  }
  Outcome out;
  out.pass = worst <= 1e-6 && worst_decomp <= 1e-9;
  out.detail = "max over rounds and comparators of R_opt - R_base - eps = " + fmt("%.3e", worst) +
               ", decomposition residual " + fmt("%.2e", worst_decomp);
  return out;
}

Outcome pnorm_grid() {
  Outcome out;
  std::size_t violations = 0, checks = 0;
  for (std::size_t d : {8u, 64u, 1024u}) {
    const auto grid = rf::pnorm_grid(d);
    rf::Rng rng(rf::derive_seed(606, d));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
      const double p = 1.0 + std::max(1e-6, unif(rng));
      const Vector x = random_vector(d, std::exp(4.0 * unif(rng) - 2.0), rng);
      const rf::NormSpec target = rf::NormSpec::from_p(p);
      const auto& cover = grid[rf::grid_cover(grid, p)];
      if (rf::lp_norm(x, cover.p) > rf::lp_norm(x, target.p) + 1e-10) ++violations;
      if (rf::lp_norm(x, cover.q) > std::numbers::e * rf::lp_norm(x, target.q) + 1e-10) ++violations;
      checks += 2;
    }
  }

  // Per-round cost of the multi-norm learner, best of five timed blocks.
  auto per_round = [](std::size_t d, std::size_t rounds) {
    rf::Rng rng(d);
    std::vector<Vector> st;
    for (int i = 0; i < 64; ++i) st.push_back(rf::clip_to_ball(random_vector(d, 1.0, rng)));
    double best = 1e300;
    for (int rep = 0; rep < 5; ++rep) {
      auto l = rf::multi_norm(d);
      const auto start = std::chrono::steady_clock::now();
      for (std::size_t t = 0; t < rounds; ++t) {
        l->predict();
        l->observe(st[t % st.size()]);
      }
      const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      best = std::min(best, s / static_cast<double>(rounds));
    }
    return best;
  };
  const double t64 = per_round(64, 40000), t1024 = per_round(1024, 4000);
  const double work = (1024.0 * rf::pnorm_grid(1024).size()) / (64.0 * rf::pnorm_grid(64).size());
  const double ratio = (t1024 / t64) / work;
  out.pass = violations == 0 && ratio <= 1.5 && ratio >= 1.0 / 1.5;
  out.detail = std::to_string(violations) + " violations in " + std::to_string(checks) + " cover checks; cost " +
               fmt("%.3g", t64 * 1e6) + " us (d=64) vs " + fmt("%.3g", t1024 * 1e6) + " us (d=1024), work ratio " +
               fmt("%.2f", work) + ", measured/linear " + fmt("%.3f", ratio) + " (band [0.667, 1.5])";
  return out;
}

Outcome constrained() {
  std::size_t outside = 0, grad_bad = 0, hint_bad = 0, sub_bad = 0, sub_checks = 0;
  double worst_slack = 1e300;
  for (std::uint64_t s = 0; s < 40; ++s) {
    rf::Rng rng(rf::derive_seed(707, s));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const std::size_t d = 2 + rng() % 9;
    rf::ConvexDomain dom = rf::ConvexDomain::whole_space(d);
    if (s % 2 == 0) {
      dom = rf::ConvexDomain::ball(random_vector(d, 0.5, rng), 0.3 + 1.7 * unif(rng));
    } else {
      Vector lo(d), hi(d);
      for (std::size_t i = 0; i < d; ++i) {
        lo[i] = -2.0 * unif(rng);
        hi[i] = lo[i] + 0.1 + 2.0 * unif(rng);
      }
      dom = rf::ConvexDomain::box(lo, hi);
    }
    rf::ConstrainedOptimisticLearner l(std::make_unique<rf::DimFreeLearner>(d), dom);
    std::vector<rf::HintSourcePtr> sources;
    sources.push_back(std::make_unique<rf::LastGradientHints>(d));
    sources.push_back(std::make_unique<rf::AdversarialNegateHints>(d));
    sources.push_back(std::make_unique<rf::RunningAverageHints>(d));
    sources.push_back(std::make_unique<rf::UnitBallDescentHints>(d));
    const std::size_t T = 2048;
    const auto st = mixed_stream(d, T, rng());
    std::set<std::size_t> audit;
    while (audit.size() < 32) audit.insert(rng() % T);
    for (std::size_t t = 0; t < T; ++t) {
      const Vector& g = st[t];
      Vector h = sources[s % 4]->next_hint();
      if (s % 5 == 4) h = rf::clip_to_ball(random_vector(d, 1.0, rng));
      const Vector w = l.predict(h);
      l.observe(g);
      for (auto& src : sources) {
        src->next_hint();
        src->feed(g);
      }
      const auto& tr = l.last_trace();
      if (!dom.contains(w) || !(w == tr.played)) ++outside;
      if (lnorm(tr.tilde_gradient) > lnorm(g) + 1e-9) ++grad_bad;
      if (lnorm(tr.tilde_hint - tr.tilde_gradient) > lnorm(h - g) + 1e-9) ++hint_bad;
      if (!audit.count(t)) continue;
      const double s0 = dom.distance(tr.tilde_w);
      const double scale = 1.0 + lnorm(tr.tilde_w);
      for (int j = 0; j < 1000; ++j) {
        const Vector v = tr.tilde_w + random_vector(d, scale * std::exp(3.0 * unif(rng) - 2.0), rng);
        const double slack = dom.distance(v) - s0 - ldot(tr.z, v - tr.tilde_w);
        worst_slack = std::min(worst_slack, slack);
        if (slack < -1e-9) ++sub_bad;
        ++sub_checks;
      }
    }
  }
  Outcome out;
  out.pass = outside == 0 && grad_bad == 0 && hint_bad == 0 && sub_bad == 0;
  out.detail = "40 streams (20 ball, 20 box): " + std::to_string(outside) + " infeasible plays, " +
               std::to_string(grad_bad) + " gradient-norm and " + std::to_string(hint_bad) +
               " hint-error violations; subgradient " + std::to_string(sub_bad) + "/" + std::to_string(sub_checks) +
               " violations, min slack " + fmt("%.2e", worst_slack);
  return out;
}

Outcome multi_hint() {
  const double eps = 1.0;
  const std::size_t k = 3;
  double worst = -1e300, worst_budget = -1e300, worst_decomp = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    rf::Rng rng(rf::derive_seed(808, s));
    const std::size_t d = 2 + rng() % 15;
    const auto st = mixed_stream(d, 4096, rng());
    rf::MultiHintLearner multi(std::make_unique<rf::DimFreeLearner>(d, eps), k, eps);
    rf::OptimisticLearner single(std::make_unique<rf::DimFreeLearner>(d, eps), eps);
    std::vector<Vector> comps = {Vector(d)};
    for (int i = 0; i < 4; ++i) comps.push_back(random_vector(d, 1.0 + i, rng));
    std::vector<rf::CompensatedSum> rm(comps.size()), rs(comps.size());
    Vector prev(d);
    for (const Vector& g : st) {
      // One perfect sequence, the negated previous gradient, and the
      // negated current gradient.
      const std::vector<Vector> hints = {g, -prev, -g};
      std::vector<double> y(k);
      for (std::size_t i = 0; i < k; ++i) y[i] = multi.bettor(i).predict();
      const Vector& wm = multi.predict(hints);
      const Vector& ws = single.predict(hints[0]);
      const double gap = ldot(g, wm) - ldot(g, ws);
      worst_decomp = std::max(worst_decomp, std::abs(gap + y[1] * ldot(g, hints[1]) + y[2] * ldot(g, hints[2])) /
                                                std::max(1.0, std::abs(y[0])));
      for (std::size_t c = 0; c < comps.size(); ++c) {
        rm[c] += ldot(g, wm) - ldot(g, comps[c]);
        rs[c] += ldot(g, ws) - ldot(g, comps[c]);
        worst = std::max(worst, rm[c].value() - rs[c].value() - k * eps);
      }
      multi.observe(g);
      single.observe(g);
      double budget = 0.0;
      for (double b : multi.bettor_losses()) budget += b;
      worst_budget = std::max(worst_budget, budget - k * eps);
      prev = g;
    }
  }
  Outcome out;
  out.pass = worst <= 1e-6 && worst_budget <= 1e-6 && worst_decomp <= 1e-6;
  out.detail = "max R_multi - R_single - k eps = " + fmt("%.3e", worst) + ", max sum of bettor regrets - k eps = " +
               fmt("%.3e", worst_budget) + ", decomposition residual " + fmt("%.2e", worst_decomp);
  return out;
}

Outcome best_fixed_hint() {
  const std::size_t T = 1 << 16;
  double worst_ftl = -1e300, worst_ubd = -1e300, worst_check = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    rf::Rng rng(rf::derive_seed(909, s));
    const std::size_t d = 1 + rng() % 8;
    const auto st = mixed_stream(d, T, rng());
    rf::RunningAverageHints avg(d);
    rf::UnitBallDescentHints ubd(d);
    long double played = 0.0L, sq = 0.0L, ubd_gain = 0.0L;
    std::vector<long double> G(d, 0.0L);
    for (std::size_t t = 0; t < T; ++t) {
      const Vector& g = st[t];
      const Vector h = avg.next_hint();
      const Vector u = ubd.next_hint();
      for (std::size_t i = 0; i < d; ++i) {
        played += (static_cast<long double>(g[i]) - h[i]) * (static_cast<long double>(g[i]) - h[i]);
        sq += static_cast<long double>(g[i]) * g[i];
        ubd_gain += static_cast<long double>(g[i]) * u[i];
        G[i] += g[i];
      }
      avg.feed(g);
      ubd.feed(g);
      const std::size_t n = t + 1;
      if (n < 2 || !is_pow2(n)) continue;
      long double GG = 0.0L;
      for (auto v : G) GG += v * v;
      const double gap = static_cast<double>(played - (sq - GG / n));
      worst_ftl = std::max(worst_ftl, gap - 8.0 * std::log(static_cast<double>(n)));
      if (n == T) worst_check = std::abs(gap - rf::ftl_regret_check(st));
      // Loss <g, g - 2h>; the best fixed unit-ball hint is G / ||G||.
      const double regret = static_cast<double>(2.0L * std::sqrt(GG) - 2.0L * ubd_gain);
      worst_ubd = std::max(worst_ubd, regret - 4.0 * std::sqrt(static_cast<double>(sq)));
    }
  }
  Outcome out;
  out.pass = worst_ftl <= 0.0 && worst_ubd <= 0.0 && worst_check <= 1e-6;
  out.detail = "max FTL gap - 8 ln T = " + fmt("%.3f", worst_ftl) + ", max descent regret - 4 sqrt(sum g^2) = " +
               fmt("%.3f", worst_ubd) + ", library/oracle gap difference " + fmt("%.1e", worst_check);
  return out;
}

Outcome bernstein() {
  Outcome out;
  std::ostringstream detail;
  for (const rf::SamplerSpec& s : rf::shipped_samplers()) {
    rf::BernsteinConfig cfg;
    cfg.delta = 0.05;
    cfg.T = 1024;
    cfg.trials = 2000;
    cfg.sampler = s;
    const auto formula = rf::coverage_experiment(cfg);
    cfg.via_learner = true;
    const auto learner = rf::coverage_experiment(cfg);
    const double ratio = formula.mean_radius / learner.mean_radius;
    const bool ok = formula.failure_rate <= 0.0646 && ratio <= 4.0 && ratio >= 0.25;
    out.pass = out.pass && ok;
    detail << rf::sampler_name(s.kind) << ": failure " << fmt("%.4f", formula.failure_rate) << ", radius ratio "
           << fmt("%.2f", ratio) << "; ";
  }
  out.detail = detail.str() + "need failure <= 0.0646 and ratio within 4x";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"additivity", additivity},     {"epsilon_at_origin", epsilon_at_origin},
      {"sqrt_regime", sqrt_regime},   {"optimism_payoff", optimism_payoff},
      {"safety", safety},             {"pnorm_grid", pnorm_grid},
      {"constrained", constrained},   {"multi_hint", multi_hint},
      {"best_fixed_hint", best_fixed_hint}, {"bernstein", bernstein},
  };
  std::set<std::size_t> pick;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (n < 1 || n > static_cast<int>(criteria.size())) {
      std::cerr << "usage: acceptance [criterion 1-10 ...]\n";
      return 2;
    }
    pick.insert(static_cast<std::size_t>(n));
  }
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!pick.empty() && !pick.count(i + 1)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " " << criteria[i].first << " ["
              << fmt("%.1f", secs) << " s]: " << o.detail << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
