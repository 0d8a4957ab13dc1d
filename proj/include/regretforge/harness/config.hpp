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

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "regretforge/add_combiner.hpp"
#include "regretforge/coin_bettor.hpp"
#include "regretforge/constrained.hpp"
#include "regretforge/dimfree.hpp"
#include "regretforge/errors.hpp"
#include "regretforge/geometry.hpp"
#include "regretforge/harness/streams.hpp"
#include "regretforge/hints.hpp"
#include "regretforge/learner.hpp"
#include "regretforge/multi_hint.hpp"
#include "regretforge/optimistic.hpp"
#include "regretforge/per_coordinate.hpp"
#include "regretforge/projected_descent.hpp"
#include "regretforge/self_hinted.hpp"

namespace regretforge::harness {

using Json = nlohmann::json;

inline std::string child_path(const std::string& path, std::string_view key) {
  return path + "." + std::string(key);
}

inline std::string index_path(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

[[noreturn]] inline void config_fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

namespace detail {

inline void require_object(const Json& node, const std::string& path) {
  if (!node.is_object()) config_fail(path, "expected an object");
}

inline void check_keys(const Json& node, const std::string& path,
                       std::initializer_list<std::string_view> allowed) {
  for (const auto& item : node.items()) {
    bool ok = false;
    for (std::string_view a : allowed) ok = ok || item.key() == a;
    if (!ok) config_fail(child_path(path, item.key()), "unknown key");
  }
}

inline const Json* find(const Json& node, std::string_view key) {
  const auto it = node.find(key);
  return it == node.end() ? nullptr : &*it;
}

inline const Json& require(const Json& node, std::string_view key, const std::string& path,
                           std::string_view why = "") {
  const Json* v = find(node, key);
  if (!v) {
    config_fail(path, "missing required key '" + std::string(key) + "'" +
                          (why.empty() ? std::string() : " (" + std::string(why) + ")"));
  }
  return *v;
}

inline double number(const Json& v, const std::string& path) {
  if (!v.is_number()) config_fail(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) config_fail(path, "expected a finite number");
  return x;
}

inline double number_or(const Json& node, std::string_view key, const std::string& path,
                        double fallback) {
  const Json* v = find(node, key);
  return v ? number(*v, child_path(path, key)) : fallback;
}

inline std::uint64_t integer(const Json& v, const std::string& path) {
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    config_fail(path, "expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

inline std::string string(const Json& v, const std::string& path) {
  if (!v.is_string()) config_fail(path, "expected a string");
  return v.get<std::string>();
}

inline Vector vector(const Json& v, const std::string& path, std::size_t dim) {
  if (!v.is_array()) config_fail(path, "expected an array of numbers");
  if (v.size() != dim) {
    config_fail(path, "expected " + std::to_string(dim) + " entries, got " + std::to_string(v.size()));
  }
  Vector out(dim);
  for (std::size_t i = 0; i < dim; ++i) out[i] = number(v[i], index_path(path, i));
  return out;
}

// A number broadcasts to every coordinate; an array must match dim.
inline Vector vector_or_scalar(const Json& v, const std::string& path, std::size_t dim) {
  if (v.is_number()) {
    Vector out(dim);
    const double x = number(v, path);
    for (std::size_t i = 0; i < dim; ++i) out[i] = x;
    return out;
  }
  return vector(v, path, dim);
}

// "kind" discriminator; a bare string is shorthand for {"kind": "..."}.
inline std::string kind_of(const Json& node, const std::string& path) {
  if (node.is_string()) return node.get<std::string>();
  require_object(node, path);
  return string(require(node, "kind", path), child_path(path, "kind"));
}

inline Json as_object(const Json& node) {
  return node.is_string() ? Json{{"kind", node.get<std::string>()}} : node;
}

}  // namespace detail

// Domain nodes:
//   {"kind": "whole_space"}
//   {"kind": "ball", "radius": r, "center": [..] (default origin)}
//   {"kind": "box", "lo": x or [..], "hi": x or [..]}
inline ConvexDomain parse_domain(const Json& raw, std::size_t dim, const std::string& path) {
  using namespace detail;
  const std::string kind = kind_of(raw, path);
  const Json node = as_object(raw);
  try {
    if (kind == "whole_space") {
      check_keys(node, path, {"kind"});
      return ConvexDomain::whole_space(dim);
    }
    if (kind == "ball") {
      check_keys(node, path, {"kind", "radius", "center"});
      const double r = number(require(node, "radius", path), child_path(path, "radius"));
      const Json* c = find(node, "center");
      Vector center = c ? vector(*c, child_path(path, "center"), dim) : Vector::zeros(dim);
      return ConvexDomain::ball(std::move(center), r);
    }
    if (kind == "box") {
      check_keys(node, path, {"kind", "lo", "hi"});
      Vector lo = vector_or_scalar(require(node, "lo", path), child_path(path, "lo"), dim);
      Vector hi = vector_or_scalar(require(node, "hi", path), child_path(path, "hi"), dim);
      return ConvexDomain::box(std::move(lo), std::move(hi));
    }
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    if (msg.rfind("$", 0) == 0) throw;
    config_fail(path, msg);
  }
  config_fail(child_path(path, "kind"), "unknown domain kind '" + kind + "'");
}

/// What the builder needs beyond the expression itself.
struct BuildContext {
  std::size_t dim = 1;
  // The gradient stream, used by the "perfect" hint source. May be null
  // when only type-checking.
  const std::vector<Vector>* stream = nullptr;
  // Relative hint-file paths resolve against this directory.
  std::filesystem::path base_dir;
};

// Hint nodes: "zero", "last_gradient", "running_average",
// "unit_ball_descent", "adversarial_negate", "perfect",
// {"kind": "constant", "value": [..]}, {"kind": "external", "path": "..."}.
inline HintSourcePtr build_hint_source(const Json& raw, const BuildContext& ctx,
                                       const std::string& path) {
  using namespace detail;
  const std::string kind = kind_of(raw, path);
  const Json node = as_object(raw);
  const std::size_t d = ctx.dim;
  if (kind == "constant") {
    check_keys(node, path, {"kind", "value"});
    return std::make_unique<ConstantHints>(
        vector(require(node, "value", path), child_path(path, "value"), d));
  }
  if (kind == "external") {
    check_keys(node, path, {"kind", "path"});
    std::filesystem::path file = string(require(node, "path", path), child_path(path, "path"));
    if (file.is_relative()) file = ctx.base_dir / file;
    try {
      return std::make_unique<ExternalHints>(d, read_hint_file(file.string()));
    } catch (const Error& e) {
      config_fail(child_path(path, "path"), e.what());
    }
  }
  check_keys(node, path, {"kind"});
  if (kind == "zero") return std::make_unique<ZeroHints>(d);
  if (kind == "last_gradient") return std::make_unique<LastGradientHints>(d);
  if (kind == "running_average") return std::make_unique<RunningAverageHints>(d);
  if (kind == "unit_ball_descent") return std::make_unique<UnitBallDescentHints>(d);
  if (kind == "adversarial_negate") return std::make_unique<AdversarialNegateHints>(d);
  if (kind == "perfect") {
    return std::make_unique<ExternalHints>(d, ctx.stream ? *ctx.stream : std::vector<Vector>{},
                                           "perfect");
  }
  config_fail(child_path(path, "kind"), "unknown hint kind '" + kind + "'");
}

/// Builds a learner from a composition expression.
///
/// `budget` is the origin-regret budget handed down by the parent; a node's
/// own "epsilon" key replaces it. Combinators split their budget:
///   add                     budget / k to each of k children
///   optimistic              budget / 2 to the base, budget / 2 to the bettor
///   constrained_optimistic  budget / 4 to each (its regret carries a factor 2)
///   multi_hint              budget / (k + 1) to the base and to each bettor
/// Errors name the offending node by its JSON path, e.g. $.learner.base.
inline LearnerPtr build_learner(const Json& raw, const BuildContext& ctx,
                                const std::string& path = "$.learner",
                                double budget = kDefaultEpsilon) {
  using namespace detail;
  const std::string kind = kind_of(raw, path);
  const Json node = as_object(raw);
  const std::size_t d = ctx.dim;
  const double eps = number_or(node, "epsilon", path, budget);
  if (eps < 0.0) config_fail(child_path(path, "epsilon"), "epsilon must be nonnegative");
  const double cap = number_or(node, "stake_cap", path, kDefaultStakeCap);
  if (!(cap > 0.0)) config_fail(child_path(path, "stake_cap"), "stake_cap must be positive");

  try {
    if (kind == "zero") {
      check_keys(node, path, {"kind"});
      return std::make_unique<ZeroLearner>(d);
    }
    if (kind == "coin") {
      check_keys(node, path, {"kind", "epsilon", "stake_cap"});
      if (d != 1) config_fail(path, "coin learner is one-dimensional, stream dim is " + std::to_string(d));
      return std::make_unique<CoinLearner>(eps, cap);
    }
    if (kind == "dimfree") {
      check_keys(node, path, {"kind", "epsilon", "stake_cap", "p"});
      const double p = number_or(node, "p", path, 2.0);
      if (!(p > 1.0 && p <= 2.0)) config_fail(child_path(path, "p"), "p must lie in (1, 2]");
      return std::make_unique<DimFreeLearner>(d, eps, NormSpec::from_p(p), cap);
    }
    if (kind == "per_coordinate") {
      check_keys(node, path, {"kind", "epsilon", "stake_cap"});
      return std::make_unique<PerCoordinateLearner>(d, eps, cap);
    }
    if (kind == "apd") {
      check_keys(node, path, {"kind", "domain"});
      const Json& dom = require(node, "domain", path, "apd requires a domain");
      ConvexDomain domain = parse_domain(dom, d, child_path(path, "domain"));
      if (!domain.bounded()) config_fail(child_path(path, "domain"), "apd requires a bounded domain");
      return std::make_unique<AdaptiveProjectedDescent>(std::move(domain));
    }
    if (kind == "multi_norm") {
      check_keys(node, path, {"kind", "epsilon", "stake_cap"});
      if (d < 3) config_fail(path, "multi_norm needs dimension >= 3");
      return multi_norm(d, eps, cap);
    }
    if (kind == "add") {
      check_keys(node, path, {"kind", "epsilon", "children"});
      const Json& kids = require(node, "children", path);
      const std::string kids_path = child_path(path, "children");
      if (!kids.is_array() || kids.size() < 2) config_fail(kids_path, "add needs at least 2 children");
      const double share = eps / static_cast<double>(kids.size());
      std::vector<LearnerPtr> children;
      for (std::size_t i = 0; i < kids.size(); ++i) {
        children.push_back(build_learner(kids[i], ctx, index_path(kids_path, i), share));
      }
      return add_iterates(std::move(children));
    }
    if (kind == "optimistic") {
      check_keys(node, path, {"kind", "epsilon", "stake_cap", "base", "hint"});
      const Json& base = require(node, "base", path);
      const Json& hint = require(node, "hint", path, "hinted learners require a hint source");
      auto inner = std::make_unique<OptimisticLearner>(
          build_learner(base, ctx, child_path(path, "base"), eps / 2.0), eps / 2.0, cap);
      return with_hints(std::move(inner), build_hint_source(hint, ctx, child_path(path, "hint")));
    }
    if (kind == "constrained_optimistic") {
      check_keys(node, path, {"kind", "epsilon", "stake_cap", "base", "hint", "domain"});
      const Json& base = require(node, "base", path);
      const Json& hint = require(node, "hint", path, "hinted learners require a hint source");
      const Json& dom = require(node, "domain", path, "constrained learners require a domain");
      ConvexDomain domain = parse_domain(dom, d, child_path(path, "domain"));
      auto inner = std::make_unique<ConstrainedOptimisticLearner>(
          build_learner(base, ctx, child_path(path, "base"), eps / 4.0), std::move(domain),
          eps / 4.0, cap);
      return with_hints(std::move(inner), build_hint_source(hint, ctx, child_path(path, "hint")));
    }
    if (kind == "multi_hint") {
      check_keys(node, path, {"kind", "epsilon", "stake_cap", "base", "hints"});
      const Json& base = require(node, "base", path);
      const Json& hints = require(node, "hints", path, "hinted learners require hint sources");
      const std::string hints_path = child_path(path, "hints");
      if (!hints.is_array() || hints.empty()) config_fail(hints_path, "expected a nonempty array");
      const double share = eps / static_cast<double>(hints.size() + 1);
      auto inner = std::make_unique<MultiHintLearner>(
          build_learner(base, ctx, child_path(path, "base"), share), hints.size(), share, cap);
      std::vector<HintSourcePtr> sources;
      for (std::size_t i = 0; i < hints.size(); ++i) {
        sources.push_back(build_hint_source(hints[i], ctx, index_path(hints_path, i)));
      }
      return std::make_unique<SelfHintedLearner>(std::move(inner), std::move(sources));
    }
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    if (msg.rfind("$", 0) == 0) throw;
    config_fail(path, msg);
  } catch (const DimensionError& e) {
    config_fail(path, e.what());
  }
  config_fail(child_path(path, "kind"), "unknown learner kind '" + kind + "'");
}

// Stream node: {"kind": ..., "dim": d, "T": n, "seed": s, plus per-kind
// parameters}. slowly_varying accepts "step_size": "inv_sqrt_T".
inline StreamSpec parse_stream(const Json& node, const std::string& path = "$.stream") {
  using namespace detail;
  require_object(node, path);
  check_keys(node, path, {"kind", "dim", "T", "seed", "sigma", "step_size", "k_active", "mu", "noise"});
  StreamSpec s;
  try {
    s.kind = parse_stream_kind(string(require(node, "kind", path), child_path(path, "kind")));
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    if (msg.rfind("$", 0) == 0) throw;
    config_fail(child_path(path, "kind"), msg);
  }
  s.dim = integer(require(node, "dim", path), child_path(path, "dim"));
  s.T = integer(require(node, "T", path), child_path(path, "T"));
  if (s.dim == 0) config_fail(child_path(path, "dim"), "dim must be positive");
  if (s.T == 0) config_fail(child_path(path, "T"), "T must be positive");
  if (const Json* v = find(node, "seed")) s.seed = integer(*v, child_path(path, "seed"));
  s.sigma = number_or(node, "sigma", path, s.sigma);
  if (const Json* v = find(node, "step_size")) {
    if (v->is_string()) {
      if (v->get<std::string>() != "inv_sqrt_T") {
        config_fail(child_path(path, "step_size"), "expected a number or \"inv_sqrt_T\"");
      }
      s.step_inv_sqrt_T = true;
    } else {
      s.step_size = number(*v, child_path(path, "step_size"));
    }
  }
  if (const Json* v = find(node, "k_active")) s.k_active = integer(*v, child_path(path, "k_active"));
  if (const Json* v = find(node, "mu")) s.mu = vector(*v, child_path(path, "mu"), s.dim);
  else if (s.kind == StreamKind::biased) config_fail(path, "biased stream requires 'mu'");
  s.noise = number_or(node, "noise", path, s.noise);
  try {
    s.validate();
  } catch (const ConfigError& e) {
    config_fail(path, e.what());
  }
  return s;
}

enum class ComparatorKind { origin, vector, scaled_unit, best_in_ball };

/// A fixed comparator or a closed-form rule resolved at each checkpoint.
struct ComparatorSpec {
  ComparatorKind kind = ComparatorKind::origin;
  std::string id = "origin";
  Vector value;      // vector: the point; scaled_unit: the direction
  double radius = 1; // scaled_unit: r; best_in_ball: ball radius

  // best_in_ball: the minimizer of sum <g, u> over ||u|| <= r, which is
  // -r G / ||G|| for G = sum g (the origin when G = 0).
  Vector resolve(const Vector& gradient_sum) const {
    switch (kind) {
      case ComparatorKind::origin:
        return Vector::zeros(gradient_sum.dim());
      case ComparatorKind::vector:
        return value;
      case ComparatorKind::scaled_unit:
        return value * (radius / norm2(value));
      case ComparatorKind::best_in_ball: {
        const double n = norm2(gradient_sum);
        if (n == 0.0) return Vector::zeros(gradient_sum.dim());
        return gradient_sum * (-radius / n);
      }
    }
    return value;
  }
};

// Shortest round-trip decimal form.
inline std::string format_real(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

// Comparator nodes: "origin", [..] (a fixed vector),
// {"kind": "vector", "value": [..]}, {"kind": "scaled_unit", "r": r,
// "direction": [..]}, {"kind": "best_in_ball", "radius": r}. Any object may
// carry an "id"; otherwise one is derived.
inline ComparatorSpec parse_comparator(const Json& raw, std::size_t dim, const std::string& path,
                                       std::size_t index) {
  using namespace detail;
  ComparatorSpec c;
  if (raw.is_array()) {
    c.kind = ComparatorKind::vector;
    c.value = vector(raw, path, dim);
    c.id = "u" + std::to_string(index);
    return c;
  }
  const std::string kind = kind_of(raw, path);
  const Json node = as_object(raw);
  if (kind == "origin") {
    check_keys(node, path, {"kind", "id"});
    c.kind = ComparatorKind::origin;
    c.id = "origin";
  } else if (kind == "vector") {
    check_keys(node, path, {"kind", "id", "value"});
    c.kind = ComparatorKind::vector;
    c.value = vector(require(node, "value", path), child_path(path, "value"), dim);
    c.id = "u" + std::to_string(index);
  } else if (kind == "scaled_unit") {
    check_keys(node, path, {"kind", "id", "r", "direction"});
    c.kind = ComparatorKind::scaled_unit;
    c.radius = number(require(node, "r", path), child_path(path, "r"));
    c.value = vector(require(node, "direction", path), child_path(path, "direction"), dim);
    if (norm2(c.value) == 0.0) config_fail(child_path(path, "direction"), "direction must be nonzero");
    c.id = "scaled_unit(r=" + format_real(c.radius) + ")";
  } else if (kind == "best_in_ball") {
    check_keys(node, path, {"kind", "id", "radius"});
    c.kind = ComparatorKind::best_in_ball;
    c.radius = number(require(node, "radius", path), child_path(path, "radius"));
    if (c.radius < 0.0) config_fail(child_path(path, "radius"), "radius must be nonnegative");
    c.id = "best_in_ball(r=" + format_real(c.radius) + ")";
  } else {
    config_fail(child_path(path, "kind"), "unknown comparator kind '" + kind + "'");
  }
  if (const Json* v = find(node, "id")) c.id = string(*v, child_path(path, "id"));
  return c;
}

struct SweepSpec {
  std::vector<std::size_t> T;       // empty: the stream's T only
  std::vector<std::uint64_t> seeds; // empty: the stream's seed only
  std::size_t workers = 0;          // 0: hardware concurrency
};

struct ExperimentSpec {
  std::string id = "experiment";
  Json learner;
  StreamSpec stream;
  std::vector<ComparatorSpec> comparators;
  std::string output;       // CSV path; empty writes to the caller's stream
  std::string dump_ledger;  // JSON-lines path; empty disables the dump
  SweepSpec sweep;
  std::filesystem::path base_dir;
};

/// Builds the learner for a spec against a concrete stream.
inline LearnerPtr build_from_spec(const ExperimentSpec& spec, const std::vector<Vector>* stream) {
  BuildContext ctx{spec.stream.dim, stream, spec.base_dir};
  return build_learner(spec.learner, ctx);
}

/// Parses and type-checks an experiment document. Relative paths in the
/// document (output, dump_ledger, external hint files) resolve against
/// base_dir.
inline ExperimentSpec parse_experiment(const Json& doc, const std::filesystem::path& base_dir = {}) {
  using namespace detail;
  const std::string root = "$";
  require_object(doc, root);
  check_keys(doc, root, {"id", "learner", "stream", "comparators", "output", "dump_ledger", "sweep"});
  ExperimentSpec spec;
  spec.base_dir = base_dir;
  if (const Json* v = find(doc, "id")) spec.id = string(*v, "$.id");
  spec.stream = parse_stream(require(doc, "stream", root));
  spec.learner = require(doc, "learner", root);

  const Json* comps = find(doc, "comparators");
  if (!comps) {
    spec.comparators.push_back(parse_comparator("origin", spec.stream.dim, "$.comparators[0]", 0));
    spec.comparators.push_back(parse_comparator(Json{{"kind", "best_in_ball"}, {"radius", 1.0}},
                                                spec.stream.dim, "$.comparators[1]", 1));
  } else {
    if (!comps->is_array() || comps->empty()) config_fail("$.comparators", "expected a nonempty array");
    for (std::size_t i = 0; i < comps->size(); ++i) {
      spec.comparators.push_back(
          parse_comparator((*comps)[i], spec.stream.dim, index_path("$.comparators", i), i));
    }
  }
  for (std::size_t i = 0; i < spec.comparators.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (spec.comparators[i].id == spec.comparators[j].id) {
        config_fail(index_path("$.comparators", i), "duplicate comparator id '" + spec.comparators[i].id + "'");
      }
    }
  }

  auto resolve = [&](const std::string& p) {
    std::filesystem::path f = p;
    return (f.is_relative() && !base_dir.empty() ? base_dir / f : f).string();
  };
  if (const Json* v = find(doc, "output")) spec.output = resolve(string(*v, "$.output"));
  if (const Json* v = find(doc, "dump_ledger")) spec.dump_ledger = resolve(string(*v, "$.dump_ledger"));

  if (const Json* sw = find(doc, "sweep")) {
    const std::string sp = "$.sweep";
    require_object(*sw, sp);
    check_keys(*sw, sp, {"T", "seeds", "workers"});
    if (const Json* ts = find(*sw, "T")) {
      if (!ts->is_array() || ts->empty()) config_fail(child_path(sp, "T"), "expected a nonempty array");
      for (std::size_t i = 0; i < ts->size(); ++i) {
        const auto t = integer((*ts)[i], index_path(child_path(sp, "T"), i));
        if (t == 0) config_fail(index_path(child_path(sp, "T"), i), "T must be positive");
        spec.sweep.T.push_back(t);
      }
    }
    if (const Json* ss = find(*sw, "seeds")) {
      if (!ss->is_array() || ss->empty()) config_fail(child_path(sp, "seeds"), "expected a nonempty array");
      for (std::size_t i = 0; i < ss->size(); ++i) {
        spec.sweep.seeds.push_back(integer((*ss)[i], index_path(child_path(sp, "seeds"), i)));
      }
    }
    if (const Json* w = find(*sw, "workers")) spec.sweep.workers = integer(*w, child_path(sp, "workers"));
  }

  // Type-check the composition once, without a stream.
  build_from_spec(spec, nullptr);
  return spec;
}

inline ExperimentSpec load_experiment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_experiment(doc, std::filesystem::path(path).parent_path());
}

}  // namespace regretforge::harness
