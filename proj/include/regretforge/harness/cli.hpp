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

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "regretforge/concentration.hpp"
#include "regretforge/errors.hpp"
#include "regretforge/harness/config.hpp"
#include "regretforge/harness/experiment.hpp"
#include "regretforge/harness/selftest.hpp"

namespace regretforge::harness {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kSeedEnv = "REGRETFORGE_SEED";

// One machine-readable line: error kind=<kind> message="<json-escaped>".
inline void error_line(std::ostream& err, const std::string& kind, const std::string& message) {
  err << "error kind=" << kind << " message=" << nlohmann::json(message).dump() << '\n';
}

// The seed from the environment, if set. Rejects anything but a plain
// nonnegative integer.
inline std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv(kSeedEnv);
  if (!raw || !*raw) return std::nullopt;
  const std::string s(raw);
  if (s.find_first_not_of("0123456789") != std::string::npos || s.size() > 20) {
    throw CLI::ValidationError(std::string(kSeedEnv) + " must be a nonnegative integer, got '" + s + "'");
  }
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw CLI::ValidationError(std::string(kSeedEnv) + " is out of range: '" + s + "'");
  }
}

namespace cli_detail {

inline void print_slopes(std::ostream& out, const ResultTable& table) {
  std::vector<std::pair<std::string, std::string>> keys;
  std::set<std::pair<std::string, std::string>> seen;
  for (const ResultRow& r : table.rows) {
    if (seen.insert({r.experiment_id, r.comparator_id}).second) {
      keys.emplace_back(r.experiment_id, r.comparator_id);
    }
  }
  for (const auto& [exp, comp] : keys) {
    try {
      const double s = fit_slope(table, comp, exp);
      out << "slope experiment=" << exp << " comparator=" << comp << " value=" << std::fixed
          << std::setprecision(4) << s << std::defaultfloat << '\n';
    } catch (const ConfigError&) {
      // Fewer than four checkpoints; nothing to fit.
    }
  }
}

inline void emit(std::ostream& out, const ResultTable& table, const std::string& path) {
  if (path.empty()) {
    write_csv(out, table);
    return;
  }
  write_csv_file(path, table);
  out << "wrote " << table.rows.size() << " rows to " << path << '\n';
  print_slopes(out, table);
}

}  // namespace cli_detail

/// Entry point shared by the regretforge binary and the tests. args[0] is
/// the program name.
///
///   run       --config PATH [--output PATH] [--dump-ledger PATH]
///   sweep     --config PATH [--output PATH] [--workers N]
///   bernstein --delta D --T N --trials K [--via-learner] [--sampler NAME]
///             [--seed S] [--workers N]
///   selftest
///
/// Exit status: 0 on success, 1 on a runtime failure or failing selftest,
/// 2 on bad flags or an invalid configuration.
inline int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Composable online linear optimization experiments", "regretforge"};
  app.require_subcommand(1);

  std::string config_path, output_path, ledger_path;
  std::size_t workers = 0;

  auto* run = app.add_subcommand("run", "Run one experiment and write its result table");
  run->add_option("--config", config_path, "JSON experiment file")->required();
  run->add_option("--output", output_path, "CSV path (overrides the config; '-' for stdout)");
  run->add_option("--dump-ledger", ledger_path, "Write every (w, g) pair as JSON lines");

  auto* sweep = app.add_subcommand("sweep", "Run the experiment's grid over T and seeds");
  sweep->add_option("--config", config_path, "JSON experiment file")->required();
  sweep->add_option("--output", output_path, "CSV path (overrides the config; '-' for stdout)");
  sweep->add_option("--workers", workers, "Worker threads (0 = config or hardware)");

  double delta = 0.05;
  std::size_t T = 1024, trials = 2000;
  bool via_learner = false;
  std::string sampler = "all";
  std::optional<std::uint64_t> seed_flag;
  auto* bern = app.add_subcommand("bernstein", "Monte Carlo coverage of the empirical Bernstein radius");
  bern->add_option("--delta", delta, "Failure probability")->required()->check(CLI::Range(1e-12, 1.0));
  bern->add_option("--T", T, "Samples per trial")->required()->check(CLI::PositiveNumber);
  bern->add_option("--trials", trials, "Number of trials")->required()->check(CLI::PositiveNumber);
  bern->add_flag("--via-learner", via_learner, "Use the online-learning radius");
  bern->add_option("--sampler", sampler, "rademacher_e1, rademacher_cube, uniform_sphere or all");
  bern->add_option("--seed", seed_flag, "Base seed");
  bern->add_option("--workers", workers, "Worker threads (0 = hardware)");

  auto* self = app.add_subcommand("selftest", "Run the invariant suites at desk scale");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("regretforge");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    error_line(err, "usage", e.what());
    err << app.help();
    return kExitUsage;
  }

  try {
    const std::optional<std::uint64_t> seed_env = env_seed();

    if (run->parsed()) {
      ExperimentSpec spec = load_experiment(config_path);
      if (seed_env) spec.stream.seed = *seed_env;
      if (!output_path.empty()) spec.output = output_path == "-" ? "" : output_path;
      if (!ledger_path.empty()) spec.dump_ledger = ledger_path;
      std::ofstream ledger;
      RunOptions opts;
      if (!spec.dump_ledger.empty()) {
        ledger.open(spec.dump_ledger);
        if (!ledger) throw ConfigError("cannot write ledger dump '" + spec.dump_ledger + "'");
        opts.ledger_out = &ledger;
      }
      const ResultTable table = run_experiment(spec, opts);
      cli_detail::emit(out, table, spec.output);
      return kExitOk;
    }

    if (sweep->parsed()) {
      ExperimentSpec spec = load_experiment(config_path);
      if (seed_env) spec.sweep.seeds = {*seed_env};
      if (!output_path.empty()) spec.output = output_path == "-" ? "" : output_path;
      const ResultTable table = run_sweep(spec, workers);
      cli_detail::emit(out, table, spec.output);
      return kExitOk;
    }

    if (bern->parsed()) {
      std::vector<SamplerSpec> samplers;
      if (sampler == "all") {
        samplers = shipped_samplers();
      } else {
        const SamplerKind kind = parse_sampler_kind(sampler);
        for (const SamplerSpec& s : shipped_samplers()) {
          if (s.kind == kind) samplers.push_back(s);
        }
        if (samplers.empty()) throw ConfigError("sampler '" + sampler + "' is not a shipped preset");
      }
      const std::uint64_t seed = seed_flag ? *seed_flag : seed_env.value_or(0);
      for (const SamplerSpec& s : samplers) {
        BernsteinConfig cfg;
        cfg.delta = delta;
        cfg.T = T;
        cfg.trials = trials;
        cfg.sampler = s;
        cfg.seed = seed;
        cfg.via_learner = via_learner;
        if (workers) cfg.workers = workers;
        const CoverageResult r = coverage_experiment(cfg);
        out << "sampler=" << sampler_name(s.kind) << " dim=" << s.dim
            << " mode=" << (via_learner ? "learner" : "formula") << " delta=" << delta << " T=" << T
            << " trials=" << trials << std::fixed << std::setprecision(4)
            << " failure_rate=" << r.failure_rate << " mean_radius=" << r.mean_radius
            << " mean_deviation=" << r.mean_deviation << std::defaultfloat << '\n';
      }
      return kExitOk;
    }

    if (self->parsed()) {
      bool all = true;
      for (const SelfTestResult& r : run_selftest()) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name;
        if (!r.passed) out << ": " << r.detail;
        out << '\n';
        all = all && r.passed;
      }
      return all ? kExitOk : kExitFailure;
    }
  } catch (const CLI::ValidationError& e) {
    error_line(err, "usage", e.what());
    return kExitUsage;
  } catch (const ConfigError& e) {
    error_line(err, "config", e.what());
    return kExitUsage;
  } catch (const DimensionError& e) {
    error_line(err, "dimension", e.what());
    return kExitFailure;
  } catch (const ContractError& e) {
    error_line(err, "contract", e.what());
    return kExitFailure;
  } catch (const std::exception& e) {
    error_line(err, "runtime", e.what());
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace regretforge::harness
