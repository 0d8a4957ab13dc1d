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
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "regretforge/errors.hpp"
#include "regretforge/harness/config.hpp"
#include "regretforge/harness/streams.hpp"
#include "regretforge/ledger.hpp"
#include "regretforge/learner.hpp"
#include "regretforge/parallel.hpp"
#include "regretforge/self_hinted.hpp"
#include "regretforge/vector.hpp"

namespace regretforge::harness {

/// One (checkpoint, comparator) measurement. The hint columns are present
/// only for hinted learners; with several hint sequences they report the
/// smallest value across sequences. bettor_regrets holds the origin regret
/// of each hint's bettor.
struct ResultRow {
  std::string experiment_id;
  std::size_t T = 0;
  std::string comparator_id;
  double regret = 0.0;
  double cum_loss = 0.0;
  std::optional<double> sum_gh_sq;
  std::optional<double> sum_gh_sq_minus_h_sq;
  double wallclock_ms = 0.0;
  std::vector<double> bettor_regrets;
};

struct ResultTable {
  std::vector<ResultRow> rows;
  std::size_t bettor_columns = 0;

  void append(const ResultTable& other) {
    bettor_columns = std::max(bettor_columns, other.bettor_columns);
    rows.insert(rows.end(), other.rows.begin(), other.rows.end());
  }
};

inline bool is_checkpoint(std::size_t t, std::size_t T) {
  return t == T || (t & (t - 1)) == 0;
}

struct RunOptions {
  // When set, every round is written as {"t", "w", "g"} on one line.
  std::ostream* ledger_out = nullptr;
};

/// Replays the composed learner on a pre-generated stream. cum_loss is
/// sum <g_t, w_t>; regret(u) = cum_loss - <sum g_t, u>, both accumulated
/// with compensated summation.
inline ResultTable run_on_stream(const ExperimentSpec& spec, const std::vector<Vector>& stream,
                                 const RunOptions& opts = {}) {
  LearnerPtr learner = build_from_spec(spec, &stream);
  const auto* hinted = dynamic_cast<const SelfHintedLearner*>(learner.get());
  const std::size_t d = spec.stream.dim;
  const std::size_t T = stream.size();

  ResultTable table;
  table.bettor_columns = hinted ? hinted->inner().num_hints() : 0;

  CompensatedSum loss;
  std::vector<CompensatedSum> gsum(d);
  Vector G(d);
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t t = 0; t < T; ++t) {
    const Vector& g = stream[t];
    const Vector& w = learner->predict();
    for (std::size_t i = 0; i < d; ++i) {
      loss += g[i] * w[i];
      gsum[i] += g[i];
    }
    if (opts.ledger_out) {
      *opts.ledger_out << Json{{"t", t + 1}, {"w", w.raw()}, {"g", g.raw()}}.dump() << '\n';
    }
    learner->observe(g);

    const std::size_t done = t + 1;
    if (!is_checkpoint(done, T)) continue;
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    for (std::size_t i = 0; i < d; ++i) G[i] = gsum[i].value();
    std::optional<double> gh, gh_minus;
    std::vector<double> bettors;
    if (hinted) {
      const HintStats& st = hinted->stats();
      double a = std::numeric_limits<double>::infinity(), b = a;
      for (std::size_t k = 0; k < st.sum_gh_sq.size(); ++k) {
        a = std::min(a, st.sum_gh_sq[k].value());
        b = std::min(b, st.sum_gh_sq_minus_h_sq[k].value());
      }
      gh = a;
      gh_minus = b;
      bettors = hinted->inner().bettor_losses();
    }
    for (const ComparatorSpec& c : spec.comparators) {
      const Vector u = c.resolve(G);
      CompensatedSum r = loss;
      for (std::size_t i = 0; i < d; ++i) r -= G[i] * u[i];
      table.rows.push_back(
          ResultRow{spec.id, done, c.id, r.value(), loss.value(), gh, gh_minus, ms, bettors});
    }
  }
  return table;
}

inline ResultTable run_experiment(const ExperimentSpec& spec, const RunOptions& opts = {}) {
  return run_on_stream(spec, generate_stream(spec.stream), opts);
}

// ---------------------------------------------------------------------------
// CSV

inline const std::vector<std::string>& csv_base_columns() {
  static const std::vector<std::string> cols = {
      "experiment_id", "T", "comparator_id", "regret", "cum_loss",
      "sum_gh_sq", "sum_gh_sq_minus_h_sq", "wallclock_ms"};
  return cols;
}

inline std::string bettor_column(std::size_t i) { return "bettor_" + std::to_string(i + 1) + "_regret"; }

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_number(double x) {
  std::ostringstream ss;
  ss.imbue(std::locale::classic());
  ss << std::setprecision(17) << x;
  return ss.str();
}

inline void write_csv(std::ostream& out, const ResultTable& table) {
  const auto& base = csv_base_columns();
  for (std::size_t i = 0; i < base.size(); ++i) out << (i ? "," : "") << base[i];
  for (std::size_t i = 0; i < table.bettor_columns; ++i) out << ',' << bettor_column(i);
  out << '\n';
  for (const ResultRow& r : table.rows) {
    out << csv_field(r.experiment_id) << ',' << r.T << ',' << csv_field(r.comparator_id) << ','
        << csv_number(r.regret) << ',' << csv_number(r.cum_loss) << ','
        << (r.sum_gh_sq ? csv_number(*r.sum_gh_sq) : "") << ','
        << (r.sum_gh_sq_minus_h_sq ? csv_number(*r.sum_gh_sq_minus_h_sq) : "") << ','
        << csv_number(r.wallclock_ms);
    for (std::size_t i = 0; i < table.bettor_columns; ++i) {
      out << ',' << (i < r.bettor_regrets.size() ? csv_number(r.bettor_regrets[i]) : "");
    }
    out << '\n';
  }
}

inline void write_csv_file(const std::string& path, const ResultTable& table) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  write_csv(out, table);
  if (!out) throw Error("write to '" + path + "' failed");
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (quoted) throw ConfigError("csv line " + std::to_string(line_no) + ": unterminated quote");
  fields.push_back(std::move(cur));
  return fields;
}

inline double parse_csv_number(const std::string& s, std::size_t line_no) {
  std::istringstream ss(s);
  ss.imbue(std::locale::classic());
  double x = 0.0;
  ss >> x;
  if (!ss || !ss.eof()) {
    // Accept the spellings operator<< produces for non-finite values.
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan" || s == "-nan") return std::numeric_limits<double>::quiet_NaN();
    throw ConfigError("csv line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
  return x;
}

}  // namespace detail

inline ResultTable read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("csv is empty");
  const auto header = detail::split_csv_line(line, 1);
  const auto& base = csv_base_columns();
  if (header.size() < base.size() || !std::equal(base.begin(), base.end(), header.begin())) {
    throw ConfigError("csv header does not start with the result columns");
  }
  ResultTable table;
  table.bettor_columns = header.size() - base.size();
  for (std::size_t i = 0; i < table.bettor_columns; ++i) {
    if (header[base.size() + i] != bettor_column(i)) {
      throw ConfigError("unexpected csv column '" + header[base.size() + i] + "'");
    }
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = detail::split_csv_line(line, line_no);
    if (f.size() != header.size()) {
      throw ConfigError("csv line " + std::to_string(line_no) + ": expected " +
                        std::to_string(header.size()) + " fields, got " + std::to_string(f.size()));
    }
    ResultRow r;
    r.experiment_id = f[0];
    r.T = static_cast<std::size_t>(detail::parse_csv_number(f[1], line_no));
    r.comparator_id = f[2];
    r.regret = detail::parse_csv_number(f[3], line_no);
    r.cum_loss = detail::parse_csv_number(f[4], line_no);
    if (!f[5].empty()) r.sum_gh_sq = detail::parse_csv_number(f[5], line_no);
    if (!f[6].empty()) r.sum_gh_sq_minus_h_sq = detail::parse_csv_number(f[6], line_no);
    r.wallclock_ms = detail::parse_csv_number(f[7], line_no);
    for (std::size_t i = 0; i < table.bettor_columns; ++i) {
      const std::string& v = f[base.size() + i];
      if (!v.empty()) r.bettor_regrets.push_back(detail::parse_csv_number(v, line_no));
    }
    table.rows.push_back(std::move(r));
  }
  return table;
}

inline ResultTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  return read_csv(in);
}

// Reads a ledger dump written through RunOptions::ledger_out.
inline RegretLedger read_ledger_dump(std::istream& in) {
  RegretLedger ledger;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const Json j = Json::parse(line);
      ledger.record(Vector(j.at("w").get<std::vector<double>>()),
                    Vector(j.at("g").get<std::vector<double>>()));
    } catch (const Json::exception& e) {
      throw ConfigError("ledger dump line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return ledger;
}

// ---------------------------------------------------------------------------
// Growth exponent

/// Least-squares slope of log2(max(regret, 1)) against log2(T).
inline double fit_slope(std::span<const double> T, std::span<const double> regret) {
  if (T.size() != regret.size()) throw ConfigError("fit_slope: T and regret differ in length");
  if (T.size() < 4) {
    throw ConfigError("fit_slope needs at least 4 checkpoints, got " + std::to_string(T.size()));
  }
  const double n = static_cast<double>(T.size());
  double mx = 0.0, my = 0.0;
  std::vector<double> x(T.size()), y(T.size());
  for (std::size_t i = 0; i < T.size(); ++i) {
    if (!(T[i] > 0.0)) throw ConfigError("fit_slope: checkpoints must be positive");
    x[i] = std::log2(T[i]);
    y[i] = std::log2(std::max(regret[i], 1.0));
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw ConfigError("fit_slope: checkpoints must be distinct");
  return sxy / sxx;
}

/// Slope over the rows of one comparator. With an empty experiment id the
/// matching rows must all come from a single experiment. Checkpoints below
/// min_T are skipped.
inline double fit_slope(const ResultTable& table, std::string_view comparator_id,
                        std::string_view experiment_id = {}, std::size_t min_T = 0) {
  std::vector<double> T, r;
  std::string seen;
  for (const ResultRow& row : table.rows) {
    if (row.comparator_id != comparator_id || row.T < min_T) continue;
    if (!experiment_id.empty() && row.experiment_id != experiment_id) continue;
    if (experiment_id.empty()) {
      if (seen.empty()) seen = row.experiment_id;
      else if (seen != row.experiment_id) {
        throw ConfigError("fit_slope: comparator '" + std::string(comparator_id) +
                          "' spans several experiments; name one");
      }
    }
    T.push_back(static_cast<double>(row.T));
    r.push_back(row.regret);
  }
  return fit_slope(T, r);
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepCell {
  std::size_t T;
  std::uint64_t seed;
  std::string id;
};

inline std::vector<SweepCell> sweep_cells(const ExperimentSpec& spec) {
  const std::vector<std::size_t> Ts = spec.sweep.T.empty() ? std::vector<std::size_t>{spec.stream.T}
                                                            : spec.sweep.T;
  const std::vector<std::uint64_t> seeds =
      spec.sweep.seeds.empty() ? std::vector<std::uint64_t>{spec.stream.seed} : spec.sweep.seeds;
  std::vector<SweepCell> cells;
  for (std::size_t T : Ts) {
    for (std::uint64_t s : seeds) {
      cells.push_back({T, s, spec.id + "/T=" + std::to_string(T) + "/seed=" + std::to_string(s)});
    }
  }
  return cells;
}

/// Runs every (T, seed) cell on a bounded worker pool. Each cell owns its
/// learner and stream; rows are merged in cell order, T-major.
inline ResultTable run_sweep(const ExperimentSpec& spec, std::size_t workers = 0) {
  const auto cells = sweep_cells(spec);
  std::vector<ResultTable> parts(cells.size());
  if (workers == 0) workers = spec.sweep.workers ? spec.sweep.workers : default_workers();
  parallel_for(cells.size(), workers, [&](std::size_t i) {
    ExperimentSpec cell = spec;
    cell.id = cells[i].id;
    cell.stream.T = cells[i].T;
    cell.stream.seed = cells[i].seed;
    parts[i] = run_experiment(cell);
  });
  ResultTable out;
  for (const auto& p : parts) out.append(p);
  return out;
}

}  // namespace regretforge::harness
