// Copyright 2026 The moasha authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "moasha/bench.hpp"
#include "moasha/errors.hpp"
#include "moasha/evaluation_log.hpp"
#include "moasha/metrics.hpp"
#include "moasha/scalarize.hpp"
#include "moasha/scheduler.hpp"
#include "moasha/simulation.hpp"
#include "moasha/types.hpp"

namespace moasha {

enum class SchedulerKind { kRandomSearch, kAsha, kSyncHalving };
enum class SelectorKind { kRandomWeights, kParEgo, kGolovin, kNsga2, kEpsNet };
enum class ClockKind { kSimulated, kWall };

struct MethodSpec {
  SchedulerKind scheduler = SchedulerKind::kAsha;
  SelectorKind selector = SelectorKind::kEpsNet;  // ignored for random search

  friend bool operator==(const MethodSpec&, const MethodSpec&) = default;
};

struct MethodEntry {
  const char* name;   // display/config spelling
  const char* token;  // lower-case spelling used in output paths
  MethodSpec spec;
};

inline const std::vector<MethodEntry>& method_table() {
  using S = SchedulerKind;
  using L = SelectorKind;
  static const std::vector<MethodEntry> table = {
      {"RS", "rs", {S::kRandomSearch, L::kEpsNet}},
      {"ASHA+RW", "asha-rw", {S::kAsha, L::kRandomWeights}},
      {"ASHA+ParEGO", "asha-parego", {S::kAsha, L::kParEgo}},
      {"ASHA+Golovin", "asha-golovin", {S::kAsha, L::kGolovin}},
      {"ASHA+NSGA-II", "asha-nsga-ii", {S::kAsha, L::kNsga2}},
      {"ASHA+EpsNet", "asha-eps-net", {S::kAsha, L::kEpsNet}},
      {"SyncSH+RW", "sync-rw", {S::kSyncHalving, L::kRandomWeights}},
      {"SyncSH+ParEGO", "sync-parego", {S::kSyncHalving, L::kParEgo}},
      {"SyncSH+Golovin", "sync-golovin", {S::kSyncHalving, L::kGolovin}},
      {"SyncSH+NSGA-II", "sync-nsga-ii", {S::kSyncHalving, L::kNsga2}},
      {"SyncSH+EpsNet", "sync-eps-net", {S::kSyncHalving, L::kEpsNet}},
  };
  return table;
}

inline MethodSpec parse_method(const std::string& name) {
  for (const auto& entry : method_table()) {
    if (name == entry.name || name == entry.token) return entry.spec;
  }
  throw ConfigError("unknown method: " + name);
}

inline const MethodEntry& method_entry(const MethodSpec& spec) {
  for (const auto& entry : method_table()) {
    if (entry.spec == spec || (spec.scheduler == SchedulerKind::kRandomSearch &&
                               entry.spec.scheduler == SchedulerKind::kRandomSearch)) {
      return entry;
    }
  }
  return method_table().front();
}

inline std::string method_name(const MethodSpec& spec) { return method_entry(spec).name; }
inline std::string method_token(const MethodSpec& spec) { return method_entry(spec).token; }

enum class BenchmarkKind { kTabular, kConcave, kConvex, kFile };

struct BenchmarkSpec {
  BenchmarkKind kind = BenchmarkKind::kTabular;
  std::size_t config_count = 1000;  // tabular
  std::size_t objectives = 2;       // tabular
  std::size_t dim = 6;              // analytic input dimension
  double sigma = 0.1;               // analytic fidelity noise scale
  std::uint64_t seed = 0;           // benchmark generator seed
  std::string path;                 // file-backed tabular
};

struct ExperimentConfig {
  BenchmarkSpec benchmark;
  MethodSpec method;
  int workers = 1;
  double time_budget = 0.0;
  std::uint64_t seed = 0;
  int eta = 3;
  double r0 = 1.0;
  double R = 1.0;
  int s = 0;
  std::size_t m = kDefaultWeightCount;
  ClockKind clock = ClockKind::kSimulated;
  bool normalize_selector = false;
  double wall_delay_per_unit = 0.0;  // emulated evaluation cost in wall mode
};

inline void validate_config(const ExperimentConfig& cfg) {
  if (cfg.workers < 1) throw ConfigError("workers must be >= 1");
  if (!(cfg.time_budget > 0.0)) throw ConfigError("time_budget must be positive");
  if (cfg.eta < 2) throw ConfigError("eta must be >= 2");
  if (!(cfg.r0 > 0.0)) throw ConfigError("r0 must be positive");
  if (cfg.r0 > cfg.R) throw ConfigError("r0 must be <= R");
  if (cfg.s < 0) throw ConfigError("s must be >= 0");
  if (cfg.m < 1) throw ConfigError("m must be >= 1");
  if (cfg.benchmark.kind == BenchmarkKind::kFile && cfg.benchmark.path.empty()) {
    throw ConfigError("benchmark 'file' requires bench_path");
  }
  BudgetLadder ladder{cfg.eta, cfg.r0, cfg.R, cfg.s};
  ladder.validate();
}

// ---------------------------------------------------------------------------
// Flat key = value config files. Blank lines and '#' comments are skipped;
// unknown keys are rejected outright.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T out;
  in >> out;
  if (in.fail() || !in.eof()) throw ConfigError("config key '" + key + "': bad value '" + value + "'");
  return out;
}

inline bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("config key '" + key + "': expected true/false");
}

}  // namespace detail

inline ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  bool have_benchmark = false, have_method = false, have_budget = false, have_r = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key == "benchmark") {
      if (value == "tabular") cfg.benchmark.kind = BenchmarkKind::kTabular;
      else if (value == "concave") cfg.benchmark.kind = BenchmarkKind::kConcave;
      else if (value == "convex") cfg.benchmark.kind = BenchmarkKind::kConvex;
      else if (value == "file") cfg.benchmark.kind = BenchmarkKind::kFile;
      else throw ConfigError("config key 'benchmark': unknown kind '" + value + "'");
      have_benchmark = true;
    } else if (key == "bench_configs") {
      cfg.benchmark.config_count = detail::parse_number<std::size_t>(key, value);
    } else if (key == "bench_objectives") {
      cfg.benchmark.objectives = detail::parse_number<std::size_t>(key, value);
    } else if (key == "bench_dim") {
      cfg.benchmark.dim = detail::parse_number<std::size_t>(key, value);
    } else if (key == "bench_sigma") {
      cfg.benchmark.sigma = detail::parse_number<double>(key, value);
    } else if (key == "bench_seed") {
      cfg.benchmark.seed = detail::parse_number<std::uint64_t>(key, value);
    } else if (key == "bench_path") {
      cfg.benchmark.path = value;
    } else if (key == "method") {
      cfg.method = parse_method(value);
      have_method = true;
    } else if (key == "workers") {
      cfg.workers = detail::parse_number<int>(key, value);
    } else if (key == "time_budget") {
      cfg.time_budget = detail::parse_number<double>(key, value);
      have_budget = true;
    } else if (key == "seed") {
      cfg.seed = detail::parse_number<std::uint64_t>(key, value);
    } else if (key == "eta") {
      cfg.eta = detail::parse_number<int>(key, value);
    } else if (key == "r0") {
      cfg.r0 = detail::parse_number<double>(key, value);
    } else if (key == "R") {
      cfg.R = detail::parse_number<double>(key, value);
      have_r = true;
    } else if (key == "s") {
      cfg.s = detail::parse_number<int>(key, value);
    } else if (key == "m") {
      cfg.m = detail::parse_number<std::size_t>(key, value);
    } else if (key == "clock") {
      if (value == "simulated") cfg.clock = ClockKind::kSimulated;
      else if (value == "wall") cfg.clock = ClockKind::kWall;
      else throw ConfigError("config key 'clock': expected simulated|wall");
    } else if (key == "normalize_selector") {
      cfg.normalize_selector = detail::parse_bool(key, value);
    } else if (key == "wall_delay_per_unit") {
      cfg.wall_delay_per_unit = detail::parse_number<double>(key, value);
    } else {
      throw ConfigError("unknown config key: '" + key + "'");
    }
  }
  if (!have_benchmark) throw ConfigError("config is missing 'benchmark'");
  if (!have_method) throw ConfigError("config is missing 'method'");
  if (!have_budget) throw ConfigError("config is missing 'time_budget'");
  if (!have_r) throw ConfigError("config is missing 'R'");
  validate_config(cfg);
  return cfg;
}

inline ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_config(in);
}

// ---------------------------------------------------------------------------
// Assembling and running one experiment.
// ---------------------------------------------------------------------------

inline std::unique_ptr<Benchmark> build_benchmark(const BenchmarkSpec& spec, double max_budget) {
  switch (spec.kind) {
    case BenchmarkKind::kTabular:
      return std::make_unique<TabularBenchmark>(generate_tabular(
          spec.config_count, spec.seed, spec.objectives, static_cast<int>(max_budget)));
    case BenchmarkKind::kConcave:
      return std::make_unique<AnalyticBenchmark>(FrontGeometry::kConcave, spec.dim, spec.sigma,
                                                 spec.seed, max_budget);
    case BenchmarkKind::kConvex:
      return std::make_unique<AnalyticBenchmark>(FrontGeometry::kConvex, spec.dim, spec.sigma,
                                                 spec.seed, max_budget);
    case BenchmarkKind::kFile:
      return std::make_unique<TabularBenchmark>(
          load_tabular(spec.path, static_cast<int>(max_budget)));
  }
  throw ConfigError("unhandled benchmark kind");
}

inline Selector build_selector(const ExperimentConfig& cfg) {
  switch (cfg.method.selector) {
    case SelectorKind::kRandomWeights:
      return scalarized_selector(ScalarizationKind::kRandomWeights, cfg.seed, cfg.m,
                                 cfg.normalize_selector);
    case SelectorKind::kParEgo:
      return scalarized_selector(ScalarizationKind::kParEgo, cfg.seed, cfg.m,
                                 cfg.normalize_selector);
    case SelectorKind::kGolovin:
      return scalarized_selector(ScalarizationKind::kGolovin, cfg.seed, cfg.m,
                                 cfg.normalize_selector);
    case SelectorKind::kNsga2:
      return nsga2_selector();
    case SelectorKind::kEpsNet:
      return eps_net_selector(cfg.normalize_selector);
  }
  throw ConfigError("unhandled selector kind");
}

inline std::unique_ptr<Scheduler> build_scheduler(const ExperimentConfig& cfg,
                                                  const Benchmark& bench, EvaluationLog& log) {
  switch (cfg.method.scheduler) {
    case SchedulerKind::kRandomSearch:
      return std::make_unique<RandomSearchScheduler>(cfg.R, bench.space(), cfg.seed, log);
    case SchedulerKind::kAsha:
      return std::make_unique<AshaScheduler>(BudgetLadder{cfg.eta, cfg.r0, cfg.R, cfg.s},
                                             bench.space(), build_selector(cfg), cfg.seed, log);
    case SchedulerKind::kSyncHalving:
      return std::make_unique<SyncHalvingScheduler>(BudgetLadder{cfg.eta, cfg.r0, cfg.R, cfg.s},
                                                    bench.space(), build_selector(cfg), cfg.seed,
                                                    log);
  }
  throw ConfigError("unhandled scheduler kind");
}

struct ExperimentResult {
  std::vector<EvaluationRecord> records;
  MetricSeries metrics;
  FrontApproximation front;
  SimStats sim_stats;  // simulated-clock runs only
  std::size_t failures = 0;
};

// Builds the benchmark, scheduler and executor from the config, runs to the
// time budget, and computes the run's own metric series (pool and reference
// front from this log; cross-method comparisons pool logs via the metrics
// tooling instead).
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const auto bench = build_benchmark(cfg.benchmark, cfg.R);
  EvaluationLog log;
  const auto scheduler = build_scheduler(cfg, *bench, log);
  const EvalFn eval = [&bench](const Configuration& c, double budget) {
    return bench->evaluate(c, budget);
  };

  ExperimentResult result;
  if (cfg.clock == ClockKind::kSimulated) {
    SimOptions options;
    options.workers = cfg.workers;
    options.time_budget = cfg.time_budget;
    result.sim_stats = run_simulated(*scheduler, eval, options);
    result.failures = result.sim_stats.failures;
  } else {
    WallOptions options;
    options.workers = cfg.workers;
    options.time_budget = cfg.time_budget;
    options.delay_per_unit = cfg.wall_delay_per_unit;
    const auto stats = run_wall_clock(*scheduler, eval, options);
    result.failures = stats.failures;
  }

  result.records = log.snapshot();
  if (!result.records.empty()) {
    const auto ref = build_reference({result.records});
    result.metrics = anytime_hypervolume(result.records, ref);
    result.front = ref.front;
  }
  return result;
}

inline void write_outputs(const ExperimentResult& result, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const auto base = std::filesystem::path(dir);
  save_log(result.records, (base / "log.jsonl").string());
  save_metrics_csv(result.metrics, (base / "metrics.csv").string());
  save_front_csv(result.front, (base / "front.csv").string());
}

}  // namespace moasha
