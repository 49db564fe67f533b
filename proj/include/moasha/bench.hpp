// Copyright 2026 The moasha authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "moasha/errors.hpp"
#include "moasha/pareto.hpp"
#include "moasha/rng.hpp"
#include "moasha/search_space.hpp"
#include "moasha/types.hpp"

namespace moasha {

inline constexpr std::uint64_t kDurationStreamSalt = 0x6475726174696fULL;
inline constexpr std::uint64_t kNoiseStreamSalt = 0x6e6f697365ULL;

// Per-configuration evaluation speed, uniform in [0.5, 2.0]. Heterogeneous
// durations are what give the asynchronous scheduler something to exploit.
inline double duration_multiplier(std::uint64_t config_seed) {
  const auto bits = mix64(hash_combine(config_seed, kDurationStreamSalt));
  const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
  return 0.5 + 1.5 * u;
}

// A multi-fidelity benchmark: objectives as a function of (configuration,
// budget), plus the simulated duration of that evaluation. Implementations
// are immutable after construction and evaluate is pure, so benchmarks are
// safe to share across worker threads.
class Benchmark {
 public:
  virtual ~Benchmark() = default;
  virtual const SearchSpace& space() const = 0;
  virtual std::size_t objective_count() const = 0;
  virtual double max_budget() const = 0;
  virtual Evaluation evaluate(const Configuration& config, double budget) const = 0;
  virtual FrontApproximation true_front() const = 0;
};

// ---------------------------------------------------------------------------
// Tabular benchmark: precomputed per-budget objective curves per
// configuration index, in the style of tabular NAS datasets.
// ---------------------------------------------------------------------------

struct TabularEntry {
  // curves[j] holds objective j at budgets 1..R; a length-1 curve means the
  // objective is budget-independent (e.g. prediction time).
  std::vector<std::vector<double>> curves;
  double duration_scale = 1.0;
};

class TabularBenchmark final : public Benchmark {
 public:
  TabularBenchmark(std::vector<TabularEntry> entries, int max_budget)
      : entries_(std::move(entries)), max_budget_(max_budget) {
    if (entries_.empty()) throw ValidationError("tabular benchmark: no configurations");
    if (max_budget_ < 1) throw ValidationError("tabular benchmark: max budget must be >= 1");
    n_ = entries_.front().curves.size();
    if (n_ < 2) throw ValidationError("tabular benchmark: need at least two objectives");
    for (const auto& e : entries_) {
      if (e.curves.size() != n_) {
        throw ValidationError("tabular benchmark: inconsistent objective counts");
      }
      for (const auto& curve : e.curves) {
        if (curve.size() != 1 && curve.size() != static_cast<std::size_t>(max_budget_)) {
          throw ValidationError("tabular benchmark: curve must cover budgets 1..R (or be constant)");
        }
      }
    }
    space_.dimensions.push_back(Dimension{
        "index", IntegerDomain{0, static_cast<std::int64_t>(entries_.size()) - 1,
                               Scaling::kLinear}});
  }

  const SearchSpace& space() const override { return space_; }
  std::size_t objective_count() const override { return n_; }
  double max_budget() const override { return static_cast<double>(max_budget_); }
  std::size_t config_count() const { return entries_.size(); }
  const TabularEntry& entry(std::size_t i) const { return entries_.at(i); }

  Evaluation evaluate(const Configuration& config, double budget) const override {
    const std::size_t index = index_of(config);
    const auto b = static_cast<std::int64_t>(std::llround(budget));
    if (b < 1 || b > max_budget_) {
      throw LookupError("tabular benchmark: budget outside 1..R");
    }
    const auto& entry = entries_[index];
    Evaluation ev;
    ev.objectives.reserve(n_);
    for (const auto& curve : entry.curves) {
      ev.objectives.push_back(curve.size() == 1 ? curve[0]
                                                : curve[static_cast<std::size_t>(b - 1)]);
    }
    ev.duration = budget * entry.duration_scale;
    return ev;
  }

  ObjectiveVector objectives_at(std::size_t index, int budget) const {
    const auto& entry = entries_.at(index);
    ObjectiveVector y;
    y.reserve(n_);
    for (const auto& curve : entry.curves) {
      y.push_back(curve.size() == 1 ? curve[0] : curve[static_cast<std::size_t>(budget - 1)]);
    }
    return y;
  }

  // Exhaustive scan of the full-budget table.
  FrontApproximation true_front() const override {
    std::vector<FrontPoint> points;
    points.reserve(entries_.size());
    ObjectiveVector worst(n_, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      FrontPoint p{static_cast<ConfigId>(i), objectives_at(i, max_budget_)};
      for (std::size_t j = 0; j < n_; ++j) worst[j] = std::max(worst[j], p.objectives[j]);
      points.push_back(std::move(p));
    }
    return make_front(std::move(points), std::move(worst));
  }

 private:
  std::size_t index_of(const Configuration& config) const {
    if (config.params.size() != 1) {
      throw LookupError("tabular benchmark: configuration must carry a single index parameter");
    }
    const auto* idx = std::get_if<std::int64_t>(&config.params[0]);
    if (idx == nullptr || *idx < 0 || *idx >= static_cast<std::int64_t>(entries_.size())) {
      throw LookupError("tabular benchmark: unknown configuration index");
    }
    return static_cast<std::size_t>(*idx);
  }

  std::vector<TabularEntry> entries_;
  int max_budget_;
  std::size_t n_ = 0;
  SearchSpace space_;
};

// Synthetic learning-curve table: per configuration an exponentially
// saturating error curve e(r) = e_inf + (e0 - e_inf) * exp(-lambda * r) plus
// budget-independent cost objectives anti-correlated with the final error
// (accurate models tend to be slower).
inline TabularBenchmark generate_tabular(std::size_t config_count, std::uint64_t seed,
                                         std::size_t objectives, int max_budget) {
  if (config_count < 2) throw ValidationError("generate_tabular: need at least two configurations");
  if (objectives < 2) throw ValidationError("generate_tabular: need at least two objectives");
  std::vector<TabularEntry> entries;
  entries.reserve(config_count);
  for (std::size_t i = 0; i < config_count; ++i) {
    auto rng = make_engine(hash_combine(seed, i));
    const double e_inf = uniform_real(rng, 0.02, 0.6);
    const double e0 = e_inf + uniform_real(rng, 0.15, 0.4);
    const double lambda = std::exp(uniform_real(rng, std::log(0.02), std::log(0.5)));
    TabularEntry entry;
    entry.curves.resize(objectives);
    auto& error_curve = entry.curves[0];
    error_curve.resize(static_cast<std::size_t>(max_budget));
    for (int r = 1; r <= max_budget; ++r) {
      error_curve[static_cast<std::size_t>(r - 1)] = e_inf + (e0 - e_inf) * std::exp(-lambda * r);
    }
    for (std::size_t j = 1; j < objectives; ++j) {
      entry.curves[j] = {(0.7 - e_inf) * uniform_real(rng, 0.6, 1.0) + 0.02};
    }
    entry.duration_scale = uniform_real(rng, 0.5, 2.0);
    entries.push_back(std::move(entry));
  }
  return TabularBenchmark(std::move(entries), max_budget);
}

// One configuration per line so large tables stream; external tabular
// exports can be converted to the same layout.
inline void save_tabular(const TabularBenchmark& bench, std::ostream& out) {
  for (std::size_t i = 0; i < bench.config_count(); ++i) {
    const auto& e = bench.entry(i);
    nlohmann::ordered_json j;
    j["index"] = i;
    j["duration"] = e.duration_scale;
    j["curves"] = e.curves;
    out << j.dump() << '\n';
  }
}

inline void save_tabular(const TabularBenchmark& bench, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open benchmark file for writing: " + path);
  save_tabular(bench, out);
}

inline TabularBenchmark load_tabular(std::istream& in, int max_budget) {
  std::vector<std::pair<std::size_t, TabularEntry>> indexed;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    TabularEntry entry;
    entry.duration_scale = j.at("duration").get<double>();
    entry.curves = j.at("curves").get<std::vector<std::vector<double>>>();
    indexed.emplace_back(j.at("index").get<std::size_t>(), std::move(entry));
  }
  std::vector<TabularEntry> entries(indexed.size());
  std::vector<bool> seen(indexed.size(), false);
  for (auto& [index, entry] : indexed) {
    if (index >= entries.size() || seen[index]) {
      throw ValidationError("tabular benchmark file: duplicate or out-of-range index");
    }
    seen[index] = true;
    entries[index] = std::move(entry);
  }
  return TabularBenchmark(std::move(entries), max_budget);
}

inline TabularBenchmark load_tabular(const std::string& path, int max_budget) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open benchmark file: " + path);
  return load_tabular(in, max_budget);
}

// ---------------------------------------------------------------------------
// Analytic two-objective benchmarks with a known Pareto front.
// ---------------------------------------------------------------------------

enum class FrontGeometry { kConcave, kConvex };

// ZDT-style pair over x in [0,1]^d:
//   y1 = x1,   y2 = g * (1 - (x1/g)^2)        (concave front, g = 1 at optimum)
//   y2 = g * (1 - sqrt(x1/g))                 (convex front)
// with g(x) = 1 + 9 * mean(x2..xd). Partial fidelity adds one-sided
// half-normal noise of scale sigma/sqrt(budget), so low budgets look
// pessimistic and evaluations approach the true surface from above.
//
// The trade-off dimension x1 is sampled uniformly; the distance dimensions
// x2..xd are log-scaled (as tuning parameters spanning magnitudes usually
// are), which keeps the near-front region reachable by random sampling.
class AnalyticBenchmark final : public Benchmark {
 public:
  AnalyticBenchmark(FrontGeometry geometry, std::size_t dim, double sigma, std::uint64_t seed,
                    double max_budget)
      : geometry_(geometry), dim_(dim), sigma_(sigma), seed_(seed), max_budget_(max_budget) {
    if (dim_ < 2) throw ValidationError("analytic benchmark: input dimension must be >= 2");
    if (sigma_ < 0.0) throw ValidationError("analytic benchmark: sigma must be >= 0");
    if (!(max_budget_ >= 1.0)) throw ValidationError("analytic benchmark: max budget must be >= 1");
    space_.dimensions.push_back(Dimension{"x0", RealDomain{0.0, 1.0, Scaling::kLinear}});
    for (std::size_t i = 1; i < dim_; ++i) {
      space_.dimensions.push_back(
          Dimension{"x" + std::to_string(i), RealDomain{1e-4, 1.0, Scaling::kLogarithmic}});
    }
  }

  const SearchSpace& space() const override { return space_; }
  std::size_t objective_count() const override { return 2; }
  double max_budget() const override { return max_budget_; }
  FrontGeometry geometry() const { return geometry_; }

  Evaluation evaluate(const Configuration& config, double budget) const override {
    if (!(budget >= 1.0) || budget > max_budget_ * (1.0 + 1e-12)) {
      throw LookupError("analytic benchmark: budget outside 1..R");
    }
    if (config.params.size() != dim_) {
      throw LookupError("analytic benchmark: wrong parameter count");
    }
    std::vector<double> x(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      const auto* v = std::get_if<double>(&config.params[i]);
      if (v == nullptr) throw LookupError("analytic benchmark: parameters must be real");
      x[i] = *v;
    }
    double tail = 0.0;
    for (std::size_t i = 1; i < dim_; ++i) tail += x[i];
    const double g = 1.0 + 9.0 * tail / static_cast<double>(dim_ - 1);
    const double ratio = x[0] / g;
    const double y2 = geometry_ == FrontGeometry::kConcave ? g * (1.0 - ratio * ratio)
                                                           : g * (1.0 - std::sqrt(ratio));
    Evaluation ev;
    ev.objectives = {x[0], y2};
    if (sigma_ > 0.0) {
      auto rng = make_engine(hash_combine(hash_combine(seed_, config.seed),
                                          hash_combine(kNoiseStreamSalt,
                                                       std::bit_cast<std::uint64_t>(budget))));
      const double scale = sigma_ / std::sqrt(budget);
      ev.objectives[0] += scale * std::abs(standard_normal(rng));
      ev.objectives[1] += scale * std::abs(standard_normal(rng));
    }
    ev.duration = budget * duration_multiplier(config.seed);
    return ev;
  }

  double front_height(double y1) const {
    return geometry_ == FrontGeometry::kConcave ? 1.0 - y1 * y1 : 1.0 - std::sqrt(y1);
  }

  // Closed-form front sampled on a dense grid.
  FrontApproximation true_front(std::size_t grid) const {
    std::vector<FrontPoint> points;
    points.reserve(grid);
    for (std::size_t i = 0; i < grid; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(grid - 1);
      points.push_back(FrontPoint{static_cast<ConfigId>(i), {t, front_height(t)}});
    }
    return make_front(std::move(points), {1.0, 1.0});
  }

  FrontApproximation true_front() const override { return true_front(512); }

 private:
  FrontGeometry geometry_;
  std::size_t dim_;
  double sigma_;
  std::uint64_t seed_;
  double max_budget_;
  SearchSpace space_;
};

}  // namespace moasha
