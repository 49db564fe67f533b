// Copyright 2026 The moasha authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "moasha/bench.hpp"
#include "moasha/scalarize.hpp"
#include "oracles.hpp"

using namespace moasha;

namespace {

Configuration index_config(std::int64_t index) {
  Configuration cfg;
  cfg.id = static_cast<ConfigId>(index + 1);
  cfg.params = {index};
  cfg.seed = config_seed(0, cfg.id);
  return cfg;
}

Configuration analytic_config(std::vector<double> x, std::uint64_t seed) {
  Configuration cfg;
  cfg.id = seed;
  for (double v : x) cfg.params.emplace_back(v);
  cfg.seed = seed;
  return cfg;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double cov = 0, va = 0, vb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cov += (a[i] - ma) * (b[i] - mb);
    va += (a[i] - ma) * (a[i] - ma);
    vb += (b[i] - mb) * (b[i] - mb);
  }
  return cov / std::sqrt(va * vb);
}

}  // namespace

TEST_CASE("generated learning curves decay monotonically and flatten") {
  const auto bench = generate_tabular(200, 5, 2, 50);
  for (std::size_t i = 0; i < bench.config_count(); ++i) {
    const auto& curve = bench.entry(i).curves[0];
    REQUIRE(curve.size() == 50);
    for (std::size_t r = 1; r < curve.size(); ++r) {
      REQUIRE(curve[r] <= curve[r - 1]);
    }
    // Exponential saturation: the tail drop is no larger than the first.
    REQUIRE(curve[48] - curve[49] <= curve[0] - curve[1] + 1e-15);
    REQUIRE(bench.entry(i).duration_scale >= 0.5);
    REQUIRE(bench.entry(i).duration_scale <= 2.0);
  }
}

TEST_CASE("accurate configurations tend to be slower") {
  const auto bench = generate_tabular(10000, 9, 2, 200);
  std::vector<double> final_error, cost;
  for (std::size_t i = 0; i < bench.config_count(); ++i) {
    final_error.push_back(bench.entry(i).curves[0].back());
    cost.push_back(bench.entry(i).curves[1][0]);
  }
  REQUIRE(pearson(final_error, cost) < -0.5);
}

TEST_CASE("tabular evaluation is a pure lookup") {
  const auto bench = generate_tabular(50, 13, 3, 27);
  const auto cfg = index_config(17);
  const auto a = bench.evaluate(cfg, 9);
  const auto b = bench.evaluate(cfg, 9);
  REQUIRE(a.objectives == b.objectives);
  REQUIRE(a.duration == b.duration);
  REQUIRE(a.objectives.size() == 3);
  REQUIRE(a.duration == 9 * bench.entry(17).duration_scale);

  const auto full = bench.evaluate(cfg, 27);
  const auto cheap = bench.evaluate(cfg, 1);
  REQUIRE(full.objectives[0] <= cheap.objectives[0]);
  REQUIRE(full.objectives[1] == cheap.objectives[1]);  // cost ignores budget
}

TEST_CASE("tabular lookups reject unknown configurations and budgets") {
  const auto bench = generate_tabular(10, 1, 2, 27);
  REQUIRE_THROWS_AS(bench.evaluate(index_config(10), 1), LookupError);
  REQUIRE_THROWS_AS(bench.evaluate(index_config(-1), 1), LookupError);
  REQUIRE_THROWS_AS(bench.evaluate(index_config(0), 0), LookupError);
  REQUIRE_THROWS_AS(bench.evaluate(index_config(0), 28), LookupError);
  Configuration wrong;
  wrong.params = {0.5};
  REQUIRE_THROWS_AS(bench.evaluate(wrong, 1), LookupError);
}

TEST_CASE("tabular benchmarks round-trip through their file format") {
  const auto bench = generate_tabular(20, 21, 2, 10);
  std::stringstream buffer;
  save_tabular(bench, buffer);
  const auto loaded = load_tabular(buffer, 10);
  REQUIRE(loaded.config_count() == bench.config_count());
  for (std::int64_t i = 0; i < 20; ++i) {
    for (int r = 1; r <= 10; ++r) {
      const auto a = bench.evaluate(index_config(i), r);
      const auto b = loaded.evaluate(index_config(i), r);
      REQUIRE(a.objectives == b.objectives);
      REQUIRE(a.duration == b.duration);
    }
  }
}

TEST_CASE("single-configuration tables have single-point fronts") {
  TabularEntry entry;
  entry.curves = {{0.5, 0.4, 0.3}, {0.7}};
  std::vector<TabularEntry> entries = {entry};
  const TabularBenchmark bench(std::move(entries), 3);
  const auto front = bench.true_front();
  REQUIRE(front.points.size() == 1);
  REQUIRE(front.points[0].objectives == ObjectiveVector{0.3, 0.7});
}

TEST_CASE("exhaustive tabular front equals the sorting oracle's first front") {
  const auto bench = generate_tabular(500, 33, 2, 27);
  std::vector<ObjectiveVector> full;
  for (std::size_t i = 0; i < bench.config_count(); ++i) {
    full.push_back(bench.objectives_at(i, 27));
  }
  const auto oracle_front = oracles::peel_fronts(full).front();
  const auto front = bench.true_front();
  REQUIRE(front.points.size() == oracle_front.size());
  for (const auto& p : front.points) {
    REQUIRE(std::find(oracle_front.begin(), oracle_front.end(),
                      static_cast<std::size_t>(p.id)) != oracle_front.end());
  }
}

TEST_CASE("analytic evaluations are deterministic and noise shrinks with budget") {
  const AnalyticBenchmark bench(FrontGeometry::kConcave, 6, 0.2, 3, 81);
  const auto cfg = analytic_config({0.4, 0.1, 0.2, 0.3, 0.4, 0.5}, 99);
  const auto a = bench.evaluate(cfg, 3);
  const auto b = bench.evaluate(cfg, 3);
  REQUIRE(a.objectives == b.objectives);
  REQUIRE(a.duration == b.duration);

  // One-sided noise decays with budget on average.
  const AnalyticBenchmark clean(FrontGeometry::kConcave, 6, 0.0, 3, 81);
  auto rng = make_engine(55);
  double low_gap = 0, high_gap = 0;
  for (int i = 0; i < 200; ++i) {
    const auto c = analytic_config({uniform01(rng), uniform01(rng), uniform01(rng),
                                    uniform01(rng), uniform01(rng), uniform01(rng)},
                                   rng());
    const auto noiseless = clean.evaluate(c, 81).objectives;
    const double lo = bench.evaluate(c, 1).objectives[0] - noiseless[0];
    const double hi = bench.evaluate(c, 81).objectives[0] - noiseless[0];
    REQUIRE(lo >= 0.0);
    REQUIRE(hi >= 0.0);
    low_gap += lo;
    high_gap += hi;
  }
  REQUIRE(low_gap > high_gap);
  REQUIRE(clean.evaluate(cfg, 81).objectives[0] == 0.4);
}

TEST_CASE("concave evaluations never fall below the front surface") {
  const AnalyticBenchmark bench(FrontGeometry::kConcave, 4, 0.1, 7, 81);
  auto rng = make_engine(77);
  for (int i = 0; i < 500; ++i) {
    const auto cfg = analytic_config(
        {uniform01(rng), uniform01(rng), uniform01(rng), uniform01(rng)}, rng());
    const auto y = bench.evaluate(cfg, 81).objectives;
    REQUIRE(y[1] >= bench.front_height(y[0]) - 1e-9);
  }
}

TEST_CASE("true fronts bend the expected way relative to their chord") {
  const AnalyticBenchmark concave(FrontGeometry::kConcave, 4, 0.0, 1, 81);
  const AnalyticBenchmark convex(FrontGeometry::kConvex, 4, 0.0, 1, 81);
  // Chord between the extremes (0,1) and (1,0) is y2 = 1 - y1.
  bool above = false;
  for (const auto& p : concave.true_front().points) {
    const double t = p.objectives[0];
    if (t > 0.2 && t < 0.8) {
      REQUIRE(p.objectives[1] >= 1.0 - t);
      above = true;
    }
  }
  REQUIRE(above);
  for (const auto& p : convex.true_front().points) {
    const double t = p.objectives[0];
    if (t > 0.2 && t < 0.8) REQUIRE(p.objectives[1] <= 1.0 - t);
  }
}

TEST_CASE("linear scalarizations only reach the concave front's extremes") {
  const AnalyticBenchmark bench(FrontGeometry::kConcave, 4, 0.0, 1, 81);
  const auto front = bench.true_front(1024);
  auto rng = make_engine(91);
  for (int trial = 0; trial < 200; ++trial) {
    const auto w = sample_weight_set(2, 1, rng()).vectors[0];
    std::size_t best = 0;
    double best_v = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < front.points.size(); ++i) {
      const auto& y = front.points[i].objectives;
      const double v = y[0] * w[0] + y[1] * w[1];
      if (v < best_v) {
        best_v = v;
        best = i;
      }
    }
    const double t = front.points[best].objectives[0];
    REQUIRE((t <= 1e-9 || t >= 1.0 - 1e-9));
  }

  // The convex counterpart is reachable in the interior.
  const AnalyticBenchmark cvx(FrontGeometry::kConvex, 4, 0.0, 1, 81);
  const auto cvx_front = cvx.true_front(1024);
  bool interior_min = false;
  for (int trial = 0; trial < 200 && !interior_min; ++trial) {
    const auto w = sample_weight_set(2, 1, rng()).vectors[0];
    std::size_t best = 0;
    double best_v = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cvx_front.points.size(); ++i) {
      const auto& y = cvx_front.points[i].objectives;
      const double v = y[0] * w[0] + y[1] * w[1];
      if (v < best_v) {
        best_v = v;
        best = i;
      }
    }
    const double t = cvx_front.points[best].objectives[0];
    interior_min = t > 0.05 && t < 0.95;
  }
  REQUIRE(interior_min);
}
