// Copyright 2026 The moasha authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <sstream>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "moasha/metrics.hpp"
#include "moasha/rng.hpp"
#include "oracles.hpp"

using namespace moasha;

namespace {

EvaluationRecord rec(ConfigId id, ObjectiveVector y, double t_end) {
  EvaluationRecord r;
  r.config_id = id;
  r.rung = 0;
  r.budget = 1.0;
  r.objectives = std::move(y);
  r.t_start = t_end > 0.5 ? t_end - 0.5 : 0.0;
  r.t_end = t_end;
  return r;
}

std::vector<EvaluationRecord> random_log(std::size_t count, std::uint64_t seed) {
  auto rng = make_engine(seed);
  std::vector<EvaluationRecord> log;
  double t = 0;
  for (std::size_t i = 0; i < count; ++i) {
    t += uniform01(rng) + 0.01;
    log.push_back(rec(i + 1, {uniform01(rng), uniform01(rng)}, t));
  }
  return log;
}

}  // namespace

TEST_CASE("ecdf normalization counts pool ranks") {
  EcdfNormalizer ecdf({{0.1, 0.3, 0.9}});
  REQUIRE_THAT(ecdf.normalize(0, 0.3), Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-12));
  REQUIRE(ecdf.normalize(0, 0.05) == 0.0);   // below every pooled value
  REQUIRE(ecdf.normalize(0, 0.9) == 1.0);    // equal to the pool maximum
  REQUIRE(ecdf.normalize(0, 2.0) == 1.0);
  REQUIRE_THROWS_AS(EcdfNormalizer(std::vector<std::vector<double>>{{}}), ValidationError);
}

TEST_CASE("ecdf output is invariant under strictly increasing transforms") {
  auto rng = make_engine(131);
  std::vector<double> pool;
  for (int i = 0; i < 50; ++i) pool.push_back(uniform_real(rng, 0.1, 5.0));
  std::vector<double> logged = pool;
  for (auto& v : logged) v = std::log(v);
  EcdfNormalizer raw({pool});
  EcdfNormalizer transformed({logged});
  for (int i = 0; i < 100; ++i) {
    const double q = uniform_real(rng, 0.1, 5.0);
    REQUIRE(raw.normalize(0, q) == transformed.normalize(0, std::log(q)));
  }
  // Monotone in the query.
  double prev = -1;
  for (double q = 0.0; q <= 5.0; q += 0.1) {
    const double v = raw.normalize(0, q);
    REQUIRE(v >= prev);
    prev = v;
  }
}

TEST_CASE("reference front of a single record is that record") {
  const std::vector<EvaluationRecord> log = {rec(1, {0.4, 0.6}, 1.0)};
  const auto front = accumulate_reference_front({log});
  REQUIRE(front.points.size() == 1);
  REQUIRE(front.points[0].objectives == ObjectiveVector{1.0, 1.0});  // sole pool value
  REQUIRE(front.reference == ObjectiveVector{1.0, 1.0});
}

TEST_CASE("a dominating record owns the reference front") {
  std::vector<EvaluationRecord> log;
  log.push_back(rec(1, {0.5, 0.5}, 1.0));
  log.push_back(rec(2, {0.9, 0.9}, 2.0));
  log.push_back(rec(3, {0.7, 0.8}, 3.0));
  const auto front = accumulate_reference_front({log});
  REQUIRE(front.points.size() == 1);
  REQUIRE(front.points[0].id == 1);
}

TEST_CASE("reference front equals the sorting oracle on pooled normalized data") {
  const auto log_a = random_log(60, 7);
  const auto log_b = random_log(40, 8);
  const auto ref = build_reference({log_a, log_b});

  std::vector<ObjectiveVector> normalized;
  for (const auto* log : {&log_a, &log_b}) {
    for (const auto& r : *log) normalized.push_back(ref.normalizer(r.objectives));
  }
  const auto oracle_front = oracles::peel_fronts(normalized).front();
  REQUIRE(ref.front.points.size() == oracle_front.size());
  REQUIRE(ref.front_hv > 0.0);
}

TEST_CASE("anytime series replays the log monotonically") {
  const auto log = random_log(200, 11);
  const auto ref = build_reference({log});
  const auto series = anytime_hypervolume(log, ref);
  REQUIRE_FALSE(series.empty());
  for (std::size_t i = 1; i < series.size(); ++i) {
    REQUIRE(series[i].t > series[i - 1].t);
    REQUIRE(series[i].hv >= series[i - 1].hv);
    REQUIRE(series[i].hv_diff <= series[i - 1].hv_diff);
  }
  for (const auto& p : series) {
    REQUIRE(p.hv_diff >= -1e-12);
    REQUIRE_THAT(p.hv + p.hv_diff, Catch::Matchers::WithinAbs(ref.front_hv, 1e-12));
  }
  // End state equals the direct front computation.
  REQUIRE_THAT(series.back().hv, Catch::Matchers::WithinAbs(ref.front_hv, 1e-12));
  REQUIRE_THAT(series.back().hv,
               Catch::Matchers::WithinAbs(hypervolume(normalized_front(log, ref.normalizer)),
                                          1e-12));
}

TEST_CASE("a single-record log yields one series point") {
  const std::vector<EvaluationRecord> log = {rec(1, {0.4, 0.6}, 2.0)};
  const auto ref = build_reference({log});
  const auto series = anytime_hypervolume(log, ref);
  REQUIRE(series.size() == 1);
  // The only record normalizes to the pool maximum (1,1): an empty box.
  REQUIRE(series[0].hv == 0.0);
  REQUIRE(series[0].t == 2.0);
}

TEST_CASE("dominated records leave the hypervolume unchanged") {
  std::vector<EvaluationRecord> log;
  log.push_back(rec(1, {0.2, 0.2}, 1.0));
  log.push_back(rec(2, {0.8, 0.8}, 2.0));  // dominated
  log.push_back(rec(3, {0.9, 0.9}, 3.0));  // dominated
  const auto ref = build_reference({log});
  const auto series = anytime_hypervolume(log, ref);
  REQUIRE(series.size() == 3);
  REQUIRE(series[0].hv == series[1].hv);
  REQUIRE(series[1].hv == series[2].hv);
}

TEST_CASE("records sharing an end time collapse into one series point") {
  std::vector<EvaluationRecord> log;
  log.push_back(rec(1, {0.9, 0.2}, 1.0));
  log.push_back(rec(2, {0.2, 0.9}, 1.0));
  log.push_back(rec(3, {0.5, 0.5}, 2.0));
  const auto ref = build_reference({log});
  const auto series = anytime_hypervolume(log, ref);
  REQUIRE(series.size() == 2);
  REQUIRE(series[0].t == 1.0);
  REQUIRE(series[1].t == 2.0);
}

TEST_CASE("metric series against a pooled reference keeps a non-negative gap") {
  const auto log_a = random_log(80, 21);
  const auto log_b = random_log(80, 22);
  const auto ref = build_reference({log_a, log_b});
  for (const auto* log : {&log_a, &log_b}) {
    for (const auto& p : anytime_hypervolume(*log, ref)) {
      REQUIRE(p.hv_diff >= -1e-12);
    }
  }
}

TEST_CASE("csv output is stable and round-trip precise") {
  MetricSeries series = {{1.0, 1.0 / 3.0, 0.1}, {2.5, 0.5, 0.0}};
  std::stringstream a, b;
  save_metrics_csv(series, a);
  save_metrics_csv(series, b);
  REQUIRE(a.str() == b.str());
  REQUIRE(a.str().starts_with("t,hv,hv_diff\n"));

  const double v = 1.0 / 3.0;
  REQUIRE(std::stod(format_double(v)) == v);
  REQUIRE(format_double(0.5) == "0.5");
}

TEST_CASE("front csv rows are deterministic and normalized") {
  const auto log = random_log(50, 31);
  const auto ref = build_reference({log});
  std::stringstream a, b;
  save_front_csv(ref.front, a);
  save_front_csv(ref.front, b);
  REQUIRE(a.str() == b.str());
  for (const auto& p : ref.front.points) {
    for (double v : p.objectives) {
      REQUIRE(v > 0.0);
      REQUIRE(v <= 1.0);
    }
  }
}
