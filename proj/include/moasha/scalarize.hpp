// Copyright 2026 The moasha authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <unordered_map>
#include <utility>
#include <vector>

#include "moasha/ecdf.hpp"
#include "moasha/errors.hpp"
#include "moasha/pareto.hpp"
#include "moasha/rng.hpp"
#include "moasha/types.hpp"

namespace moasha {

enum class ScalarizationKind { kRandomWeights, kParEgo, kGolovin };

inline constexpr double kParEgoRho = 0.05;
inline constexpr int kDefaultWeightCount = 100;

// Stream salt separating weight-vector draws from other per-configuration
// randomness derived from the same seed.
inline constexpr std::uint64_t kWeightStreamSalt = 0x77656967687473ULL;

// A configuration's private set of weight vectors, each uniform on the
// simplex (non-negative entries summing to one).
struct WeightSet {
  std::vector<ObjectiveVector> vectors;
  ConfigId owner = 0;
};

// m i.i.d. uniform draws from the n-simplex via normalized standard
// exponentials. Vectors containing an exact zero are redrawn so the Golovin
// form never divides by zero.
inline WeightSet sample_weight_set(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 2) throw ValidationError("sample_weight_set: need at least two objectives");
  if (m < 1) throw ValidationError("sample_weight_set: need at least one vector");
  auto rng = make_engine(seed);
  WeightSet ws;
  ws.vectors.reserve(m);
  while (ws.vectors.size() < m) {
    ObjectiveVector w(n);
    double total = 0.0;
    for (auto& v : w) {
      v = standard_exponential(rng);
      total += v;
    }
    if (!(total > 0.0)) continue;
    bool has_zero = false;
    for (auto& v : w) {
      v /= total;
      if (v == 0.0) has_zero = true;
    }
    if (has_zero) continue;
    ws.vectors.push_back(std::move(w));
  }
  return ws;
}

inline WeightSet weight_set_for(std::uint64_t experiment_seed, ConfigId id, std::size_t n,
                                std::size_t m) {
  auto ws = sample_weight_set(n, m, hash_combine(config_seed(experiment_seed, id),
                                                 kWeightStreamSalt));
  ws.owner = id;
  return ws;
}

// Collapses an objective vector to a scalar; smaller is better for every
// kind. RandomWeights is the plain inner product and ParEGO the augmented
// Chebyshev form. Golovin expects quantile-normalized objectives in [0, 1]:
// it is evaluated on the flipped values 1 - y (so that larger is better),
// and the result negated back into minimization orientation.
inline double scalarize(ScalarizationKind kind, const ObjectiveVector& y,
                        const ObjectiveVector& w, double rho = kParEgoRho) {
  if (y.size() != w.size()) throw DimensionMismatch("scalarize: weight/objective length mismatch");
  const std::size_t n = y.size();
  switch (kind) {
    case ScalarizationKind::kRandomWeights: {
      return std::inner_product(y.begin(), y.end(), w.begin(), 0.0);
    }
    case ScalarizationKind::kParEgo: {
      double cheb = -std::numeric_limits<double>::infinity();
      double dot = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        cheb = std::max(cheb, w[j] * y[j]);
        dot += w[j] * y[j];
      }
      return cheb + rho * dot;
    }
    case ScalarizationKind::kGolovin: {
      double s = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < n; ++j) {
        s = std::min(s, std::max(0.0, (1.0 - y[j]) / w[j]));
      }
      return -std::pow(s, static_cast<double>(n));
    }
  }
  return 0.0;
}

// Best scalarization a configuration achieves over its weight set; the
// per-candidate score used for ranking. Lower is better.
inline double scalarized_score(ScalarizationKind kind, const ObjectiveVector& y,
                               const WeightSet& weights, double rho = kParEgoRho) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& w : weights.vectors) {
    best = std::min(best, scalarize(kind, y, w, rho));
  }
  return best;
}

// Ranks candidates by their min-over-weights score, ascending; ties on
// config id. Weight sets are created lazily from each candidate's derived
// seed and cached. Golovin always sees pool-quantile-normalized objectives;
// RandomWeights and ParEGO operate on raw values unless `normalize` is set.
// The returned callable is stateful but not internally synchronized; the
// scheduler serializes selector calls.
inline Selector scalarized_selector(ScalarizationKind kind, std::uint64_t experiment_seed,
                                    std::size_t weight_count = kDefaultWeightCount,
                                    bool normalize = false, double rho = kParEgoRho) {
  struct State {
    std::unordered_map<ConfigId, WeightSet> weights;
    // Raw scores depend only on (id, y); cached as (y, score) pairs per id.
    std::unordered_map<ConfigId, std::vector<std::pair<ObjectiveVector, double>>> scores;
  };
  auto state = std::make_shared<State>();
  const bool pool_normalized = normalize || kind == ScalarizationKind::kGolovin;

  return [=](const std::vector<Candidate>& pool) -> Ranking {
    Ranking ranking;
    if (pool.empty()) return ranking;
    const auto points = detail::pool_points(pool, pool_normalized);
    const std::size_t n = points.front().size();

    const auto weight_set = [&](ConfigId id) -> const WeightSet& {
      auto it = state->weights.find(id);
      if (it == state->weights.end()) {
        it = state->weights.emplace(id, weight_set_for(experiment_seed, id, n, weight_count))
                 .first;
      }
      return it->second;
    };

    std::vector<double> score(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const ConfigId id = pool[i].id;
      if (!pool_normalized) {
        auto& cached = state->scores[id];
        auto hit = std::find_if(cached.begin(), cached.end(),
                                [&](const auto& e) { return e.first == points[i]; });
        if (hit != cached.end()) {
          score[i] = hit->second;
          continue;
        }
        score[i] = scalarized_score(kind, points[i], weight_set(id), rho);
        cached.emplace_back(points[i], score[i]);
      } else {
        // Normalized values shift as the pool grows; no caching.
        score[i] = scalarized_score(kind, points[i], weight_set(id), rho);
      }
    }

    std::vector<std::size_t> order(pool.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (score[a] != score[b]) return score[a] < score[b];
      return pool[a].id < pool[b].id;
    });
    ranking.reserve(pool.size());
    for (std::size_t i : order) ranking.push_back(pool[i].id);
    return ranking;
  };
}

}  // namespace moasha
