// Copyright 2026 The moasha authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "moasha/ecdf.hpp"
#include "moasha/errors.hpp"
#include "moasha/types.hpp"

namespace moasha {

enum class Dominance { kStrict, kWeak, kNone };

// Minimization orientation: a dominates b when a is no worse anywhere.
// Strict additionally requires a genuine improvement in some coordinate;
// kWeak is returned for the all-equal / no-strict-improvement case.
inline Dominance dominance(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("dominance: objective vectors of different lengths");
  }
  bool any_less = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return Dominance::kNone;
    if (a[i] < b[i]) any_less = true;
  }
  return any_less ? Dominance::kStrict : Dominance::kWeak;
}

inline bool strictly_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  return dominance(a, b) == Dominance::kStrict;
}

inline bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  return dominance(a, b) != Dominance::kNone;
}

// Peels Pareto fronts off the point set: front 0 is the non-dominated subset,
// front i+1 the non-dominated subset of what remains. Returns index lists,
// ascending within each front. Uses domination counts so the whole sort is
// one O(m^2 n) pairwise pass.
inline std::vector<std::vector<std::size_t>> non_dominated_sort(
    const std::vector<ObjectiveVector>& points) {
  const std::size_t m = points.size();
  std::vector<std::vector<std::size_t>> fronts;
  if (m == 0) return fronts;

  std::vector<std::uint32_t> dominated_by(m, 0);
  std::vector<std::vector<std::uint32_t>> beats(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      bool i_le = true, j_le = true, i_lt = false, j_lt = false;
      const auto& a = points[i];
      const auto& b = points[j];
      if (a.size() != b.size()) {
        throw DimensionMismatch("non_dominated_sort: mixed objective counts");
      }
      for (std::size_t d = 0; d < a.size(); ++d) {
        if (a[d] < b[d]) {
          i_lt = true;
          j_le = false;
        } else if (b[d] < a[d]) {
          j_lt = true;
          i_le = false;
        }
      }
      if (i_le && i_lt) {
        beats[i].push_back(static_cast<std::uint32_t>(j));
        ++dominated_by[j];
      } else if (j_le && j_lt) {
        beats[j].push_back(static_cast<std::uint32_t>(i));
        ++dominated_by[i];
      }
    }
  }

  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < m; ++i) {
    if (dominated_by[i] == 0) current.push_back(i);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : current) {
      for (std::uint32_t j : beats[i]) {
        if (--dominated_by[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

// NSGA-II within-front diversity score for mutually non-dominated points.
// Boundary points per objective get +inf; interior points accumulate the
// normalized gap between their sorted neighbours. An objective that is
// constant across the front contributes nothing.
inline std::vector<double> crowding_distances(const std::vector<ObjectiveVector>& front) {
  const std::size_t m = front.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(m, 0.0);
  if (m <= 2) {
    std::fill(dist.begin(), dist.end(), kInf);
    return dist;
  }
  const std::size_t n = front.front().size();
  std::vector<std::size_t> order(m);
  for (std::size_t obj = 0; obj < n; ++obj) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return front[a][obj] < front[b][obj];
    });
    const double lo = front[order.front()][obj];
    const double hi = front[order.back()][obj];
    dist[order.front()] = kInf;
    dist[order.back()] = kInf;
    if (hi <= lo) continue;  // constant objective
    for (std::size_t k = 1; k + 1 < m; ++k) {
      const std::size_t i = order[k];
      if (dist[i] == kInf) continue;
      dist[i] += (front[order[k + 1]][obj] - front[order[k - 1]][obj]) / (hi - lo);
    }
  }
  return dist;
}

// ---------------------------------------------------------------------------
// Candidate selection. A selector maps a pool of evaluated candidates (in
// completion order) to a full ranking, best first. Ties break on config id.
// ---------------------------------------------------------------------------

struct Candidate {
  ConfigId id = 0;
  ObjectiveVector objectives;
};

using Ranking = std::vector<ConfigId>;
using Selector = std::function<Ranking(const std::vector<Candidate>&)>;

namespace detail {

inline std::vector<ObjectiveVector> pool_points(const std::vector<Candidate>& pool,
                                                bool normalize) {
  std::vector<ObjectiveVector> points;
  points.reserve(pool.size());
  for (const auto& c : pool) points.push_back(c.objectives);
  if (normalize && !points.empty()) {
    const auto ecdf = EcdfNormalizer::from_vectors(points);
    for (auto& p : points) p = ecdf(p);
  }
  return points;
}

inline double euclidean(const ObjectiveVector& a, const ObjectiveVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace detail

// Front index ascending, crowding distance descending within each front.
inline Ranking rank_nsga2(const std::vector<Candidate>& pool) {
  Ranking ranking;
  if (pool.empty()) return ranking;
  const auto points = detail::pool_points(pool, false);
  ranking.reserve(pool.size());
  for (const auto& front : non_dominated_sort(points)) {
    std::vector<ObjectiveVector> front_points;
    front_points.reserve(front.size());
    for (std::size_t i : front) front_points.push_back(points[i]);
    const auto dist = crowding_distances(front_points);

    std::vector<std::size_t> order(front.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (dist[a] != dist[b]) return dist[a] > dist[b];
      return pool[front[a]].id < pool[front[b]].id;
    });
    for (std::size_t k : order) ranking.push_back(pool[front[k]].id);
  }
  return ranking;
}

// Farthest-point ordering: fronts are consumed in order; the first candidate
// completed in the best front seeds the selection, and every subsequent pick
// maximizes its minimum distance in objective space to everything already
// selected. Distances are taken on raw objectives unless `normalize` remaps
// them to pooled quantiles first.
inline Ranking rank_eps_net(const std::vector<Candidate>& pool, bool normalize = false) {
  Ranking ranking;
  if (pool.empty()) return ranking;
  const auto points = detail::pool_points(pool, normalize);
  const auto fronts = non_dominated_sort(points);

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist_to_selected(points.size(), kInf);
  const auto select = [&](std::size_t idx) {
    ranking.push_back(pool[idx].id);
    for (std::size_t i = 0; i < points.size(); ++i) {
      dist_to_selected[i] =
          std::min(dist_to_selected[i], detail::euclidean(points[i], points[idx]));
    }
  };

  for (std::size_t f = 0; f < fronts.size(); ++f) {
    std::vector<std::size_t> remaining = fronts[f];
    if (f == 0) {
      // Pool order is completion order, and fronts keep ascending indices, so
      // the earliest-completed member of the best front is remaining[0].
      select(remaining.front());
      remaining.erase(remaining.begin());
    }
    while (!remaining.empty()) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < remaining.size(); ++k) {
        const double dk = dist_to_selected[remaining[k]];
        const double db = dist_to_selected[remaining[best]];
        if (dk > db || (dk == db && pool[remaining[k]].id < pool[remaining[best]].id)) {
          best = k;
        }
      }
      const std::size_t idx = remaining[best];
      remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
      select(idx);
    }
  }
  return ranking;
}

inline Selector nsga2_selector() {
  return [](const std::vector<Candidate>& pool) { return rank_nsga2(pool); };
}

inline Selector eps_net_selector(bool normalize = false) {
  return [normalize](const std::vector<Candidate>& pool) {
    return rank_eps_net(pool, normalize);
  };
}

// ---------------------------------------------------------------------------
// Pareto front approximations.
// ---------------------------------------------------------------------------

struct FrontPoint {
  ConfigId id = 0;
  ObjectiveVector objectives;
};

// A mutually non-dominated point set plus the reference point that bounds
// hypervolume computations. Points that fail to dominate the reference are
// kept but contribute no volume.
struct FrontApproximation {
  std::vector<FrontPoint> points;
  ObjectiveVector reference;
};

// Keeps the non-strictly-dominated subset, sorted by objectives (then id)
// for deterministic downstream output.
inline FrontApproximation make_front(std::vector<FrontPoint> candidates,
                                     ObjectiveVector reference) {
  FrontApproximation front;
  front.reference = std::move(reference);
  if (candidates.empty()) return front;
  std::vector<ObjectiveVector> points;
  points.reserve(candidates.size());
  for (const auto& c : candidates) points.push_back(c.objectives);
  const auto fronts = non_dominated_sort(points);
  for (std::size_t i : fronts.front()) front.points.push_back(std::move(candidates[i]));
  std::sort(front.points.begin(), front.points.end(),
            [](const FrontPoint& a, const FrontPoint& b) {
              if (a.objectives != b.objectives) return a.objectives < b.objectives;
              return a.id < b.id;
            });
  return front;
}

}  // namespace moasha
