// Copyright 2026 The moasha authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "moasha/errors.hpp"
#include "moasha/pareto.hpp"
#include "moasha/rng.hpp"
#include "moasha/types.hpp"

namespace moasha {

namespace detail {

// Volume (over the first `dim` coordinates) of the region weakly dominated by
// `points` and bounded above by `ref`. Recursive dimension sweep: slice on the
// last active coordinate and reduce each slab to a (dim-1)-dimensional
// subproblem over the points at or below the slab.
inline double hv_sweep(std::vector<const ObjectiveVector*>& points, const ObjectiveVector& ref,
                       std::size_t dim) {
  if (points.empty()) return 0.0;
  if (dim == 1) {
    double lo = (*points.front())[0];
    for (const auto* p : points) lo = std::min(lo, (*p)[0]);
    return ref[0] - lo;
  }
  const std::size_t axis = dim - 1;
  std::sort(points.begin(), points.end(),
            [axis](const ObjectiveVector* a, const ObjectiveVector* b) {
              return (*a)[axis] < (*b)[axis];
            });
  double volume = 0.0;
  std::vector<const ObjectiveVector*> prefix;
  prefix.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    prefix.push_back(points[i]);
    const double level = (*points[i])[axis];
    const double next = (i + 1 < points.size()) ? (*points[i + 1])[axis] : ref[axis];
    if (next > level) {
      auto slab = prefix;  // hv_sweep reorders its input
      volume += (next - level) * hv_sweep(slab, ref, dim - 1);
    }
  }
  return volume;
}

}  // namespace detail

// Exact dominated hypervolume of `points` with respect to reference point
// `ref` (everything minimized; a point contributes only if it is
// coordinate-wise <= ref). Exact computation is limited to 2..4 objectives;
// use hypervolume_monte_carlo beyond that.
inline double hypervolume(const std::vector<ObjectiveVector>& points, const ObjectiveVector& ref) {
  const std::size_t n = ref.size();
  if (n < 2 || n > 4) {
    throw UnsupportedDimension(
        "exact hypervolume supports 2 to 4 objectives; use the Monte Carlo estimator");
  }
  std::vector<const ObjectiveVector*> contributing;
  for (const auto& p : points) {
    if (p.size() != n) throw DimensionMismatch("hypervolume: point/reference length mismatch");
    if (weakly_dominates(p, ref)) contributing.push_back(&p);
  }
  return detail::hv_sweep(contributing, ref, n);
}

inline double hypervolume(const FrontApproximation& front) {
  std::vector<ObjectiveVector> points;
  points.reserve(front.points.size());
  for (const auto& p : front.points) points.push_back(p.objectives);
  return hypervolume(points, front.reference);
}

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

// Unbiased Monte Carlo estimate of the dominated hypervolume: uniform samples
// in the bounding box spanned by the contributing points and the reference
// point, counting those weakly dominated by the set. Works for any number of
// objectives and doubles as an independent check on the exact sweep.
inline McEstimate hypervolume_monte_carlo(const std::vector<ObjectiveVector>& points,
                                          const ObjectiveVector& ref, std::size_t sample_count,
                                          std::mt19937_64& rng) {
  if (sample_count < 1) throw ValidationError("hypervolume_monte_carlo: need at least one sample");
  const std::size_t n = ref.size();
  std::vector<const ObjectiveVector*> contributing;
  for (const auto& p : points) {
    if (p.size() != n) throw DimensionMismatch("hypervolume: point/reference length mismatch");
    if (weakly_dominates(p, ref)) contributing.push_back(&p);
  }
  if (contributing.empty()) return {};

  ObjectiveVector lo(ref);
  for (const auto* p : contributing) {
    for (std::size_t i = 0; i < n; ++i) lo[i] = std::min(lo[i], (*p)[i]);
  }
  double box = 1.0;
  for (std::size_t i = 0; i < n; ++i) box *= ref[i] - lo[i];
  if (!(box > 0.0)) return {};

  std::size_t hits = 0;
  ObjectiveVector x(n);
  for (std::size_t s = 0; s < sample_count; ++s) {
    for (std::size_t i = 0; i < n; ++i) x[i] = uniform_real(rng, lo[i], ref[i]);
    for (const auto* p : contributing) {
      bool dominated = true;
      for (std::size_t i = 0; i < n; ++i) {
        if ((*p)[i] > x[i]) {
          dominated = false;
          break;
        }
      }
      if (dominated) {
        ++hits;
        break;
      }
    }
  }
  const double p_hat = static_cast<double>(hits) / static_cast<double>(sample_count);
  McEstimate est;
  est.value = box * p_hat;
  est.std_error = box * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(sample_count));
  return est;
}

}  // namespace moasha
