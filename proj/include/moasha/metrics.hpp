// Copyright 2026 The moasha authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <charconv>
#include <fstream>
#include <string>
#include <vector>

#include "moasha/ecdf.hpp"
#include "moasha/errors.hpp"
#include "moasha/hypervolume.hpp"
#include "moasha/pareto.hpp"
#include "moasha/types.hpp"

namespace moasha {

struct MetricPoint {
  double t = 0.0;
  double hv = 0.0;
  double hv_diff = 0.0;
};

using MetricSeries = std::vector<MetricPoint>;

// Shared normalization and target front for a set of runs being compared.
// The quantile pool spans every evaluation from every log, so hypervolumes
// are computed in a common [0,1]^n space with reference point (1,...,1).
struct ReferenceContext {
  EcdfNormalizer normalizer;
  FrontApproximation front;
  double front_hv = 0.0;
};

inline ReferenceContext build_reference(const std::vector<std::vector<EvaluationRecord>>& logs) {
  std::vector<ObjectiveVector> pool;
  std::vector<FrontPoint> points;
  for (const auto& log : logs) {
    for (const auto& rec : log) pool.push_back(rec.objectives);
  }
  if (pool.empty()) throw ValidationError("reference front: no evaluations");
  EcdfNormalizer normalizer = EcdfNormalizer::from_vectors(pool);
  for (const auto& log : logs) {
    for (const auto& rec : log) {
      points.push_back(FrontPoint{rec.config_id, normalizer(rec.objectives)});
    }
  }
  ObjectiveVector ones(normalizer.dims(), 1.0);
  FrontApproximation front = make_front(std::move(points), std::move(ones));
  const double hv = hypervolume(front);
  return ReferenceContext{std::move(normalizer), std::move(front), hv};
}

// Non-dominated subset of the pooled, quantile-normalized evaluations.
inline FrontApproximation accumulate_reference_front(
    const std::vector<std::vector<EvaluationRecord>>& logs) {
  return build_reference(logs).front;
}

namespace detail {

// Incrementally maintained non-dominated set with its exact hypervolume.
class FrontTracker {
 public:
  explicit FrontTracker(ObjectiveVector reference) : reference_(std::move(reference)) {}

  // Returns true if the front (and therefore the hypervolume) changed.
  bool insert(const ObjectiveVector& y) {
    for (const auto& p : points_) {
      if (weakly_dominates(p, y)) return false;
    }
    std::erase_if(points_, [&](const ObjectiveVector& p) { return strictly_dominates(y, p); });
    points_.push_back(y);
    hv_ = hypervolume(points_, reference_);
    return true;
  }

  double hv() const { return hv_; }
  const std::vector<ObjectiveVector>& points() const { return points_; }

 private:
  ObjectiveVector reference_;
  std::vector<ObjectiveVector> points_;
  double hv_ = 0.0;
};

}  // namespace detail

// Replays a log in completion order and tracks the dominated hypervolume of
// everything seen so far, normalized against the pooled reference data, with
// the gap to the reference front alongside. One point per distinct t_end.
inline MetricSeries anytime_hypervolume(const std::vector<EvaluationRecord>& log,
                                        const ReferenceContext& ref) {
  MetricSeries series;
  if (log.empty()) return series;
  ObjectiveVector ones(ref.normalizer.dims(), 1.0);
  detail::FrontTracker tracker(ones);
  for (std::size_t i = 0; i < log.size(); ++i) {
    tracker.insert(ref.normalizer(log[i].objectives));
    const double t = log[i].t_end;
    if (i + 1 < log.size() && log[i + 1].t_end == t) continue;
    series.push_back(MetricPoint{t, tracker.hv(), ref.front_hv - tracker.hv()});
  }
  return series;
}

// Final Pareto front of one log in the given normalized space.
inline FrontApproximation normalized_front(const std::vector<EvaluationRecord>& log,
                                           const EcdfNormalizer& normalizer) {
  std::vector<FrontPoint> points;
  points.reserve(log.size());
  for (const auto& rec : log) {
    points.push_back(FrontPoint{rec.config_id, normalizer(rec.objectives)});
  }
  ObjectiveVector ones(normalizer.dims(), 1.0);
  return make_front(std::move(points), std::move(ones));
}

// ---------------------------------------------------------------------------
// CSV output. Doubles are written with shortest round-trip precision so
// repeated runs produce byte-identical files.
// ---------------------------------------------------------------------------

inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline void save_metrics_csv(const MetricSeries& series, std::ostream& out) {
  out << "t,hv,hv_diff\n";
  for (const auto& p : series) {
    out << format_double(p.t) << ',' << format_double(p.hv) << ',' << format_double(p.hv_diff)
        << '\n';
  }
}

inline void save_metrics_csv(const MetricSeries& series, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open metrics file for writing: " + path);
  save_metrics_csv(series, out);
}

inline void save_front_csv(const FrontApproximation& front, std::ostream& out) {
  for (const auto& p : front.points) {
    for (std::size_t i = 0; i < p.objectives.size(); ++i) {
      if (i > 0) out << ',';
      out << format_double(p.objectives[i]);
    }
    out << '\n';
  }
}

inline void save_front_csv(const FrontApproximation& front, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open front file for writing: " + path);
  save_front_csv(front, out);
}

}  // namespace moasha
