// Copyright 2026 The moasha authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "moasha/errors.hpp"
#include "moasha/rng.hpp"

namespace moasha {

using ConfigId = std::uint64_t;

// Objective vectors are minimized coordinate-wise. Adapters are expected to
// negate any maximization objective before values enter the system.
using ObjectiveVector = std::vector<double>;

using ParamValue = std::variant<double, std::int64_t, std::string>;

// A point in the search space. `seed` drives everything stochastic that is
// attached to this configuration (weight sets, surrogate noise) and is derived
// once from the experiment seed and the id.
struct Configuration {
  ConfigId id = 0;
  std::vector<ParamValue> params;
  std::uint64_t seed = 0;
};

inline std::uint64_t config_seed(std::uint64_t experiment_seed, ConfigId id) {
  return hash_combine(experiment_seed, id);
}

// One completed evaluation: configuration `config_id` ran at rung `rung` for
// `budget` resource units and produced `objectives`. Timestamps are seconds,
// simulated or wall clock depending on the executor.
struct EvaluationRecord {
  ConfigId config_id = 0;
  int rung = 0;
  double budget = 0.0;
  ObjectiveVector objectives;
  double t_start = 0.0;
  double t_end = 0.0;

  friend bool operator==(const EvaluationRecord&, const EvaluationRecord&) = default;
};

// Benchmark output for one (configuration, budget) query: the objective
// vector plus the simulated duration the evaluation would have taken.
struct Evaluation {
  ObjectiveVector objectives;
  double duration = 0.0;
};

inline bool all_finite(const ObjectiveVector& y) {
  for (double v : y) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

inline void validate_record(const EvaluationRecord& rec) {
  if (rec.objectives.size() < 2) {
    throw ValidationError("evaluation record needs at least two objectives");
  }
  if (!all_finite(rec.objectives)) {
    throw ValidationError("evaluation record has non-finite objective values");
  }
  if (rec.rung < 0) {
    throw ValidationError("evaluation record has negative rung");
  }
  if (!(rec.budget > 0.0)) {
    throw ValidationError("evaluation record budget must be positive");
  }
  if (!(rec.t_start >= 0.0) || !(rec.t_end >= rec.t_start)) {
    throw ValidationError("evaluation record timestamps must satisfy 0 <= t_start <= t_end");
  }
}

}  // namespace moasha
