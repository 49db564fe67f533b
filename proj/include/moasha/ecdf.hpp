// Copyright 2026 The moasha authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <vector>

#include "moasha/errors.hpp"
#include "moasha/types.hpp"

namespace moasha {

// Quantile normalization against a pool of observed values per objective:
// each value maps to the fraction of pooled values <= it. The output is
// invariant under any strictly increasing transform applied to both the pool
// and the query, which is what makes downstream hypervolume comparisons
// robust to objective rescaling.
class EcdfNormalizer {
 public:
  explicit EcdfNormalizer(std::vector<std::vector<double>> pools) : pools_(std::move(pools)) {
    for (auto& pool : pools_) {
      if (pool.empty()) throw ValidationError("ecdf normalizer: empty value pool");
      std::sort(pool.begin(), pool.end());
    }
  }

  static EcdfNormalizer from_vectors(const std::vector<ObjectiveVector>& ys) {
    if (ys.empty()) throw ValidationError("ecdf normalizer: no objective vectors");
    std::vector<std::vector<double>> pools(ys.front().size());
    for (const auto& y : ys) {
      if (y.size() != pools.size()) {
        throw DimensionMismatch("ecdf normalizer: inconsistent objective counts");
      }
      for (std::size_t i = 0; i < y.size(); ++i) pools[i].push_back(y[i]);
    }
    return EcdfNormalizer(std::move(pools));
  }

  std::size_t dims() const { return pools_.size(); }

  double normalize(std::size_t objective, double value) const {
    const auto& pool = pools_[objective];
    const auto count = std::upper_bound(pool.begin(), pool.end(), value) - pool.begin();
    return static_cast<double>(count) / static_cast<double>(pool.size());
  }

  ObjectiveVector operator()(const ObjectiveVector& y) const {
    if (y.size() != pools_.size()) {
      throw DimensionMismatch("ecdf normalizer: query has wrong objective count");
    }
    ObjectiveVector out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = normalize(i, y[i]);
    return out;
  }

 private:
  std::vector<std::vector<double>> pools_;
};

}  // namespace moasha
