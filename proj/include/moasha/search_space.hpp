// Copyright 2026 The moasha authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "moasha/errors.hpp"
#include "moasha/rng.hpp"
#include "moasha/types.hpp"

namespace moasha {

enum class Scaling { kLinear, kLogarithmic };

struct RealDomain {
  double lo = 0.0;
  double hi = 1.0;
  Scaling scaling = Scaling::kLinear;
};

struct IntegerDomain {
  std::int64_t lo = 0;
  std::int64_t hi = 1;
  Scaling scaling = Scaling::kLinear;
};

struct CategoricalDomain {
  std::vector<std::string> categories;
};

struct Dimension {
  std::string name;
  std::variant<RealDomain, IntegerDomain, CategoricalDomain> domain;
};

struct SearchSpace {
  std::vector<Dimension> dimensions;
};

inline void validate_space(const SearchSpace& space) {
  for (const auto& dim : space.dimensions) {
    if (const auto* r = std::get_if<RealDomain>(&dim.domain)) {
      if (!(r->lo < r->hi)) {
        throw ConfigSpaceError("dimension '" + dim.name + "': lower bound must be < upper bound");
      }
      if (r->scaling == Scaling::kLogarithmic && !(r->lo > 0.0)) {
        throw ConfigSpaceError("dimension '" + dim.name + "': log scaling needs positive bounds");
      }
    } else if (const auto* i = std::get_if<IntegerDomain>(&dim.domain)) {
      if (!(i->lo < i->hi)) {
        throw ConfigSpaceError("dimension '" + dim.name + "': lower bound must be < upper bound");
      }
      if (i->scaling == Scaling::kLogarithmic && !(i->lo > 0)) {
        throw ConfigSpaceError("dimension '" + dim.name + "': log scaling needs positive bounds");
      }
    } else {
      const auto& c = std::get<CategoricalDomain>(dim.domain);
      if (c.categories.empty()) {
        throw ConfigSpaceError("dimension '" + dim.name + "': empty categorical domain");
      }
    }
  }
}

// Each dimension is sampled independently: uniform on its domain, uniform on
// the log of the domain under logarithmic scaling, uniform over categories.
// Identity fields (id, seed) are left at zero; the experiment assigns them.
inline Configuration sample_configuration(const SearchSpace& space, std::mt19937_64& rng) {
  validate_space(space);
  Configuration cfg;
  cfg.params.reserve(space.dimensions.size());
  for (const auto& dim : space.dimensions) {
    if (const auto* r = std::get_if<RealDomain>(&dim.domain)) {
      if (r->scaling == Scaling::kLogarithmic) {
        cfg.params.emplace_back(std::exp(uniform_real(rng, std::log(r->lo), std::log(r->hi))));
      } else {
        cfg.params.emplace_back(uniform_real(rng, r->lo, r->hi));
      }
    } else if (const auto* i = std::get_if<IntegerDomain>(&dim.domain)) {
      if (i->scaling == Scaling::kLogarithmic) {
        const double v = std::exp(uniform_real(rng, std::log(static_cast<double>(i->lo)),
                                               std::log(static_cast<double>(i->hi) + 1.0)));
        auto iv = static_cast<std::int64_t>(v);
        cfg.params.emplace_back(iv > i->hi ? i->hi : (iv < i->lo ? i->lo : iv));
      } else {
        cfg.params.emplace_back(uniform_int(rng, i->lo, i->hi));
      }
    } else {
      const auto& c = std::get<CategoricalDomain>(dim.domain);
      const auto k = uniform_int(rng, 0, static_cast<std::int64_t>(c.categories.size()) - 1);
      cfg.params.emplace_back(c.categories[static_cast<std::size_t>(k)]);
    }
  }
  return cfg;
}

}  // namespace moasha
