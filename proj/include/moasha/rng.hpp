// Copyright 2026 The moasha authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace moasha {

// All randomness flows through mt19937_64 engines plus the hand-rolled
// transforms below. The standard <random> distributions are implementation
// defined, so they are avoided: seeds must map to identical streams on every
// platform.

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ (mix64(b) + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

// Uniform double in [0, 1) with 53 random bits.
template <class Rng>
double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <class Rng>
double uniform_real(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

// Inclusive integer range.
template <class Rng>
std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<double>(hi - lo) + 1.0;
  auto v = lo + static_cast<std::int64_t>(uniform01(rng) * span);
  return v > hi ? hi : v;
}

// Standard exponential via inverse CDF; log1p keeps the tail accurate.
template <class Rng>
double standard_exponential(Rng& rng) {
  return -std::log1p(-uniform01(rng));
}

// Box-Muller. Consumes two draws per call; the sine branch is discarded so a
// single call stays a pure function of exactly two engine outputs.
template <class Rng>
double standard_normal(Rng& rng) {
  const double u1 = 1.0 - uniform01(rng);  // (0, 1]
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
  return std::mt19937_64(mix64(seed));
}

}  // namespace moasha
