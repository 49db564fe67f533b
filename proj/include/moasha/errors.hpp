// Copyright 2026 The moasha authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace moasha {

// Malformed search space or parameter outside its declared domain.
class ConfigSpaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value-level invariant was violated (non-finite objective, bad timestamps, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Objective/weight vectors of different lengths were combined.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exact hypervolume requested outside the supported 2..4 objective range.
class UnsupportedDimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Unknown configuration index in a tabular benchmark.
class LookupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scheduler protocol misuse: duplicate or never-issued result reports.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Bad experiment configuration file or CLI input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace moasha
