// Copyright 2026 the maxent-rng developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>

namespace maxent {

// Bad argument to a library operation (out-of-range index, non-finite
// input, sample size below the documented minimum, ...).
class InvalidParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Rejected generator configuration; the message names the offending field.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace maxent
