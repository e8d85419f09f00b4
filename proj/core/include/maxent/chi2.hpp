// Copyright 2026 the maxent-rng developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "maxent/errors.hpp"

namespace maxent {

// Approximations mapping one N(0,1) variate x to a draw S from (roughly)
// the chi-squared distribution with nu degrees of freedom:
//
//   sqrt_shift:      S = (x + sqrt(2 nu - 1))^2 / 2
//   wilson_hilferty: S = nu * (sqrt(2/(9 nu)) x + 1 - 2/(9 nu))^3
//   cubic_a:         S = A (x^2 - 1) + sqrt(2 (nu - A^2)) x + nu
//
// cubic_a matches the first three moments of chi^2_nu exactly and is the
// default.
enum class Chi2Method { sqrt_shift, wilson_hilferty, cubic_a };

// A = 2 sqrt(nu) sin(arcsin(1/sqrt(nu)) / 3), the positive root of
// A^3 - 3 nu A + 2 nu = 0 near 2/3. A -> 2/3 + O(1/nu) as nu grows.
// Requires nu >= 1.
double compute_a(std::uint64_t nu);

struct Chi2Params {
  std::uint64_t nu = 0;
  double a_value = 0.0;  // precomputed A for cubic_a

  // Validates nu >= 8 and precomputes A.
  static Chi2Params for_nu(std::uint64_t nu);
};

// Returns S > 0. Extreme x can drive an approximation non-positive
// (sqrt_shift at |x| > sqrt(2 nu - 1), wilson_hilferty far in the left
// tail); the result is then clamped to 1e-6 * nu and *clamped, when given,
// is set. Throws InvalidParameterError for non-finite x.
double chi2_sample(double x, const Chi2Params& params, Chi2Method method,
                   bool* clamped = nullptr);

}  // namespace maxent
