// Copyright 2026 the maxent-rng developers
// SPDX-License-Identifier: Apache-2.0

#include "maxent/chi2.hpp"

#include <cmath>
#include <string>

namespace maxent {

double compute_a(std::uint64_t nu) {
  if (nu < 1) {
    throw InvalidParameterError("compute_a: nu must be >= 1");
  }
  const double root_nu = std::sqrt(static_cast<double>(nu));
  return 2.0 * root_nu * std::sin(std::asin(1.0 / root_nu) / 3.0);
}

Chi2Params Chi2Params::for_nu(std::uint64_t nu) {
  if (nu < 8) {
    throw InvalidParameterError("Chi2Params: nu must be >= 8, got " +
                                std::to_string(nu));
  }
  return Chi2Params{nu, compute_a(nu)};
}

double chi2_sample(double x, const Chi2Params& params, Chi2Method method,
                   bool* clamped) {
  if (!std::isfinite(x)) {
    throw InvalidParameterError("chi2_sample: x must be finite");
  }
  const double nu = static_cast<double>(params.nu);
  double s;
  switch (method) {
    case Chi2Method::sqrt_shift: {
      const double y = x + std::sqrt(2.0 * nu - 1.0);
      s = 0.5 * y * y;
      break;
    }
    case Chi2Method::wilson_hilferty: {
      const double d = 2.0 / (9.0 * nu);
      const double y = std::sqrt(d) * x + (1.0 - d);
      s = nu * y * y * y;
      break;
    }
    case Chi2Method::cubic_a: {
      const double a = params.a_value;
      s = a * (x * x - 1.0) + std::sqrt(2.0 * (nu - a * a)) * x + nu;
      break;
    }
  }
  const double floor = 1e-6 * nu;
  if (s < floor) {
    if (clamped != nullptr) *clamped = true;
    return floor;
  }
  if (clamped != nullptr) *clamped = false;
  return s;
}

}  // namespace maxent
