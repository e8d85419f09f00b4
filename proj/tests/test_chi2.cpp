// Copyright 2026 the maxent-rng developers
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "maxent/baselines.hpp"
#include "maxent/chi2.hpp"

using namespace maxent;

namespace {

double cubic_residual(std::uint64_t nu, double a) {
  const double n = static_cast<double>(nu);
  return a * a * a - 3.0 * n * a + 2.0 * n;
}

}  // namespace

TEST_CASE("compute_a solves the cubic") {
  // nu=1: arcsin(1) = pi/2, A = 2 sin(pi/6) = 1, and 1 - 3 + 2 = 0
  CHECK(compute_a(1) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(std::abs(cubic_residual(1024, compute_a(1024))) <= 1e-3);
  for (const std::uint64_t nu : std::vector<std::uint64_t>{2, 64, 1024, 1000000}) {
    const double a = compute_a(nu);
    CHECK(a > 0.0);
    CHECK(std::abs(cubic_residual(nu, a)) <= 1e-6 * static_cast<double>(nu));
  }
  CHECK_THROWS_AS(compute_a(0), InvalidParameterError);
}

TEST_CASE("compute_a approaches 2/3 like 1/nu") {
  for (const std::uint64_t nu : std::vector<std::uint64_t>{10000, 100000, 1000000}) {
    CHECK(std::abs(compute_a(nu) - 2.0 / 3.0) <= 1.0 / static_cast<double>(nu));
  }
}

TEST_CASE("compute_a against an independent Newton root") {
  // Newton on A^3 - 3 nu A + 2 nu from A0 = 2/3: the root the closed form
  // must reproduce.
  for (const std::uint64_t nu : std::vector<std::uint64_t>{8, 64, 1024, 65536}) {
    const double n = static_cast<double>(nu);
    double a = 2.0 / 3.0;
    for (int i = 0; i < 50; ++i) {
      const double f = a * a * a - 3.0 * n * a + 2.0 * n;
      const double fp = 3.0 * a * a - 3.0 * n;
      const double next = a - f / fp;
      if (std::abs(next - a) < 1e-12) {
        a = next;
        break;
      }
      a = next;
    }
    CHECK(compute_a(nu) == doctest::Approx(a).epsilon(1e-12));
  }
}

TEST_CASE("Chi2Params validation") {
  CHECK_THROWS_AS(Chi2Params::for_nu(4), InvalidParameterError);
  const auto p = Chi2Params::for_nu(1024);
  CHECK(p.nu == 1024);
  CHECK(std::abs(cubic_residual(1024, p.a_value)) <= 1e-6 * 1024);
}

TEST_CASE("chi2_sample spot values at x=0") {
  const auto p = Chi2Params::for_nu(1024);

  // sqrt_shift: (2 nu - 1)/2
  CHECK(chi2_sample(0.0, p, Chi2Method::sqrt_shift) ==
        doctest::Approx(1023.5).epsilon(1e-12));

  // wilson_hilferty: nu (1 - 2/(9 nu))^3, also recomputed directly
  const double wh = chi2_sample(0.0, p, Chi2Method::wilson_hilferty);
  CHECK(wh == doctest::Approx(1023.3334).epsilon(1e-6));
  const double d = 2.0 / 9216.0;
  CHECK(wh == doctest::Approx(1024.0 * (1.0 - d) * (1.0 - d) * (1.0 - d))
                  .epsilon(1e-12));

  // cubic_a: nu - A, algebraic consequence
  for (const std::uint64_t nu : std::vector<std::uint64_t>{64, 1024, 4096}) {
    const auto params = Chi2Params::for_nu(nu);
    const double got = chi2_sample(0.0, params, Chi2Method::cubic_a);
    const double want = static_cast<double>(nu) - params.a_value;
    CHECK(std::abs(got - want) <= 1e-9 * std::abs(want));
  }
}

TEST_CASE("chi2_sample rejects non-finite x") {
  const auto p = Chi2Params::for_nu(64);
  CHECK_THROWS_AS(
      chi2_sample(std::numeric_limits<double>::quiet_NaN(), p,
                  Chi2Method::cubic_a),
      InvalidParameterError);
  CHECK_THROWS_AS(
      chi2_sample(std::numeric_limits<double>::infinity(), p,
                  Chi2Method::sqrt_shift),
      InvalidParameterError);
}

TEST_CASE("chi2_sample clamps non-positive approximations") {
  const auto p = Chi2Params::for_nu(64);

  bool clamped = false;
  const double s =
      chi2_sample(-std::sqrt(127.0), p, Chi2Method::sqrt_shift, &clamped);
  CHECK(clamped);
  CHECK(s == 1e-6 * 64);

  clamped = false;
  const double wh = chi2_sample(-20.0, p, Chi2Method::wilson_hilferty, &clamped);
  CHECK(clamped);
  CHECK(wh == 1e-6 * 64);

  clamped = false;
  chi2_sample(0.0, p, Chi2Method::cubic_a, &clamped);
  CHECK_FALSE(clamped);

  // cubic_a stays positive even far out in the tail
  clamped = false;
  CHECK(chi2_sample(-12.0, p, Chi2Method::cubic_a, &clamped) > 0.0);
  CHECK_FALSE(clamped);
}

TEST_CASE("chi2_sample is monotone in x on [-3, 3]") {
  for (const std::uint64_t nu : std::vector<std::uint64_t>{64, 1024}) {
    const auto p = Chi2Params::for_nu(nu);
    for (const auto method : {Chi2Method::sqrt_shift,
                              Chi2Method::wilson_hilferty,
                              Chi2Method::cubic_a}) {
      double prev = chi2_sample(-3.0, p, method);
      for (double x = -2.99; x <= 3.0; x += 0.01) {
        const double cur = chi2_sample(x, p, method);
        CHECK(cur > prev);
        prev = cur;
      }
    }
  }
}

TEST_CASE("chi2 approximations reproduce chi-squared moments") {
  BaselineState normals(77);
  for (const std::uint64_t nu : std::vector<std::uint64_t>{64, 256, 1024, 4096}) {
    const auto p = Chi2Params::for_nu(nu);
    for (const auto method : {Chi2Method::sqrt_shift,
                              Chi2Method::wilson_hilferty,
                              Chi2Method::cubic_a}) {
      const std::size_t trials = 100000;
      double sum = 0.0, sum2 = 0.0;
      for (std::size_t i = 0; i < trials; ++i) {
        const double s = chi2_sample(polar_next(normals), p, method);
        sum += s;
        sum2 += s * s;
      }
      const double nn = static_cast<double>(trials);
      const double nud = static_cast<double>(nu);
      const double mean = sum / nn;
      const double var = (sum2 - sum * sum / nn) / (nn - 1.0);
      CHECK(std::abs(mean - nud) <= 5.0 * std::sqrt(2.0 * nud / nn));
      CHECK(var / (2.0 * nud) > 0.9);
      CHECK(var / (2.0 * nud) < 1.1);
    }
  }
}

TEST_CASE("cubic_a sampler tracks the exact sum-of-squares oracle") {
  const std::uint64_t nu = 256;
  const auto p = Chi2Params::for_nu(nu);

  BaselineState normals(123);
  const std::size_t trials = 200000;
  double sum_a = 0.0, sum2_a = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    const double s = chi2_sample(polar_next(normals), p, Chi2Method::cubic_a);
    sum_a += s;
    sum2_a += s * s;
  }
  const double mean_a = sum_a / static_cast<double>(trials);
  const double var_a = sum2_a / static_cast<double>(trials) - mean_a * mean_a;

  BaselineState oracle_src(321);
  const std::size_t oracle_trials = 5000;
  double sum_e = 0.0, sum2_e = 0.0;
  for (std::size_t i = 0; i < oracle_trials; ++i) {
    const double s = exact_chi2_oracle(nu, oracle_src);
    sum_e += s;
    sum2_e += s * s;
  }
  const double mean_e = sum_e / static_cast<double>(oracle_trials);
  const double var_e =
      sum2_e / static_cast<double>(oracle_trials) - mean_e * mean_e;

  const double se_a = std::sqrt(var_a / static_cast<double>(trials));
  const double se_e = std::sqrt(var_e / static_cast<double>(oracle_trials));
  CHECK(std::abs(mean_a - mean_e) <=
        5.0 * std::sqrt(se_a * se_a + se_e * se_e));
  CHECK(var_a / var_e > 0.85);
  CHECK(var_a / var_e < 1.15);
}
