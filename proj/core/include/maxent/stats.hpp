// Copyright 2026 the maxent-rng developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maxent/baselines.hpp"
#include "maxent/generator.hpp"

namespace maxent {

// ---------------------------------------------------------------------------
// Estimators and reports
// ---------------------------------------------------------------------------

struct MomentSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;         // unbiased (divisor N-1)
  double skewness = 0.0;         // g1 = sqrt(N) M3 / M2^1.5
  double excess_kurtosis = 0.0;  // g2 = N M4 / M2^2 - 3
};

// One-pass numerically stable estimates. Requires count >= 2.
MomentSummary moments(std::span<const double> samples);

// A single statistic with its null expectation and standard error.
// Verdict: PASS iff |z| <= 5, which keeps the false-alarm rate per
// statistic around 6e-7 so single CI runs do not flake.
struct TestReport {
  std::string name;
  double statistic = 0.0;
  double expected = 0.0;
  double std_error = 0.0;
  double z_score = 0.0;
  bool pass = true;

  static TestReport make(std::string name, double statistic, double expected,
                         double std_error);

  std::string text() const;     // aligned human-readable line
  std::string machine() const;  // name=...,statistic=...,expected=...,se=...,z=...,verdict=...
};

// Reports for mean/variance/skewness/excess kurtosis against N(0,1), with
// the standard-error formulas 1/sqrt(N), sqrt(2/N), sqrt(6/N), sqrt(24/N).
std::vector<TestReport> moment_reports(const MomentSummary& m,
                                       std::string_view prefix);

// Standard normal quantile (Acklam's rational approximation polished with
// one Newton step on erfc). |p - Phi(result)| ~ 1e-15 for p in (0, 1).
double normal_quantile(double p);

// Threshold T with P(|N(0,1)| > T) = rate.
double two_sided_threshold(double rate);

// ---------------------------------------------------------------------------
// Defect-detection suite
// ---------------------------------------------------------------------------

// Two-variable model of the squared-value correlation: x1, x2 iid N(0,1)
// (Polar), theta uniform on [0, 2 pi), y1 = cos(theta) x1 + sin(theta) x2.
// Estimates E(x1^2 y1^2); the null expectation is 2, not
// E(x1^2) E(y1^2) = 1. With forced_theta the expectation becomes
// 1 + 2 cos^2(theta) (3 at theta = 0, 1 at theta = pi/2).
// Requires trials >= 1e4. The standard error is the plug-in SE of the
// sample mean, since x1^2 y1^2 is heavy-tailed.
TestReport squared_correlation_model(std::size_t trials, BaselineState& src,
                                     std::optional<double> forced_theta = {});

struct ProbePair {
  std::size_t out_i;
  std::size_t in_j;
};

struct CrossPoolOptions {
  std::size_t pool_pairs = 100000;  // >= 1e3
  std::vector<ProbePair> probes;    // empty -> default spread of 8 probes
  // Pin the transform (variant 0, zero offsets) and estimate over
  // independent pools: each pair is a fresh Polar-filled pool pushed through
  // one fixed pass, so corr(x_j, y_i) estimates the composed coefficient
  // q_{i,j} without bias from the deterministic orbit a fixed transform
  // produces on a streaming pool.
  bool fixed_transform = false;
  // Expected value written into the reports: the composed q_{i,j} (cure /
  // defect quantification) or 0 (the iid null, which the fixed transform
  // intentionally fails).
  bool expect_composed_q = false;
};

// Correlation between pool p value x_j and pool p+1 value y_i at the raw
// (pre-scaling) level. Randomized variants: consecutive pools from a
// streaming generator, expected 0. Throws InvalidParameterError on
// out-of-range probes or zero-variance (constant) pools.
std::vector<TestReport> cross_pool_correlation(const GeneratorConfig& cfg,
                                               const CrossPoolOptions& opts);
std::vector<TestReport> cross_pool_correlation(Generator& gen,
                                               const CrossPoolOptions& opts);

// Per-pool sums of squares of the standardized output (n-1 values plus the
// reserved variate): mean should be nu, variance 2 nu. With
// cfg.diag.disable_chi2 the sums are constant and the variance report
// fails, which is the defect the chi-squared correction removes.
struct PoolSumSquares {
  TestReport mean_report;
  TestReport variance_report;
};
PoolSumSquares pool_sum_squares_test(const GeneratorConfig& cfg,
                                     std::size_t pools);

// Marks pools containing at least one |value| > threshold and compares the
// conditional marking rate of the following pool against the base rate
// (binomial SE). statistic = excess ratio, expected = 1. A stream with no
// pool structure should pass; the finite-pool generator concentrates the
// energy of rare events into few next-pool values, so adjacent pools are
// more likely to be jointly marked (detectable only with very large
// samples). Requires threshold >= 3 and samples >= 1e5. If no pool is
// marked the report is flagged "[no-marks]" with z = 0.
TestReport rare_event_adjacency(const GeneratorConfig& cfg,
                                std::size_t samples, double threshold);
TestReport rare_event_adjacency_stream(const std::function<double()>& next,
                                       std::size_t samples,
                                       std::size_t pool_size, double threshold,
                                       std::string_view name);

}  // namespace maxent
