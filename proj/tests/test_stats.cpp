// Copyright 2026 the maxent-rng developers
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "maxent/stats.hpp"

using namespace maxent;

namespace {

// two-pass reference estimators
double ref_mean(const std::vector<double>& v) {
  double s = 0.0;
  for (const double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double ref_central(const std::vector<double>& v, int p) {
  const double m = ref_mean(v);
  double s = 0.0;
  for (const double x : v) s += std::pow(x - m, p);
  return s / static_cast<double>(v.size());
}

double parse_field(const std::string& record, const std::string& key) {
  const auto pos = record.find(key + "=");
  REQUIRE(pos != std::string::npos);
  return std::strtod(record.c_str() + pos + key.size() + 1, nullptr);
}

}  // namespace

TEST_CASE("moments on tiny exact inputs") {
  const std::vector<double> constant{1.0, 1.0, 1.0, 1.0};
  const auto mc = moments(constant);
  CHECK(mc.count == 4);
  CHECK(mc.mean == 1.0);
  CHECK(mc.variance == 0.0);

  const std::vector<double> two{-1.0, 1.0};
  const auto mt = moments(two);
  CHECK(mt.mean == 0.0);
  CHECK(mt.variance == 2.0);  // unbiased, divisor N-1

  CHECK_THROWS_AS(moments(std::vector<double>{1.0}), InvalidParameterError);
  CHECK_THROWS_AS(moments(std::vector<double>{}), InvalidParameterError);
}

TEST_CASE("moments agree with two-pass reference estimators") {
  BaselineState src(101);
  std::vector<double> data(20000);
  for (auto& x : data) {
    const double z = polar_next(src);
    x = z * z;  // skewed data exercises all four moments
  }
  const auto m = moments(data);
  const double n = static_cast<double>(data.size());
  const double mu2 = ref_central(data, 2);
  CHECK(m.mean == doctest::Approx(ref_mean(data)).epsilon(1e-12));
  CHECK(m.variance ==
        doctest::Approx(mu2 * n / (n - 1.0)).epsilon(1e-10));
  CHECK(m.skewness ==
        doctest::Approx(ref_central(data, 3) / std::pow(mu2, 1.5))
            .epsilon(1e-8));
  CHECK(m.excess_kurtosis ==
        doctest::Approx(ref_central(data, 4) / (mu2 * mu2) - 3.0)
            .epsilon(1e-8));
}

TEST_CASE("moments are permutation-invariant") {
  BaselineState src(31);
  std::vector<double> data(5000);
  for (auto& x : data) x = polar_next(src);
  const auto a = moments(data);
  std::vector<double> sorted = data;
  std::sort(sorted.begin(), sorted.end());
  const auto b = moments(sorted);
  CHECK(a.mean == doctest::Approx(b.mean).epsilon(1e-9));
  CHECK(a.variance == doctest::Approx(b.variance).epsilon(1e-9));
  CHECK(a.skewness == doctest::Approx(b.skewness).epsilon(1e-9));
  CHECK(a.excess_kurtosis ==
        doctest::Approx(b.excess_kurtosis).epsilon(1e-9));
}

TEST_CASE("moments transform correctly under affine maps") {
  BaselineState src(37);
  std::vector<double> data(5000);
  for (auto& x : data) {
    const double z = polar_next(src);
    x = z * z * z;  // strongly skewed
  }
  const double a = 2.5, b = -1.25;
  std::vector<double> mapped(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) mapped[i] = a * data[i] + b;
  const auto m0 = moments(data);
  const auto m1 = moments(mapped);
  CHECK(m1.mean == doctest::Approx(a * m0.mean + b).epsilon(1e-9));
  CHECK(m1.variance == doctest::Approx(a * a * m0.variance).epsilon(1e-9));
  CHECK(m1.skewness == doctest::Approx(m0.skewness).epsilon(1e-9));
  CHECK(m1.excess_kurtosis ==
        doctest::Approx(m0.excess_kurtosis).epsilon(1e-9));
}

TEST_CASE("polar stream passes the moment suite") {
  BaselineState src(41);
  std::vector<double> data(1000000);
  for (auto& x : data) x = polar_next(src);
  for (const auto& r : moment_reports(moments(data), "polar")) {
    CHECK(r.pass);
  }
}

TEST_CASE("TestReport verdict rule and internal consistency") {
  const auto ok = TestReport::make("x", 1.02, 1.0, 0.01);
  CHECK(ok.z_score == doctest::Approx(2.0));
  CHECK(ok.pass);

  const auto bad = TestReport::make("x", 1.06, 1.0, 0.01);
  CHECK_FALSE(bad.pass);

  const auto exact = TestReport::make("x", 3.0, 3.0, 0.0);
  CHECK(exact.z_score == 0.0);
  CHECK(exact.pass);

  const auto broken = TestReport::make("x", 3.0, 2.0, 0.0);
  CHECK(std::isinf(broken.z_score));
  CHECK_FALSE(broken.pass);

  // z recomputes from the report's own fields
  BaselineState src(43);
  for (int i = 0; i < 100; ++i) {
    const double stat = polar_next(src);
    const double expect = polar_next(src);
    const double se = std::abs(polar_next(src)) + 1e-3;
    const auto r = TestReport::make("prop", stat, expect, se);
    CHECK(r.z_score ==
          doctest::Approx((r.statistic - r.expected) / r.std_error));
    CHECK(r.pass == (std::abs(r.z_score) <= 5.0));
  }
}

TEST_CASE("TestReport machine format round-trips") {
  const auto r = TestReport::make("probe.i1.j2", 0.123456789012345678, 0.125,
                                  0.01);
  const std::string rec = r.machine();
  CHECK(rec.find("name=probe.i1.j2,") == 0);
  CHECK(rec.find(",verdict=PASS") != std::string::npos);
  CHECK(parse_field(rec, "statistic") == r.statistic);
  CHECK(parse_field(rec, "expected") == r.expected);
  CHECK(parse_field(rec, "se") == r.std_error);
  CHECK(parse_field(rec, "z") == r.z_score);

  const std::string txt = r.text();
  CHECK(txt.find("PASS") != std::string::npos);
  CHECK(txt.find("probe.i1.j2") != std::string::npos);
}

TEST_CASE("normal quantile reference values") {
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(normal_quantile(0.975) ==
        doctest::Approx(1.959963984540054).epsilon(1e-9));
  CHECK(normal_quantile(0.995) ==
        doctest::Approx(2.5758293035489004).epsilon(1e-9));
  CHECK(normal_quantile(0.999) ==
        doctest::Approx(3.090232306167813).epsilon(1e-9));
  CHECK(normal_quantile(0.025) ==
        doctest::Approx(-1.959963984540054).epsilon(1e-9));

  // Phi(quantile(p)) = p across the range
  for (double p = 0.0005; p < 1.0; p += 0.0101) {
    const double x = normal_quantile(p);
    const double back = 0.5 * std::erfc(-x / std::numbers::sqrt2);
    CHECK(std::abs(back - p) <= 1e-12);
  }

  CHECK_THROWS_AS(normal_quantile(0.0), InvalidParameterError);
  CHECK_THROWS_AS(normal_quantile(1.0), InvalidParameterError);

  CHECK(two_sided_threshold(0.05) ==
        doctest::Approx(1.959963984540054).epsilon(1e-9));
}

TEST_CASE("squared correlation model: E(x1^2 y1^2) = 2, not 1") {
  BaselineState src(47);
  const auto r = squared_correlation_model(100000, src);
  CHECK(r.expected == 2.0);
  CHECK(r.pass);

  // forced theta oracles: Gaussian fourth moment and independence
  const auto at0 = squared_correlation_model(100000, src, 0.0);
  CHECK(at0.expected == doctest::Approx(3.0));
  CHECK(at0.pass);

  const auto at90 =
      squared_correlation_model(100000, src, std::numbers::pi / 2.0);
  CHECK(at90.expected == doctest::Approx(1.0));
  CHECK(at90.pass);

  CHECK_THROWS_AS(squared_correlation_model(9999, src), InvalidParameterError);
}

TEST_CASE("cross-pool correlations vanish with randomized variants") {
  GeneratorConfig cfg;
  cfg.pool_size = 64;
  cfg.seed = 3;
  CrossPoolOptions opts;
  opts.pool_pairs = 20000;
  const auto reports = cross_pool_correlation(cfg, opts);
  REQUIRE(reports.size() == 8);
  for (const auto& r : reports) {
    CHECK(r.pass);
    CHECK(std::abs(r.statistic) <=
          5.0 / std::sqrt(static_cast<double>(opts.pool_pairs)));
  }
}

TEST_CASE("fixed transform reproduces the composed coefficients") {
  GeneratorConfig cfg;
  cfg.pool_size = 64;
  cfg.seed = 5;
  const PassPlan plan{};

  // probes on known nonzero paths of the composed matrix, plus a zero one
  CrossPoolOptions opts;
  opts.pool_pairs = 20000;
  opts.fixed_transform = true;
  opts.expect_composed_q = true;
  std::size_t nonzero_probes = 0;
  for (std::size_t i = 0; i < 64 && nonzero_probes < 4; ++i) {
    for (std::size_t j = 0; j < 64; ++j) {
      if (std::abs(pass_coefficient(cfg, plan, i, j)) == 0.5) {
        opts.probes.push_back({i, j});
        ++nonzero_probes;
        break;
      }
    }
  }
  REQUIRE(nonzero_probes == 4);
  opts.probes.push_back({0, 63});
  const bool last_probe_zero = pass_coefficient(cfg, plan, 0, 63) == 0.0;

  const auto vs_q = cross_pool_correlation(cfg, opts);
  for (const auto& r : vs_q) {
    CHECK(r.pass);  // measured correlation matches the analytic q
  }
  if (last_probe_zero) CHECK(vs_q.back().expected == 0.0);

  // against the iid null the same correlations expose the defect
  opts.expect_composed_q = false;
  const auto vs_null = cross_pool_correlation(cfg, opts);
  const double bound = 10.0 / std::sqrt(static_cast<double>(opts.pool_pairs));
  std::size_t defects = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK_FALSE(vs_null[k].pass);
    if (std::abs(vs_null[k].statistic) > bound) ++defects;
  }
  CHECK(defects == 4);
}

TEST_CASE("cross-pool correlation rejects degenerate pools") {
  GeneratorConfig cfg;
  cfg.pool_size = 64;
  cfg.seed = 1;
  Generator gen(cfg);
  gen.inject_pool(std::vector<double>(64, 0.0));  // constant pool
  CrossPoolOptions opts;
  opts.pool_pairs = 1000;
  CHECK_THROWS_AS(cross_pool_correlation(gen, opts), InvalidParameterError);

  CrossPoolOptions bad_probe;
  bad_probe.pool_pairs = 1000;
  bad_probe.probes.push_back({64, 0});
  CHECK_THROWS_AS(cross_pool_correlation(cfg, bad_probe),
                  InvalidParameterError);
}

TEST_CASE("per-pool sums of squares follow chi-squared moments") {
  GeneratorConfig cfg;
  cfg.pool_size = 256;
  cfg.seed = 7;
  const auto res = pool_sum_squares_test(cfg, 2000);
  CHECK(res.mean_report.pass);
  CHECK(res.variance_report.pass);
  CHECK(res.variance_report.statistic / (2.0 * 256.0) > 0.9);
  CHECK(res.variance_report.statistic / (2.0 * 256.0) < 1.1);

  CHECK_THROWS_AS(pool_sum_squares_test(cfg, 999), InvalidParameterError);
}

TEST_CASE("per-pool sums of squares at a small pool size") {
  GeneratorConfig cfg;
  cfg.pool_size = 64;
  cfg.seed = 13;
  const auto res = pool_sum_squares_test(cfg, 10000);
  CHECK(res.mean_report.pass);
  CHECK(res.variance_report.statistic / (2.0 * 64.0) > 0.9);
  CHECK(res.variance_report.statistic / (2.0 * 64.0) < 1.1);
}

TEST_CASE("without the chi-squared correction the sums are constant") {
  GeneratorConfig cfg;
  cfg.pool_size = 256;
  cfg.seed = 7;
  cfg.diag.disable_chi2 = true;
  const auto res = pool_sum_squares_test(cfg, 2000);
  CHECK_FALSE(res.variance_report.pass);
  CHECK(res.variance_report.statistic < 1e-6);  // variance collapses
}

TEST_CASE("rare-event adjacency: independent stream satisfies the null") {
  BaselineState src(53);
  const auto r = rare_event_adjacency_stream(
      [&src] { return polar_next(src); }, 1000000, 64, 3.5,
      "rare_event_adjacency.polar_null");
  CHECK(r.expected == 1.0);
  CHECK(r.pass);
  CHECK(std::isfinite(r.statistic));
}

TEST_CASE("rare-event adjacency: generator run emits a well-formed report") {
  GeneratorConfig cfg;
  cfg.pool_size = 64;
  cfg.seed = 11;
  const auto r = rare_event_adjacency(cfg, 10000 * 64, 3.2);
  CHECK_FALSE(r.name.empty());
  CHECK(std::isfinite(r.statistic));
  CHECK(r.std_error >= 0.0);
  CHECK(r.expected == 1.0);
}

TEST_CASE("rare-event adjacency degenerate and precondition guards") {
  BaselineState src(59);
  // threshold so extreme no pool is ever marked: flagged, no crash
  const auto r = rare_event_adjacency_stream(
      [&src] { return polar_next(src); }, 200000, 64, 40.0, "rare_null");
  CHECK(r.name.find("[no-marks]") != std::string::npos);
  CHECK(r.pass);

  CHECK_THROWS_AS(rare_event_adjacency_stream([&src] { return 0.0; }, 200000,
                                              64, 2.0, "x"),
                  InvalidParameterError);
  CHECK_THROWS_AS(rare_event_adjacency_stream([&src] { return 0.0; }, 50000,
                                              64, 3.5, "x"),
                  InvalidParameterError);
  GeneratorConfig cfg;
  cfg.pool_size = 64;
  CHECK_THROWS_AS(rare_event_adjacency(cfg, 50000, 3.5),
                  InvalidParameterError);
}
