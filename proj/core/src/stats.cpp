// Copyright 2026 the maxent-rng developers
// SPDX-License-Identifier: Apache-2.0

#include "maxent/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

namespace maxent {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

MomentSummary moments(std::span<const double> samples) {
  if (samples.size() < 2) {
    throw InvalidParameterError("moments: need at least 2 samples");
  }
  // One-pass central-moment updates (Welford / Pebay).
  double mean = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0;
  std::size_t n = 0;
  for (const double x : samples) {
    const double n1 = static_cast<double>(n);
    ++n;
    const double nn = static_cast<double>(n);
    const double delta = x - mean;
    const double delta_n = delta / nn;
    const double delta_n2 = delta_n * delta_n;
    const double term1 = delta * delta_n * n1;
    mean += delta_n;
    m4 += term1 * delta_n2 * (nn * nn - 3.0 * nn + 3.0) +
          6.0 * delta_n2 * m2 - 4.0 * delta_n * m3;
    m3 += term1 * delta_n * (nn - 2.0) - 3.0 * delta_n * m2;
    m2 += term1;
  }
  MomentSummary out;
  out.count = n;
  out.mean = mean;
  out.variance = m2 / static_cast<double>(n - 1);
  if (m2 > 0.0) {
    const double nn = static_cast<double>(n);
    out.skewness = std::sqrt(nn) * m3 / std::pow(m2, 1.5);
    out.excess_kurtosis = nn * m4 / (m2 * m2) - 3.0;
  }
  return out;
}

TestReport TestReport::make(std::string name, double statistic,
                            double expected, double std_error) {
  TestReport r;
  r.name = std::move(name);
  r.statistic = statistic;
  r.expected = expected;
  r.std_error = std_error;
  if (std_error > 0.0) {
    r.z_score = (statistic - expected) / std_error;
  } else {
    r.z_score = statistic == expected
                    ? 0.0
                    : std::copysign(std::numeric_limits<double>::infinity(),
                                    statistic - expected);
  }
  r.pass = std::abs(r.z_score) <= 5.0;
  return r;
}

std::string TestReport::text() const {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "[%s] %-40s statistic=%- 14.6g expected=%- 14.6g se=%- 12.4g "
                "z=%- .3f",
                pass ? "PASS" : "FAIL", name.c_str(), statistic, expected,
                std_error, z_score);
  return buf;
}

std::string TestReport::machine() const {
  std::string out = "name=" + name;
  out += ",statistic=" + format_double(statistic);
  out += ",expected=" + format_double(expected);
  out += ",se=" + format_double(std_error);
  out += ",z=" + format_double(z_score);
  out += ",verdict=";
  out += pass ? "PASS" : "FAIL";
  return out;
}

std::vector<TestReport> moment_reports(const MomentSummary& m,
                                       std::string_view prefix) {
  const double n = static_cast<double>(m.count);
  const std::string p{prefix};
  return {
      TestReport::make(p + ".mean", m.mean, 0.0, 1.0 / std::sqrt(n)),
      TestReport::make(p + ".variance", m.variance, 1.0, std::sqrt(2.0 / n)),
      TestReport::make(p + ".skewness", m.skewness, 0.0, std::sqrt(6.0 / n)),
      TestReport::make(p + ".excess_kurtosis", m.excess_kurtosis, 0.0,
                       std::sqrt(24.0 / n)),
  };
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidParameterError("normal_quantile: p must be in (0, 1)");
  }
  // Acklam's rational approximation, then two Halley steps on
  // Phi(x) - p via erfc to polish to full double accuracy.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  for (int i = 0; i < 2; ++i) {
    const double err = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
    const double u =
        err * std::numbers::sqrt2 * std::sqrt(std::numbers::pi) *
        std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

double two_sided_threshold(double rate) {
  if (!(rate > 0.0 && rate < 1.0)) {
    throw InvalidParameterError("two_sided_threshold: rate must be in (0, 1)");
  }
  return normal_quantile(1.0 - rate / 2.0);
}

TestReport squared_correlation_model(std::size_t trials, BaselineState& src,
                                     std::optional<double> forced_theta) {
  if (trials < 10000) {
    throw InvalidParameterError(
        "squared_correlation_model: trials must be >= 10000");
  }
  double fc = 0.0, fs = 0.0;
  if (forced_theta) {
    fc = std::cos(*forced_theta);
    fs = std::sin(*forced_theta);
  }
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    const double x1 = polar_next(src);
    const double x2 = polar_next(src);
    double ct = fc, st = fs;
    if (!forced_theta) {
      const double theta = 2.0 * std::numbers::pi * uniform_next(src.uniform);
      ct = std::cos(theta);
      st = std::sin(theta);
    }
    const double y1 = ct * x1 + st * x2;
    const double w = x1 * x1 * y1 * y1;
    sum += w;
    sum2 += w * w;
  }
  const double nn = static_cast<double>(trials);
  const double mean = sum / nn;
  const double var = sum2 / nn - mean * mean;
  const double se = std::sqrt(var / nn);
  // E(c^2) E(x1^4) + E(s^2) E(x1^2 x2^2): 2 for random theta, 1 + 2 cos^2
  // when theta is pinned.
  const double expected = forced_theta ? 1.0 + 2.0 * fc * fc : 2.0;
  std::string name = "squared_correlation_model";
  if (forced_theta) name += "[theta=" + format_double(*forced_theta) + "]";
  return TestReport::make(std::move(name), mean, expected, se);
}

namespace {

struct ProbeAccumulator {
  double sx = 0.0, sxx = 0.0, sy = 0.0, syy = 0.0, sxy = 0.0, sxy2 = 0.0;

  void add(double x, double y) {
    sx += x;
    sxx += x * x;
    sy += y;
    syy += y * y;
    const double w = x * y;
    sxy += w;
    sxy2 += w * w;
  }

  TestReport finalize(std::string name, std::size_t count,
                      double expected) const {
    const double nn = static_cast<double>(count);
    const double mx = sx / nn;
    const double my = sy / nn;
    const double vx = sxx / nn - mx * mx;
    const double vy = syy / nn - my * my;
    if (!(vx > 0.0) || !(vy > 0.0)) {
      throw InvalidParameterError(
          "cross_pool_correlation: zero-variance pool values at probe " +
          name);
    }
    const double denom = std::sqrt(vx * vy);
    const double cov = sxy / nn - mx * my;
    const double mean_xy = sxy / nn;
    const double var_xy = sxy2 / nn - mean_xy * mean_xy;
    const double se = std::sqrt(var_xy / nn) / denom;
    return TestReport::make(std::move(name), cov / denom, expected, se);
  }
};

std::vector<ProbePair> default_probes(std::size_t n) {
  std::vector<ProbePair> probes;
  probes.reserve(8);
  for (std::size_t k = 0; k < 8; ++k) {
    probes.push_back({(5 * k) % n, (11 * k + 3) % n});
  }
  return probes;
}

std::string probe_name(const ProbePair& p) {
  return "cross_pool_corr.i" + std::to_string(p.out_i) + ".j" +
         std::to_string(p.in_j);
}

void check_probes(const std::vector<ProbePair>& probes, std::size_t n) {
  for (const auto& p : probes) {
    if (p.out_i >= n || p.in_j >= n) {
      throw InvalidParameterError(
          "cross_pool_correlation: probe index out of range");
    }
  }
}

}  // namespace

std::vector<TestReport> cross_pool_correlation(const GeneratorConfig& cfg,
                                               const CrossPoolOptions& opts) {
  cfg.validate();
  if (opts.pool_pairs < 1000) {
    throw InvalidParameterError(
        "cross_pool_correlation: pool_pairs must be >= 1000");
  }
  const std::size_t n = cfg.pool_size;
  std::vector<ProbePair> probes =
      opts.probes.empty() ? default_probes(n) : opts.probes;
  check_probes(probes, n);

  if (!opts.fixed_transform) {
    GeneratorConfig streaming = cfg;
    streaming.diag.fixed_transform = false;
    Generator gen(streaming);
    CrossPoolOptions o2 = opts;
    o2.probes = probes;
    return cross_pool_correlation(gen, o2);
  }

  // Fixed transform: fresh Polar-filled pool per pair, one pinned pass.
  // corr(x_j, y_i) is then an unbiased estimate of the composed coefficient
  // q_{i,j}; streaming a pinned transform instead would iterate a fixed
  // orthogonal map whose orbit averages do not settle at the iid values.
  const PassPlan plan{};
  BaselineState src(cfg.seed);
  std::vector<double> x(n), y(n);
  std::vector<ProbeAccumulator> acc(probes.size());
  for (std::size_t pair = 0; pair < opts.pool_pairs; ++pair) {
    for (auto& v : x) v = polar_next(src);
    run_pass(cfg, plan, x, y);
    for (std::size_t k = 0; k < probes.size(); ++k) {
      acc[k].add(x[probes[k].in_j], y[probes[k].out_i]);
    }
  }
  std::vector<TestReport> reports;
  reports.reserve(probes.size());
  for (std::size_t k = 0; k < probes.size(); ++k) {
    const double expected =
        opts.expect_composed_q
            ? pass_coefficient(cfg, plan, probes[k].out_i, probes[k].in_j)
            : 0.0;
    reports.push_back(
        acc[k].finalize(probe_name(probes[k]), opts.pool_pairs, expected));
  }
  return reports;
}

std::vector<TestReport> cross_pool_correlation(Generator& gen,
                                               const CrossPoolOptions& opts) {
  if (opts.pool_pairs < 1000) {
    throw InvalidParameterError(
        "cross_pool_correlation: pool_pairs must be >= 1000");
  }
  const std::size_t n = gen.config().pool_size;
  std::vector<ProbePair> probes =
      opts.probes.empty() ? default_probes(n) : opts.probes;
  check_probes(probes, n);

  std::vector<ProbeAccumulator> acc(probes.size());
  std::vector<double> prev(gen.pool().raw.begin(), gen.pool().raw.end());
  for (std::size_t pair = 0; pair < opts.pool_pairs; ++pair) {
    gen.step_pass();
    const auto& cur = gen.pool().raw;
    for (std::size_t k = 0; k < probes.size(); ++k) {
      acc[k].add(prev[probes[k].in_j], cur[probes[k].out_i]);
    }
    std::copy(cur.begin(), cur.end(), prev.begin());
  }
  std::vector<TestReport> reports;
  reports.reserve(probes.size());
  for (std::size_t k = 0; k < probes.size(); ++k) {
    reports.push_back(
        acc[k].finalize(probe_name(probes[k]), opts.pool_pairs, 0.0));
  }
  return reports;
}

PoolSumSquares pool_sum_squares_test(const GeneratorConfig& cfg,
                                     std::size_t pools) {
  if (pools < 1000) {
    throw InvalidParameterError("pool_sum_squares_test: pools must be >= 1000");
  }
  GeneratorConfig standardized = cfg;
  standardized.out_mean = 0.0;
  standardized.out_sigma = 1.0;
  Generator gen(standardized);

  std::vector<double> sums(pools);
  for (auto& s : sums) {
    const auto po = gen.next_pool();
    double total = po.reserved * po.reserved;
    for (const double v : po.values) total += v * v;
    s = total;
  }
  const MomentSummary m = moments(sums);
  const double nu = static_cast<double>(cfg.pool_size);
  const double pp = static_cast<double>(pools);
  const double se_mean = std::sqrt(m.variance / pp);
  // Var(sample variance) ~ (mu4 - sigma^4) / P, plug-in.
  const double se_var =
      m.variance * std::sqrt(std::max(m.excess_kurtosis + 2.0, 0.0) / pp);
  return {
      TestReport::make("pool_sum_squares.mean", m.mean, nu, se_mean),
      TestReport::make("pool_sum_squares.variance", m.variance, 2.0 * nu,
                       se_var),
  };
}

namespace {

// Shared marked-pool adjacency counting: conditional marking rate of the
// successor pool against the base rate over all successor pools.
class AdjacencyCounter {
 public:
  void add(bool marked) {
    if (have_prev_) {
      ++successors_;
      if (marked) ++base_marked_;
      if (prev_marked_) {
        ++cond_population_;
        if (marked) ++cond_marked_;
      }
    }
    prev_marked_ = marked;
    have_prev_ = true;
  }

  TestReport finalize(std::string name) const {
    if (cond_population_ == 0 || base_marked_ == 0) {
      return TestReport::make(std::move(name) + "[no-marks]", 1.0, 1.0, 0.0);
    }
    const double base = static_cast<double>(base_marked_) /
                        static_cast<double>(successors_);
    const double cond = static_cast<double>(cond_marked_) /
                        static_cast<double>(cond_population_);
    const double se_cond = std::sqrt(base * (1.0 - base) /
                                     static_cast<double>(cond_population_));
    return TestReport::make(std::move(name), cond / base, 1.0, se_cond / base);
  }

 private:
  bool have_prev_ = false;
  bool prev_marked_ = false;
  std::uint64_t successors_ = 0;
  std::uint64_t base_marked_ = 0;
  std::uint64_t cond_population_ = 0;
  std::uint64_t cond_marked_ = 0;
};

void check_rare_event_args(std::size_t samples, double threshold) {
  if (threshold < 3.0) {
    throw InvalidParameterError("rare_event_adjacency: threshold must be >= 3");
  }
  if (samples < 100000) {
    throw InvalidParameterError(
        "rare_event_adjacency: samples must be >= 1e5");
  }
}

}  // namespace

TestReport rare_event_adjacency(const GeneratorConfig& cfg,
                                std::size_t samples, double threshold) {
  check_rare_event_args(samples, threshold);
  GeneratorConfig standardized = cfg;
  standardized.out_mean = 0.0;
  standardized.out_sigma = 1.0;
  Generator gen(standardized);
  const std::size_t per_pool = cfg.pool_size - 1;
  const std::size_t pools = samples / per_pool;
  AdjacencyCounter counter;
  for (std::size_t p = 0; p < pools; ++p) {
    const auto po = gen.next_pool();
    bool marked = false;
    for (const double v : po.values) {
      if (std::abs(v) > threshold) {
        marked = true;
        break;
      }
    }
    counter.add(marked);
  }
  return counter.finalize("rare_event_adjacency.pool" +
                          std::to_string(cfg.pool_size));
}

TestReport rare_event_adjacency_stream(const std::function<double()>& next,
                                       std::size_t samples,
                                       std::size_t pool_size, double threshold,
                                       std::string_view name) {
  check_rare_event_args(samples, threshold);
  if (pool_size < 2) {
    throw InvalidParameterError(
        "rare_event_adjacency: pool_size must be >= 2");
  }
  const std::size_t pools = samples / pool_size;
  AdjacencyCounter counter;
  for (std::size_t p = 0; p < pools; ++p) {
    bool marked = false;
    for (std::size_t i = 0; i < pool_size; ++i) {
      if (std::abs(next()) > threshold) marked = true;
    }
    counter.add(marked);
  }
  return counter.finalize(std::string{name});
}

}  // namespace maxent
