// Copyright 2026 the maxent-rng developers
// SPDX-License-Identifier: Apache-2.0

#include "maxent/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <vector>

#include "maxent/baselines.hpp"
#include "maxent/errors.hpp"
#include "maxent/generator.hpp"

namespace maxent {

namespace {

// Keep the accumulated sink live without letting the compiler hoist or
// delete the generation loop.
inline void keep(double& value) { asm volatile("" : "+m,r"(value) : : ); }

double time_method(BenchMethod m, std::size_t samples, std::uint64_t seed) {
  using clock = std::chrono::steady_clock;
  double sink = 0.0;
  const auto t0 = clock::now();
  switch (m) {
    case BenchMethod::uniform: {
      UniformState u(seed);
      for (std::size_t i = 0; i < samples; ++i) sink += uniform_next(u);
      break;
    }
    case BenchMethod::polar: {
      BaselineState s(seed);
      for (std::size_t i = 0; i < samples; ++i) sink += polar_next(s);
      break;
    }
    case BenchMethod::boxmuller: {
      BaselineState s(seed);
      for (std::size_t i = 0; i < samples; ++i) sink += boxmuller_next(s);
      break;
    }
    case BenchMethod::wallace4:
    case BenchMethod::rotation: {
      GeneratorConfig cfg;
      cfg.transform_family = m == BenchMethod::wallace4
                                 ? TransformFamily::wallace4
                                 : TransformFamily::rotation;
      cfg.seed = seed;
      Generator gen(cfg);
      std::vector<double> buf(1 << 16);
      std::size_t left = samples;
      while (left > 0) {
        const std::size_t take = std::min(left, buf.size());
        gen.fill(std::span<double>{buf.data(), take});
        for (std::size_t i = 0; i < take; ++i) sink += buf[i];
        left -= take;
      }
      break;
    }
  }
  const auto t1 = clock::now();
  keep(sink);
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

std::string bench_method_name(BenchMethod m) {
  switch (m) {
    case BenchMethod::uniform: return "uniform";
    case BenchMethod::wallace4: return "wallace4";
    case BenchMethod::rotation: return "rotation";
    case BenchMethod::polar: return "polar";
    case BenchMethod::boxmuller: return "boxmuller";
  }
  throw InvalidParameterError("bench_method_name: bad method");
}

BenchMethod bench_method_from_name(std::string_view name) {
  if (name == "uniform") return BenchMethod::uniform;
  if (name == "wallace4") return BenchMethod::wallace4;
  if (name == "rotation") return BenchMethod::rotation;
  if (name == "polar") return BenchMethod::polar;
  if (name == "boxmuller") return BenchMethod::boxmuller;
  throw InvalidParameterError("unknown bench method: " + std::string{name});
}

std::vector<BenchResult> run_bench(std::span<const BenchMethod> methods,
                                   std::size_t samples, int repeats,
                                   std::uint64_t seed) {
  if (samples < 1 || repeats < 1) {
    throw InvalidParameterError("run_bench: samples and repeats must be >= 1");
  }
  std::vector<BenchMethod> order;
  order.push_back(BenchMethod::uniform);  // normalization row comes first
  for (const auto m : methods) {
    if (std::find(order.begin(), order.end(), m) == order.end()) {
      order.push_back(m);
    }
  }

  std::vector<BenchResult> rows;
  rows.reserve(order.size());
  for (const auto m : order) {
    // untimed warm-up at a tenth of the workload
    time_method(m, std::max<std::size_t>(samples / 10, 1), seed);
    std::vector<double> times(static_cast<std::size_t>(repeats));
    for (auto& t : times) t = time_method(m, samples, seed);
    std::sort(times.begin(), times.end());
    const double median = times[times.size() / 2];
    BenchResult r;
    r.generator_name = bench_method_name(m);
    r.samples = samples;
    r.elapsed_s = median;
    r.throughput = static_cast<double>(samples) / median;
    rows.push_back(r);
  }
  const double base = rows.front().throughput;
  for (auto& r : rows) r.relative = r.throughput / base;
  return rows;
}

std::string bench_table(std::span<const BenchResult> rows) {
  std::string out =
      "generator     samples        median_s     throughput/s   relative\n";
  for (const auto& r : rows) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-12s %12zu %12.6f %16.4g %10.4f\n",
                  r.generator_name.c_str(), r.samples, r.elapsed_s,
                  r.throughput, r.relative);
    out += buf;
  }
  return out;
}

std::string bench_machine(const BenchResult& r) {
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "name=%s,samples=%zu,elapsed=%.17g,throughput=%.17g,"
                "relative=%.17g",
                r.generator_name.c_str(), r.samples, r.elapsed_s, r.throughput,
                r.relative);
  return buf;
}

}  // namespace maxent
