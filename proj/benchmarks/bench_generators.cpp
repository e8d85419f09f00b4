// Copyright 2026 the maxent-rng developers
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <vector>

#include "maxent/baselines.hpp"
#include "maxent/generator.hpp"

namespace {

void BM_Uniform(benchmark::State& state) {
  maxent::UniformState u(42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(maxent::uniform_next(u));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Uniform);

void BM_Polar(benchmark::State& state) {
  maxent::BaselineState s(42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(maxent::polar_next(s));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Polar);

void BM_BoxMuller(benchmark::State& state) {
  maxent::BaselineState s(42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(maxent::boxmuller_next(s));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_BoxMuller);

void BM_WallaceFill(benchmark::State& state) {
  maxent::GeneratorConfig cfg;
  cfg.pool_size = static_cast<std::size_t>(state.range(0));
  cfg.seed = 42;
  maxent::Generator gen(cfg);
  std::vector<double> buf(1 << 14);
  for (auto _ : state) {
    gen.fill(std::span<double>{buf});
    benchmark::DoNotOptimize(buf.data());
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(buf.size()));
}
BENCHMARK(BM_WallaceFill)->Arg(64)->Arg(256)->Arg(1024)->Arg(4096);

void BM_RotationFill(benchmark::State& state) {
  maxent::GeneratorConfig cfg;
  cfg.transform_family = maxent::TransformFamily::rotation;
  cfg.mixing = maxent::MixingScheme::affine;
  cfg.pool_size = static_cast<std::size_t>(state.range(0));
  cfg.seed = 42;
  maxent::Generator gen(cfg);
  std::vector<double> buf(1 << 14);
  for (auto _ : state) {
    gen.fill(std::span<double>{buf});
    benchmark::DoNotOptimize(buf.data());
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(buf.size()));
}
BENCHMARK(BM_RotationFill)->Arg(1024);

void BM_WallaceDiscard(benchmark::State& state) {
  maxent::GeneratorConfig cfg;
  cfg.discard_every = static_cast<std::size_t>(state.range(0));
  cfg.seed = 42;
  maxent::Generator gen(cfg);
  std::vector<double> buf(1 << 14);
  for (auto _ : state) {
    gen.fill(std::span<double>{buf});
    benchmark::DoNotOptimize(buf.data());
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(buf.size()));
}
BENCHMARK(BM_WallaceDiscard)->Arg(1)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
