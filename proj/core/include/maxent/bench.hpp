// Copyright 2026 the maxent-rng developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace maxent {

enum class BenchMethod { uniform, wallace4, rotation, polar, boxmuller };

// "uniform", "wallace4", ... Throws InvalidParameterError on unknown names.
std::string bench_method_name(BenchMethod m);
BenchMethod bench_method_from_name(std::string_view name);

struct BenchResult {
  std::string generator_name;
  std::size_t samples = 0;
  double elapsed_s = 0.0;   // median over repeats
  double throughput = 0.0;  // samples / elapsed_s
  double relative = 0.0;    // throughput / uniform-row throughput
};

// Times `samples` draws per method, repeated `repeats` times (median kept),
// after one untimed warm-up run. The uniform generator is always measured
// and is the normalization row (relative = 1.0). Methods run strictly
// sequentially.
std::vector<BenchResult> run_bench(std::span<const BenchMethod> methods,
                                   std::size_t samples, int repeats,
                                   std::uint64_t seed);

std::string bench_table(std::span<const BenchResult> rows);    // aligned text
std::string bench_machine(const BenchResult& row);             // key=value record

}  // namespace maxent
