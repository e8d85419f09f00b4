// Copyright 2026 the maxent-rng developers
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cstdio>
#include <vector>

#include "commands.hpp"
#include "maxent/bench.hpp"
#include "maxent/errors.hpp"

namespace maxent::cli {

int run_bench(const BenchOptions& opt) {
  std::vector<BenchMethod> methods;
  if (opt.methods.empty()) {
    methods = {BenchMethod::uniform, BenchMethod::wallace4,
               BenchMethod::rotation, BenchMethod::polar,
               BenchMethod::boxmuller};
  } else {
    for (const auto& name : opt.methods) {
      methods.push_back(bench_method_from_name(name));
    }
  }

  int repeats = opt.repeats;
  if (opt.samples < 1000000) {
    repeats = std::max(repeats, 9);
    std::fprintf(stderr,
                 "bench: warning: --n below 1e6 times unreliably; widening "
                 "repeats to %d\n",
                 repeats);
  }

  const auto rows = maxent::run_bench(methods, opt.samples, repeats, opt.seed);
  if (opt.machine) {
    for (const auto& r : rows) std::puts(bench_machine(r).c_str());
  } else {
    std::fputs(bench_table(rows).c_str(), stdout);
  }
  return kExitPass;
}

}  // namespace maxent::cli
