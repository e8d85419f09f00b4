// Copyright 2026 the maxent-rng developers
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "commands.hpp"
#include "maxent/errors.hpp"

namespace cli = maxent::cli;

int main(int argc, char** argv) {
  CLI::App app{
      "maxent-rng: pool-based maximum-entropy normal generator, conventional "
      "baselines, statistical defect detection, and throughput benchmarks"};
  app.require_subcommand(1);

  cli::GenOptions gen;
  auto* gen_cmd = app.add_subcommand(
      "gen", "Generate a stream of normal variates");
  gen_cmd->add_option("--method", gen.method,
                      "wallace4|rotation|polar|boxmuller");
  gen_cmd->add_option("--n", gen.count, "number of values to emit")
      ->required();
  auto* o_pool = gen_cmd->add_option("--pool-size", gen.pool_size,
                                     "pool size (power of two, >= 32)");
  auto* o_chi2 = gen_cmd->add_option("--chi2", gen.chi2, "sqrt|wh|cubic");
  auto* o_mix = gen_cmd->add_option("--mixing", gen.mixing, "stride|affine");
  auto* o_disc = gen_cmd->add_option("--discard", gen.discard,
                                     "emit only every k-th pool");
  gen_cmd->add_option("--mean", gen.mean, "output mean");
  gen_cmd->add_option("--sigma", gen.sigma, "output standard deviation");
  gen_cmd->add_option("--seed", gen.seed, "64-bit seed");
  gen_cmd->add_option("--format", gen.format, "text|f64le");
  gen_cmd->add_option("--out", gen.out, "output path, - for stdout");

  cli::TestOptions test;
  auto* test_cmd = app.add_subcommand(
      "test", "Run the statistical defect-detection suite");
  test_cmd->add_option("--suite", test.suites,
                       "moments|sqcorr|crosspool|poolss|rare|all (repeatable)");
  test_cmd->add_option("--samples", test.samples, "samples per moment test");
  test_cmd->add_option("--pairs", test.pairs, "pool pairs for crosspool");
  test_cmd->add_option("--pools", test.pools, "pools for poolss");
  test_cmd->add_option("--pool-size", test.pool_size,
                       "pool size (0 = per-suite default)");
  test_cmd->add_option("--seed", test.seed, "64-bit seed");
  test_cmd->add_option("--threshold", test.threshold,
                       "rare-event threshold (>= 3)");
  test_cmd->add_flag("--fixed-transform", test.fixed_transform,
                     "pin the transform: demonstrates the cross-pool "
                     "correlation defect (exits nonzero)");
  test_cmd->add_flag("--machine", test.machine, "machine-readable records");

  cli::BenchOptions bench;
  auto* bench_cmd =
      app.add_subcommand("bench", "Benchmark generator throughput");
  bench_cmd->add_option("--methods", bench.methods,
                        "methods to time (default: all)")
      ->delimiter(',');
  bench_cmd->add_option("--n", bench.samples, "samples per timing run");
  bench_cmd->add_option("--repeats", bench.repeats, "runs per method "
                        "(median reported)");
  bench_cmd->add_option("--seed", bench.seed, "64-bit seed");
  bench_cmd->add_flag("--machine", bench.machine, "machine-readable records");

  cli::SelftestOptions selftest;
  auto* selftest_cmd = app.add_subcommand(
      "selftest", "Fast invariant checks (orthogonality, bijectivity, "
      "determinism, spot values)");
  selftest_cmd->add_option("--inject-fault", selftest.inject_fault,
                           "corrupt a named table to prove the checks bite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitUsage;
  }

  try {
    if (*gen_cmd) {
      if (o_pool->count() > 0) {
        gen.pool_flags_given = true;
        gen.first_pool_flag = "--pool-size";
      } else if (o_chi2->count() > 0) {
        gen.pool_flags_given = true;
        gen.first_pool_flag = "--chi2";
      } else if (o_mix->count() > 0) {
        gen.pool_flags_given = true;
        gen.first_pool_flag = "--mixing";
      } else if (o_disc->count() > 0) {
        gen.pool_flags_given = true;
        gen.first_pool_flag = "--discard";
      }
      return cli::run_gen(gen);
    }
    if (*test_cmd) return cli::run_test(test);
    if (*bench_cmd) return cli::run_bench(bench);
    if (*selftest_cmd) return cli::run_selftest(selftest);
  } catch (const maxent::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return cli::kExitUsage;
  } catch (const maxent::InvalidParameterError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return cli::kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return cli::kExitFail;
  }
  return cli::kExitUsage;
}
