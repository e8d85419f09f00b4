// Copyright 2026 the maxent-rng developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace maxent::cli {

// Exit codes shared by every subcommand: 0 pass, 1 fail, 2 usage error.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

struct GenOptions {
  std::string method = "wallace4";
  std::uint64_t count = 0;
  std::size_t pool_size = 1024;
  std::string chi2 = "cubic";
  std::string mixing = "stride";
  std::size_t discard = 1;
  double mean = 0.0;
  double sigma = 1.0;
  std::uint64_t seed = 0;
  std::string format = "text";
  std::string out = "-";
  // set by the parser: whether a pool-structure flag was given explicitly
  bool pool_flags_given = false;
  std::string first_pool_flag;  // name of the offending flag for the error
};

struct TestOptions {
  std::vector<std::string> suites;  // empty -> default set
  std::uint64_t samples = 1000000;
  std::uint64_t pairs = 20000;
  std::uint64_t pools = 2000;
  std::size_t pool_size = 0;  // 0 -> per-suite default
  std::uint64_t seed = 1;
  double threshold = 3.5;
  bool fixed_transform = false;
  bool machine = false;
};

struct BenchOptions {
  std::vector<std::string> methods;  // empty -> all
  std::uint64_t samples = 10000000;
  int repeats = 5;
  std::uint64_t seed = 0;
  bool machine = false;
};

struct SelftestOptions {
  std::string inject_fault;  // empty -> none; "transform-table" supported
};

int run_gen(const GenOptions& opt);
int run_test(const TestOptions& opt);
int run_bench(const BenchOptions& opt);
int run_selftest(const SelftestOptions& opt);

}  // namespace maxent::cli
