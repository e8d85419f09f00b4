// Copyright 2026 the maxent-rng developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "maxent/baselines.hpp"
#include "maxent/chi2.hpp"
#include "maxent/transforms.hpp"

namespace maxent {

enum class TransformFamily { wallace4, rotation };
enum class MixingScheme { stride_transpose, affine };

struct GeneratorConfig {
  std::size_t pool_size = 1024;  // power of two, >= 32
  TransformFamily transform_family = TransformFamily::wallace4;
  MixingScheme mixing = MixingScheme::stride_transpose;
  Chi2Method chi2_method = Chi2Method::cubic_a;
  std::size_t discard_every = 1;  // emit only every k-th pool
  double out_mean = 0.0;
  double out_sigma = 1.0;
  std::uint64_t seed = 0;

  // Diagnostic switches for the defect-detection suite. Defaults give the
  // production generator.
  struct Diagnostics {
    // Pin the transform variant, rotation table entries and permutation
    // offsets for every pass. Reintroduces the cross-pool correlation the
    // randomized variants are there to remove.
    bool fixed_transform = false;
    // Force S := sum of squares, i.e. no chi-squared correction: the
    // per-pool sum of squares of the output stays constant.
    bool disable_chi2 = false;
  } diag;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

// Per-pass randomization, decoded from two words of the helper uniform
// generator. In fixed-transform mode the default-constructed plan is used
// for every pass.
struct PassPlan {
  int wallace_variant = 0;                   // [0, wallace_variant_count)
  std::array<int, 2> t_index{0, 0};          // rotation table entry per sweep
  std::array<bool, 2> negate{false, false};  // global sign per sweep
  std::array<std::uint64_t, 2> offset{0, 0}; // permutation offset per sweep
};

PassPlan decode_pass_plan(const GeneratorConfig& cfg,
                          std::uint64_t transform_word,
                          std::uint64_t offset_word);

// One full regeneration pass: gather positions through the mixing
// permutation and transform disjoint blocks (4-blocks for wallace4; two
// paired half-sweeps for rotation). Orthogonal, so ||out|| = ||in|| up to
// rounding. in and out must have size cfg.pool_size and must not alias.
void run_pass(const GeneratorConfig& cfg, const PassPlan& plan,
              std::span<const double> in, std::span<double> out);

// Entry (out_i, in_j) of the composed pass matrix, from the permutation and
// block structure directly (no pass is executed). This is the q_{i,j} the
// fixed-transform correlation diagnostic checks against.
double pass_coefficient(const GeneratorConfig& cfg, const PassPlan& plan,
                        std::size_t out_i, std::size_t in_j);

// Default affine multipliers for a pool of size n: the odd integers nearest
// the golden-section fractions 0.382 n and 0.618 n.
std::pair<std::uint64_t, std::uint64_t> default_multipliers(std::size_t n);

// The pool of raw (unscaled) variates. The sum of squares is invariant
// under the pass transforms and is cached; the pool is renormalized to
// sum_sq = n every 256 passes to absorb rounding drift.
struct NormalPool {
  std::vector<double> raw;
  double reserved_prev = 0.0;  // scaled n-th value withheld from the
                               // previous pool, ~N(0,1)
  std::uint64_t pass_count = 0;
  double sum_sq = 0.0;
};

// Maximum-entropy normal generator. The pool is seeded from the Polar
// baseline, renormalized, and warmed up with 16 passes. Each emitted pool
// yields pool_size - 1 variates scaled by sigma*sqrt(S/sum_sq) with the
// mean added, where S approximates chi^2_nu from the reserved variate of
// the previous pool; the n-th value (scaled to unit variance only) becomes
// the next reserved variate.
//
// A Generator instance is single-threaded; independent instances are fine
// in parallel. Identical config gives a bit-identical stream.
class Generator {
 public:
  explicit Generator(GeneratorConfig cfg);

  double next_normal() {
    if (cursor_ == out_.size()) refill_();
    return out_[cursor_++];
  }

  // Exactly equivalent to `count` next_normal() calls. count >= 1.
  std::vector<double> fill(std::size_t count);
  void fill(std::span<double> out);

  // Pool-level access: advances to the next emitted pool and exposes its
  // pool_size - 1 values plus bookkeeping. The span is valid until the
  // generator advances again; any partially consumed next_normal() buffer
  // is discarded.
  struct PoolOutput {
    std::span<const double> values;
    double reserved;   // new reserved variate (unit-variance scale)
    double chi2_draw;  // S used to scale this pool
  };
  PoolOutput next_pool();

  const GeneratorConfig& config() const { return cfg_; }
  const NormalPool& pool() const { return pool_; }
  std::uint64_t pass_count() const { return pool_.pass_count; }
  std::uint64_t uniform_draws() const { return uniform_.draws; }
  std::uint64_t chi2_clamp_count() const { return clamp_count_; }

  // Diagnostic/test support --------------------------------------------

  // One regeneration pass, no emission.
  void step_pass();

  // Replace the raw pool (sum of squares is recomputed, not renormalized).
  void inject_pool(std::span<const double> values);

 private:
  void refill_();
  void renormalize_();

  GeneratorConfig cfg_;
  Chi2Params chi2_;
  NormalPool pool_;
  std::vector<double> scratch_;
  std::vector<double> out_;
  std::size_t cursor_ = 0;
  UniformState uniform_;
  std::uint64_t clamp_count_ = 0;
  double last_chi2_ = 0.0;
};

}  // namespace maxent
