// Copyright 2026 the maxent-rng developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <array>
#include <optional>
#include <utility>

#include "maxent/errors.hpp"

namespace maxent {

// ---------------------------------------------------------------------------
// Helper uniform generator: xoshiro256** (Blackman & Vigna, 2018).
//
//   result = rotl(s1 * 5, 7) * 9
//   t  = s1 << 17
//   s2 ^= s0;  s3 ^= s1;  s1 ^= s2;  s0 ^= s3
//   s2 ^= t;   s3 = rotl(s3, 45)
//
// Period 2^256 - 1, 32 bytes of state. The state is expanded from a 64-bit
// seed with SplitMix64, which also guarantees a nonzero state.
// ---------------------------------------------------------------------------

struct UniformState {
  std::array<std::uint64_t, 4> s{1, 2, 3, 4};
  std::uint64_t draws = 0;  // words consumed since seeding

  UniformState() = default;
  explicit UniformState(std::uint64_t seed);
};

// SplitMix64 step, exposed for seeding and tests.
std::uint64_t splitmix64(std::uint64_t& state);

// Next 64-bit word. Counts as one draw.
std::uint64_t uniform_bits(UniformState& u);

// Next double in [0, 1), from the high 53 bits of one word.
double uniform_next(UniformState& u);

// ---------------------------------------------------------------------------
// Conventional normal generators. Polar and Box-Muller produce pairs; one
// value is cached between calls.
// ---------------------------------------------------------------------------

struct BaselineState {
  UniformState uniform;
  std::optional<double> cached;

  BaselineState() = default;
  explicit BaselineState(std::uint64_t seed) : uniform(seed) {}
};

// Polar method: draw (u, v) uniform on [-1,1)^2, accept when 0 < u^2+v^2 < 1,
// return u*sqrt(-2 ln(s2)/s2) and cache the v twin. Acceptance rate pi/4.
double polar_next(BaselineState& s);

// (sqrt(-2 ln u1) cos(2 pi u2), sqrt(-2 ln u1) sin(2 pi u2)).
// Throws InvalidParameterError unless 0 < u1 <= 1 and 0 <= u2 < 1.
std::pair<double, double> boxmuller_pair(double u1, double u2);

// Streaming Box-Muller over the uniform helper. A raw uniform of exactly 0
// is mapped to 2^-53, the smallest positive uniform step, so the log is
// always defined.
double boxmuller_next(BaselineState& s);

// Sum of nu squared Polar normals: an exact (but slow) chi^2_nu sampler,
// used as the reference the fast approximations are tested against.
double exact_chi2_oracle(std::uint64_t nu, BaselineState& s);

}  // namespace maxent
