// Copyright 2026 the maxent-rng developers
// SPDX-License-Identifier: Apache-2.0

#include "maxent/baselines.hpp"

#include <cmath>
#include <numbers>

namespace maxent {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

UniformState::UniformState(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& word : s) word = splitmix64(sm);
  // SplitMix64 is a bijection of a counter sequence, so the four words can
  // not all be zero; the xoshiro state is always valid.
}

std::uint64_t uniform_bits(UniformState& u) {
  auto& s = u.s;
  const std::uint64_t result = rotl(s[1] * 5, 7) * 9;
  const std::uint64_t t = s[1] << 17;
  s[2] ^= s[0];
  s[3] ^= s[1];
  s[1] ^= s[2];
  s[0] ^= s[3];
  s[2] ^= t;
  s[3] = rotl(s[3], 45);
  ++u.draws;
  return result;
}

double uniform_next(UniformState& u) {
  return static_cast<double>(uniform_bits(u) >> 11) * 0x1.0p-53;
}

double polar_next(BaselineState& s) {
  if (s.cached) {
    const double v = *s.cached;
    s.cached.reset();
    return v;
  }
  for (;;) {
    const double u = 2.0 * uniform_next(s.uniform) - 1.0;
    const double v = 2.0 * uniform_next(s.uniform) - 1.0;
    const double s2 = u * u + v * v;
    if (s2 >= 1.0 || s2 == 0.0) continue;
    const double scale = std::sqrt(-2.0 * std::log(s2) / s2);
    s.cached = v * scale;
    return u * scale;
  }
}

std::pair<double, double> boxmuller_pair(double u1, double u2) {
  if (!(u1 > 0.0) || u1 > 1.0) {
    throw InvalidParameterError("boxmuller_pair: u1 must be in (0, 1]");
  }
  if (!(u2 >= 0.0) || u2 >= 1.0) {
    throw InvalidParameterError("boxmuller_pair: u2 must be in [0, 1)");
  }
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(angle), r * std::sin(angle)};
}

double boxmuller_next(BaselineState& s) {
  if (s.cached) {
    const double v = *s.cached;
    s.cached.reset();
    return v;
  }
  double u1 = uniform_next(s.uniform);
  if (u1 == 0.0) u1 = 0x1.0p-53;  // smallest positive uniform step
  const double u2 = uniform_next(s.uniform);
  const auto [z1, z2] = boxmuller_pair(u1, u2);
  s.cached = z2;
  return z1;
}

double exact_chi2_oracle(std::uint64_t nu, BaselineState& s) {
  if (nu < 1) {
    throw InvalidParameterError("exact_chi2_oracle: nu must be >= 1");
  }
  double sum = 0.0;
  for (std::uint64_t i = 0; i < nu; ++i) {
    const double z = polar_next(s);
    sum += z * z;
  }
  return sum;
}

}  // namespace maxent
