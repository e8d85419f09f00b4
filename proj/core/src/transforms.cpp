// Copyright 2026 the maxent-rng developers
// SPDX-License-Identifier: Apache-2.0

#include "maxent/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace maxent {

namespace {

constexpr int kA1Signs[4][4] = {
    {1, 1, -1, 1},
    {1, -1, 1, 1},
    {1, -1, -1, -1},
    {-1, -1, -1, 1},
};

// The 24 permutations of {0,1,2,3} in lexicographic order; index 0 is the
// identity, so variant 0 is the base matrix itself.
const std::array<std::array<std::uint8_t, 4>, 24>& row_permutations() {
  static const auto perms = [] {
    std::array<std::array<std::uint8_t, 4>, 24> out{};
    std::array<std::uint8_t, 4> p{0, 1, 2, 3};
    for (auto& slot : out) {
      slot = p;
      std::next_permutation(p.begin(), p.end());
    }
    return out;
  }();
  return perms;
}

// Half-angle tangents for 16 angles evenly spaced over the window where
// both cos and sin stay in [0.05, 0.95].
constexpr std::array<double, 16> kTTable = {
    0.17515921255944322, 0.20545999704867826, 0.23612715828175562,
    0.26722085811750929, 0.29880442640621707, 0.33094491040752022,
    0.36371368625338224, 0.39718714490736762, 0.43144746735599143,
    0.46658350661180781, 0.50269179765496275, 0.53987772087748898,
    0.57825685016821282, 0.61795652380944743, 0.65911768527913839,
    0.70189705243776379,
};

bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace

RotationCoeffs rotation_from_t(double t) {
  if (!std::isfinite(t)) {
    throw InvalidParameterError("rotation_from_t: t must be finite");
  }
  double c, s;
  if (std::abs(t) <= 1.0) {
    const double den = 1.0 + t * t;
    c = (1.0 - t * t) / den;
    s = (2.0 * t) / den;
  } else {
    // Algebraically identical form in u = 1/t; avoids overflow of t^2 and
    // keeps c^2 + s^2 = 1 tight for huge |t|.
    const double u = 1.0 / t;
    const double den = 1.0 + u * u;
    c = (u * u - 1.0) / den;
    s = (2.0 * u) / den;
  }
  return {c, s, t};
}

std::span<const double> rotation_t_table() { return kTTable; }

WallaceMatrix wallace_a1() { return wallace_variant(0); }

WallaceMatrix wallace_variant(int variant_id) {
  if (variant_id < 0 ||
      static_cast<std::size_t>(variant_id) >= wallace_variant_count) {
    throw InvalidParameterError("wallace_variant: id out of range [0, " +
                                std::to_string(wallace_variant_count) + ")");
  }
  const unsigned sign_mask = static_cast<unsigned>(variant_id) & 15u;
  const unsigned perm_index = static_cast<unsigned>(variant_id) >> 4;
  const auto& perm = row_permutations()[perm_index];

  WallaceMatrix m;
  m.variant_id = variant_id;
  for (int k = 0; k < 4; ++k) {
    m.source_row[k] = perm[static_cast<std::size_t>(k)];
    m.row_sign[k] = (sign_mask >> k) & 1u ? -1.0 : 1.0;
    for (int j = 0; j < 4; ++j) {
      m.entries[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] =
          m.row_sign[k] * 0.5 * kA1Signs[m.source_row[k]][j];
    }
  }
  return m;
}

std::vector<WallaceMatrix> wallace_variants(std::size_t count) {
  if (count < 1 || count > wallace_variant_count) {
    throw InvalidParameterError(
        "wallace_variants: count must be in [1, " +
        std::to_string(wallace_variant_count) + "], got " +
        std::to_string(count));
  }
  std::vector<WallaceMatrix> out;
  out.reserve(count);
  for (std::size_t id = 0; id < count; ++id) {
    out.push_back(wallace_variant(static_cast<int>(id)));
  }
  return out;
}

void AffinePermutation::validate() const {
  if (multiplier == 0 || multiplier % 2 == 0) {
    throw InvalidParameterError(
        "AffinePermutation: multiplier must be odd and positive");
  }
  if (!is_power_of_two(modulus) || modulus > (std::uint64_t{1} << 31)) {
    throw InvalidParameterError(
        "AffinePermutation: modulus must be a power of two <= 2^31");
  }
}

std::uint64_t permute_index(std::uint64_t j, const AffinePermutation& p) {
  p.validate();
  if (j >= p.modulus) {
    throw InvalidParameterError("permute_index: index " + std::to_string(j) +
                                " out of range for modulus " +
                                std::to_string(p.modulus));
  }
  // Reduce first so the product stays below 2^62 for any modulus <= 2^31.
  const std::uint64_t a = p.multiplier % p.modulus;
  const std::uint64_t g = p.offset % p.modulus;
  return (a * j + g) % p.modulus;
}

void StrideTranspose::validate() const {
  if (rows == 0) {
    throw InvalidParameterError("StrideTranspose: rows must be positive");
  }
  if (stride == 0 || stride % 2 == 0 || std::gcd(stride, rows) != 1) {
    throw InvalidParameterError(
        "StrideTranspose: stride must be odd and coprime to rows");
  }
}

std::uint64_t stride_transpose_index(std::uint64_t j,
                                     const StrideTranspose& st) {
  st.validate();
  if (j >= 4 * st.rows) {
    throw InvalidParameterError("stride_transpose_index: index " +
                                std::to_string(j) + " out of range for pool " +
                                std::to_string(4 * st.rows));
  }
  const std::uint64_t q = j / 4;
  const std::uint64_t c = j % 4;
  return c * st.rows + (st.stride % st.rows) * q % st.rows;
}

std::uint64_t default_stride(std::uint64_t rows) {
  if (rows == 0) {
    throw InvalidParameterError("default_stride: rows must be positive");
  }
  std::uint64_t k = rows / 3 + 1;
  if (k % 2 == 0) ++k;
  while (std::gcd(k, rows) != 1) k += 2;
  return k;
}

}  // namespace maxent
