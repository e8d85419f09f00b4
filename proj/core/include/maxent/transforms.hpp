// Copyright 2026 the maxent-rng developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "maxent/errors.hpp"

namespace maxent {

// ---------------------------------------------------------------------------
// Plane rotations parametrized by the half-angle tangent t = tan(theta/2):
//
//   cos theta = (1 - t^2) / (1 + t^2)
//   sin theta = 2t / (1 + t^2)
//
// The angle itself is never computed and no trigonometric function is
// evaluated.
// ---------------------------------------------------------------------------

struct RotationCoeffs {
  double c;  // cos theta
  double s;  // sin theta
  double t;  // tan(theta/2)
};

// Throws InvalidParameterError for non-finite t. Guarantees c^2 + s^2 = 1
// to a few ulp for any finite t, including very large |t|.
RotationCoeffs rotation_from_t(double t);

// (x1, x2) -> (c x1 + s x2, -s x1 + c x2). Preserves x1^2 + x2^2 up to
// rounding.
inline std::pair<double, double> apply_rotation(double x1, double x2,
                                                const RotationCoeffs& r) {
  return {r.c * x1 + r.s * x2, -r.s * x1 + r.c * x2};
}

// Fixed table of 16 half-angle tangents. Values are chosen so the resulting
// angles are spread over (0, pi/2) with both cos and sin in [0.05, 0.95];
// near-identity and near-quarter-turn rotations are excluded because they
// mix poorly.
std::span<const double> rotation_t_table();

// ---------------------------------------------------------------------------
// 4x4 orthogonal matrices with every entry +-1/2. The base matrix is
//
//         [  1  1 -1  1 ]
//   (1/2) [  1 -1  1  1 ]
//         [  1 -1 -1 -1 ]
//         [ -1 -1 -1  1 ]
//
// and the remaining variants are row-sign flips and row permutations of it,
// which preserve both orthogonality and the +-1/2 entry structure. There are
// 24 row permutations x 16 sign masks = 384 distinct variants; the family is
// closed under negation, so the entrywise mean over all variants is zero.
// ---------------------------------------------------------------------------

inline constexpr std::size_t wallace_variant_count = 384;

struct WallaceMatrix {
  std::array<std::array<double, 4>, 4> entries;  // each entry +-1/2
  int variant_id = 0;
  // Decomposition used by the fast apply path:
  //   entries[k][m] = row_sign[k] * A1[source_row[k]][m]
  std::array<std::uint8_t, 4> source_row{0, 1, 2, 3};
  std::array<double, 4> row_sign{1.0, 1.0, 1.0, 1.0};
};

// The base matrix (variant 0).
WallaceMatrix wallace_a1();

// Variant by id in [0, wallace_variant_count). id 0 is the base matrix.
// The enumeration is fixed: low four bits select row-sign flips, the rest
// selects one of the 24 row permutations in lexicographic order.
WallaceMatrix wallace_variant(int variant_id);

// First `count` variants of the fixed enumeration. count must be in
// [1, wallace_variant_count].
std::vector<WallaceMatrix> wallace_variants(std::size_t count);

// m * v via the signed butterfly: eight additions and one halving per
// output, no general multiplications.
inline std::array<double, 4> apply_wallace4(const std::array<double, 4>& v,
                                            const WallaceMatrix& m) {
  const double a = v[0] + v[1];
  const double b = v[0] - v[1];
  const double c = v[2] + v[3];
  const double d = v[2] - v[3];
  // Unhalved base-matrix outputs; the halving is folded into the signed
  // gather below.
  const std::array<double, 4> z{a - d, b + c, b - c, -a - d};
  std::array<double, 4> out;
  for (int k = 0; k < 4; ++k) {
    out[k] = (0.5 * m.row_sign[k]) * z[m.source_row[k]];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Index permutations used for mixing.
// ---------------------------------------------------------------------------

// j -> (multiplier * j + offset) mod modulus. With an odd multiplier and a
// power-of-two modulus this is a bijection on {0, ..., modulus-1}.
struct AffinePermutation {
  std::uint64_t multiplier;
  std::uint64_t offset;
  std::uint64_t modulus;

  // Throws InvalidParameterError unless multiplier is odd and positive and
  // modulus is a power of two (<= 2^31).
  void validate() const;
};

std::uint64_t permute_index(std::uint64_t j, const AffinePermutation& p);

// View a pool of 4*rows values as a rows x 4 matrix, transpose it, and step
// the row index by `stride` (mod rows). Element j = 4q + c lands at
// c*rows + (stride*q mod rows). Bijective iff gcd(stride, rows) = 1.
struct StrideTranspose {
  std::uint64_t rows;
  std::uint64_t stride;

  void validate() const;
};

std::uint64_t stride_transpose_index(std::uint64_t j, const StrideTranspose& st);

// Default stride: the smallest odd integer > rows/3 coprime to rows. Gives
// long row cycles and is reproducible across runs.
std::uint64_t default_stride(std::uint64_t rows);

}  // namespace maxent
