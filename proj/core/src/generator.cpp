// Copyright 2026 the maxent-rng developers
// SPDX-License-Identifier: Apache-2.0

#include "maxent/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>
#include <utility>

namespace maxent {

namespace {

bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

// Compensated (Neumaier) sum of squares; the reference the cached value and
// the drift checks are compared against.
double recompute_sum_sq(std::span<const double> v) {
  double sum = 0.0;
  double comp = 0.0;
  for (const double x : v) {
    const double term = x * x;
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

// Read position for sequential index j under the configured mixing map,
// with the per-pass offset folded in. sweep selects the affine multiplier
// (alpha for the first, beta for the second rotation half-sweep).
std::uint64_t mix_index(const GeneratorConfig& cfg, int sweep,
                        std::uint64_t offset, std::uint64_t j) {
  const std::uint64_t n = cfg.pool_size;
  if (cfg.mixing == MixingScheme::stride_transpose) {
    const std::uint64_t rows = n / 4;
    const std::uint64_t stride = default_stride(rows);
    return (j % 4) * rows + (stride * (j / 4) + offset) % rows;
  }
  const auto [alpha, beta] = default_multipliers(n);
  const std::uint64_t mult = (sweep == 0) ? alpha : beta;
  return (mult % n * j + offset) % n;
}

void pass_wallace4(const GeneratorConfig& cfg, const PassPlan& plan,
                   std::span<const double> in, std::span<double> out) {
  const std::size_t n = cfg.pool_size;
  const WallaceMatrix m = wallace_variant(plan.wallace_variant);
  // Fold the halving and the row sign into one factor per output.
  std::array<double, 4> hsign;
  std::array<std::size_t, 4> src;
  for (int k = 0; k < 4; ++k) {
    hsign[static_cast<std::size_t>(k)] = 0.5 * m.row_sign[k];
    src[static_cast<std::size_t>(k)] = m.source_row[k];
  }
  double* o = out.data();
  if (cfg.mixing == MixingScheme::stride_transpose) {
    const std::size_t rows = n / 4;
    const std::size_t stride = default_stride(rows) % rows;
    std::size_t r = plan.offset[0] % rows;
    for (std::size_t b = 0; b < rows; ++b) {
      const double v0 = in[r];
      const double v1 = in[rows + r];
      const double v2 = in[2 * rows + r];
      const double v3 = in[3 * rows + r];
      const double a = v0 + v1;
      const double bb = v0 - v1;
      const double c = v2 + v3;
      const double d = v2 - v3;
      const double z[4] = {a - d, bb + c, bb - c, -a - d};
      o[0] = hsign[0] * z[src[0]];
      o[1] = hsign[1] * z[src[1]];
      o[2] = hsign[2] * z[src[2]];
      o[3] = hsign[3] * z[src[3]];
      o += 4;
      r += stride;
      if (r >= rows) r -= rows;
    }
  } else {
    const std::uint64_t mask = n - 1;
    const std::uint64_t step = default_multipliers(n).first & mask;
    std::uint64_t p = plan.offset[0] & mask;
    for (std::size_t b = 0; b < n; b += 4) {
      const double v0 = in[p];
      p = (p + step) & mask;
      const double v1 = in[p];
      p = (p + step) & mask;
      const double v2 = in[p];
      p = (p + step) & mask;
      const double v3 = in[p];
      p = (p + step) & mask;
      const double a = v0 + v1;
      const double bb = v0 - v1;
      const double c = v2 + v3;
      const double d = v2 - v3;
      const double z[4] = {a - d, bb + c, bb - c, -a - d};
      o[0] = hsign[0] * z[src[0]];
      o[1] = hsign[1] * z[src[1]];
      o[2] = hsign[2] * z[src[2]];
      o[3] = hsign[3] * z[src[3]];
      o += 4;
    }
  }
}

// One rotation half-sweep: gather through the mixing permutation, then
// rotate pairs of consecutive positions. The second sweep offsets the pair
// boundaries by one ("brick" layout), so repeated passes chain every
// position to every other.
void rotation_sweep(const GeneratorConfig& cfg, const PassPlan& plan,
                    int sweep, std::span<const double> in,
                    std::span<double> out) {
  const std::size_t n = cfg.pool_size;
  // gather
  if (cfg.mixing == MixingScheme::stride_transpose) {
    const std::size_t rows = n / 4;
    const std::size_t stride = default_stride(rows) % rows;
    std::size_t r = plan.offset[static_cast<std::size_t>(sweep)] % rows;
    double* o = out.data();
    for (std::size_t q = 0; q < rows; ++q) {
      o[0] = in[r];
      o[1] = in[rows + r];
      o[2] = in[2 * rows + r];
      o[3] = in[3 * rows + r];
      o += 4;
      r += stride;
      if (r >= rows) r -= rows;
    }
  } else {
    const std::uint64_t mask = n - 1;
    const auto [alpha, beta] = default_multipliers(n);
    const std::uint64_t step = (sweep == 0 ? alpha : beta) & mask;
    std::uint64_t p = plan.offset[static_cast<std::size_t>(sweep)] & mask;
    for (std::size_t j = 0; j < n; ++j) {
      out[j] = in[p];
      p = (p + step) & mask;
    }
  }
  // paired rotations, in place
  const RotationCoeffs rc = rotation_from_t(
      rotation_t_table()[static_cast<std::size_t>(
          plan.t_index[static_cast<std::size_t>(sweep)])]);
  const double g = plan.negate[static_cast<std::size_t>(sweep)] ? -1.0 : 1.0;
  const double ce = g * rc.c;
  const double se = g * rc.s;
  if (sweep == 0) {
    for (std::size_t i = 0; i < n; i += 2) {
      const double z1 = out[i];
      const double z2 = out[i + 1];
      out[i] = ce * z1 + se * z2;
      out[i + 1] = -se * z1 + ce * z2;
    }
  } else {
    for (std::size_t i = 1; i + 1 < n; i += 2) {
      const double z1 = out[i];
      const double z2 = out[i + 1];
      out[i] = ce * z1 + se * z2;
      out[i + 1] = -se * z1 + ce * z2;
    }
    const double z1 = out[n - 1];
    const double z2 = out[0];
    out[n - 1] = ce * z1 + se * z2;
    out[0] = -se * z1 + ce * z2;
  }
}

// Nonzero entries of the given half-sweep's matrix row. Each row has
// exactly two: the pair partner structure mirrors rotation_sweep.
struct SweepRowEntry {
  std::uint64_t col;
  double coef;
};

std::array<SweepRowEntry, 2> sweep_row(const GeneratorConfig& cfg,
                                       const PassPlan& plan, int sweep,
                                       std::uint64_t w) {
  const std::uint64_t n = cfg.pool_size;
  const RotationCoeffs rc = rotation_from_t(
      rotation_t_table()[static_cast<std::size_t>(
          plan.t_index[static_cast<std::size_t>(sweep)])]);
  const double g = plan.negate[static_cast<std::size_t>(sweep)] ? -1.0 : 1.0;
  const double ce = g * rc.c;
  const double se = g * rc.s;
  const std::uint64_t off = plan.offset[static_cast<std::size_t>(sweep)];
  std::uint64_t p1, p2;
  bool is_first;
  if (sweep == 0) {
    p1 = w & ~std::uint64_t{1};
    p2 = p1 + 1;
    is_first = (w == p1);
  } else {
    if (w == 0) {
      p1 = n - 1;
      p2 = 0;
      is_first = false;
    } else if (w % 2 == 1) {
      p1 = w;
      p2 = (w + 1) % n;
      is_first = true;
    } else {
      p1 = w - 1;
      p2 = w;
      is_first = false;
    }
  }
  const std::uint64_t c1 = mix_index(cfg, sweep, off, p1);
  const std::uint64_t c2 = mix_index(cfg, sweep, off, p2);
  if (is_first) return {SweepRowEntry{c1, ce}, SweepRowEntry{c2, se}};
  return {SweepRowEntry{c1, -se}, SweepRowEntry{c2, ce}};
}

}  // namespace

void GeneratorConfig::validate() const {
  if (pool_size < 32 || !is_power_of_two(pool_size) ||
      pool_size > (std::uint64_t{1} << 31)) {
    throw ConfigError("pool_size must be a power of two in [32, 2^31], got " +
                      std::to_string(pool_size));
  }
  if (discard_every < 1) {
    throw ConfigError("discard_every must be >= 1");
  }
  if (!std::isfinite(out_sigma) || out_sigma <= 0.0) {
    throw ConfigError("out_sigma must be positive and finite");
  }
  if (!std::isfinite(out_mean)) {
    throw ConfigError("out_mean must be finite");
  }
}

PassPlan decode_pass_plan(const GeneratorConfig& cfg,
                          std::uint64_t transform_word,
                          std::uint64_t offset_word) {
  PassPlan plan;
  const std::uint64_t n = cfg.pool_size;
  const std::uint64_t mask =
      (cfg.mixing == MixingScheme::stride_transpose) ? n / 4 - 1 : n - 1;
  plan.offset[0] = offset_word & mask;
  plan.offset[1] = (offset_word >> 32) & mask;
  if (cfg.transform_family == TransformFamily::wallace4) {
    plan.wallace_variant =
        static_cast<int>(transform_word % wallace_variant_count);
  } else {
    plan.t_index[0] = static_cast<int>(transform_word & 15);
    plan.negate[0] = (transform_word >> 4) & 1;
    plan.t_index[1] = static_cast<int>((transform_word >> 5) & 15);
    plan.negate[1] = (transform_word >> 9) & 1;
  }
  return plan;
}

void run_pass(const GeneratorConfig& cfg, const PassPlan& plan,
              std::span<const double> in, std::span<double> out) {
  if (in.size() != cfg.pool_size || out.size() != cfg.pool_size) {
    throw InvalidParameterError("run_pass: buffers must match pool_size");
  }
  if (cfg.transform_family == TransformFamily::wallace4) {
    pass_wallace4(cfg, plan, in, out);
    return;
  }
  std::vector<double> tmp(cfg.pool_size);
  rotation_sweep(cfg, plan, 0, in, tmp);
  rotation_sweep(cfg, plan, 1, tmp, out);
}

double pass_coefficient(const GeneratorConfig& cfg, const PassPlan& plan,
                        std::size_t out_i, std::size_t in_j) {
  const std::size_t n = cfg.pool_size;
  if (out_i >= n || in_j >= n) {
    throw InvalidParameterError("pass_coefficient: index out of range");
  }
  if (cfg.transform_family == TransformFamily::wallace4) {
    const WallaceMatrix m = wallace_variant(plan.wallace_variant);
    const std::size_t b = out_i / 4;
    const std::size_t k = out_i % 4;
    for (std::size_t col = 0; col < 4; ++col) {
      if (mix_index(cfg, 0, plan.offset[0], 4 * b + col) == in_j) {
        return m.entries[k][col];
      }
    }
    return 0.0;
  }
  double total = 0.0;
  for (const auto& [mid, c2] : sweep_row(cfg, plan, 1, out_i)) {
    for (const auto& [col, c1] : sweep_row(cfg, plan, 0, mid)) {
      if (col == in_j) total += c2 * c1;
    }
  }
  return total;
}

std::pair<std::uint64_t, std::uint64_t> default_multipliers(std::size_t n) {
  const auto near_odd = [](double x) {
    return static_cast<std::uint64_t>(std::llround(x)) | 1;
  };
  std::uint64_t alpha = near_odd(0.382 * static_cast<double>(n));
  std::uint64_t beta = near_odd(0.618 * static_cast<double>(n));
  if (alpha == beta) beta += 2;
  return {alpha, beta};
}

Generator::Generator(GeneratorConfig cfg) : cfg_(cfg) {
  cfg_.validate();
  chi2_ = Chi2Params::for_nu(cfg_.pool_size);
  const std::size_t n = cfg_.pool_size;
  pool_.raw.resize(n);
  scratch_.resize(n);
  out_.reserve(n - 1);

  BaselineState init(cfg_.seed);
  for (auto& x : pool_.raw) x = polar_next(init);
  pool_.reserved_prev = polar_next(init);
  // The per-pass selection stream continues where initialization stopped,
  // so one seed drives everything.
  uniform_ = init.uniform;

  const double ss = recompute_sum_sq(pool_.raw);
  const double k = std::sqrt(static_cast<double>(n) / ss);
  for (auto& x : pool_.raw) x *= k;
  pool_.sum_sq = recompute_sum_sq(pool_.raw);

  // Warm-up erases any initialization artifact before the first emission.
  for (int i = 0; i < 16; ++i) step_pass();
}

void Generator::step_pass() {
  const std::uint64_t transform_word = uniform_bits(uniform_);
  const std::uint64_t offset_word = uniform_bits(uniform_);
  const PassPlan plan = cfg_.diag.fixed_transform
                            ? PassPlan{}
                            : decode_pass_plan(cfg_, transform_word, offset_word);
  run_pass(cfg_, plan, pool_.raw, scratch_);
  pool_.raw.swap(scratch_);
  ++pool_.pass_count;
  if (pool_.pass_count % 256 == 0) renormalize_();
}

void Generator::renormalize_() {
  const double ss = recompute_sum_sq(pool_.raw);
  if (ss <= 0.0) return;  // injected degenerate pool; nothing to normalize
  const double k = std::sqrt(static_cast<double>(cfg_.pool_size) / ss);
  for (auto& x : pool_.raw) x *= k;
  pool_.sum_sq = recompute_sum_sq(pool_.raw);
}

void Generator::refill_() {
  for (std::size_t i = 0; i < cfg_.discard_every; ++i) step_pass();

  const std::size_t n = cfg_.pool_size;
  bool clamped = false;
  const double s =
      cfg_.diag.disable_chi2
          ? pool_.sum_sq
          : chi2_sample(pool_.reserved_prev, chi2_, cfg_.chi2_method, &clamped);
  if (clamped) ++clamp_count_;
  const double r = pool_.sum_sq > 0.0 ? std::sqrt(s / pool_.sum_sq) : 0.0;
  const double scale = cfg_.out_sigma * r;
  out_.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    out_[i] = pool_.raw[i] * scale + cfg_.out_mean;
  }
  // The scaled n-th value feeds the chi-squared approximation of the
  // *next* pool; sourcing it from the previous pool keeps a large draw
  // from correlating with a small remaining sum of squares. sigma and
  // mean are not applied; it must stay a standard normal.
  pool_.reserved_prev = pool_.raw[n - 1] * r;
  last_chi2_ = s;
  cursor_ = 0;
}

std::vector<double> Generator::fill(std::size_t count) {
  if (count < 1) {
    throw InvalidParameterError("fill: count must be >= 1");
  }
  std::vector<double> out(count);
  fill(std::span<double>{out});
  return out;
}

void Generator::fill(std::span<double> out) {
  if (out.empty()) {
    throw InvalidParameterError("fill: count must be >= 1");
  }
  std::size_t i = 0;
  while (i < out.size()) {
    if (cursor_ == out_.size()) refill_();
    const std::size_t take = std::min(out.size() - i, out_.size() - cursor_);
    std::memcpy(out.data() + i, out_.data() + cursor_, take * sizeof(double));
    cursor_ += take;
    i += take;
  }
}

Generator::PoolOutput Generator::next_pool() {
  refill_();
  cursor_ = out_.size();
  return {std::span<const double>{out_}, pool_.reserved_prev, last_chi2_};
}

void Generator::inject_pool(std::span<const double> values) {
  if (values.size() != cfg_.pool_size) {
    throw InvalidParameterError("inject_pool: size must equal pool_size");
  }
  std::copy(values.begin(), values.end(), pool_.raw.begin());
  pool_.sum_sq = recompute_sum_sq(pool_.raw);
}

}  // namespace maxent
