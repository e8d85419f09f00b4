// Copyright 2026 the maxent-rng developers
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <span>
#include <vector>

#include "commands.hpp"
#include "maxent/baselines.hpp"
#include "maxent/generator.hpp"

namespace maxent::cli {

namespace {

class OutputSink {
 public:
  explicit OutputSink(const std::string& path) {
    if (path == "-") {
      file_ = stdout;
    } else {
      file_ = std::fopen(path.c_str(), "wb");
      owned_ = file_ != nullptr;
      if (file_ == nullptr) {
        throw InvalidParameterError("cannot open output file: " + path);
      }
    }
  }
  ~OutputSink() {
    if (owned_) std::fclose(file_);
  }
  OutputSink(const OutputSink&) = delete;
  OutputSink& operator=(const OutputSink&) = delete;

  // One decimal value per line, 17 significant digits: round-trips the
  // double exactly.
  void write_text(std::span<const double> values) {
    for (const double v : values) {
      std::fprintf(file_, "%.17g\n", v);
    }
  }

  // Consecutive 8-byte little-endian IEEE-754 doubles, no header.
  void write_f64le(std::span<const double> values) {
    buf_.clear();
    buf_.reserve(values.size() * 8);
    for (const double v : values) {
      std::uint64_t bits;
      std::memcpy(&bits, &v, sizeof bits);
      for (int b = 0; b < 8; ++b) {
        buf_.push_back(static_cast<unsigned char>(bits >> (8 * b)));
      }
    }
    std::fwrite(buf_.data(), 1, buf_.size(), file_);
  }

 private:
  FILE* file_ = nullptr;
  bool owned_ = false;
  std::vector<unsigned char> buf_;
};

Chi2Method parse_chi2(const std::string& name) {
  if (name == "sqrt") return Chi2Method::sqrt_shift;
  if (name == "wh") return Chi2Method::wilson_hilferty;
  if (name == "cubic") return Chi2Method::cubic_a;
  throw InvalidParameterError("--chi2 must be one of sqrt|wh|cubic, got " +
                              name);
}

MixingScheme parse_mixing(const std::string& name) {
  if (name == "stride") return MixingScheme::stride_transpose;
  if (name == "affine") return MixingScheme::affine;
  throw InvalidParameterError("--mixing must be one of stride|affine, got " +
                              name);
}

}  // namespace

int run_gen(const GenOptions& opt) {
  if (opt.count == 0) {
    std::fprintf(stderr, "gen: --n must be >= 1\n");
    return kExitUsage;
  }
  const bool pool_method =
      opt.method == "wallace4" || opt.method == "rotation";
  const bool baseline_method =
      opt.method == "polar" || opt.method == "boxmuller";
  if (!pool_method && !baseline_method) {
    std::fprintf(stderr,
                 "gen: --method must be one of wallace4|rotation|polar|"
                 "boxmuller, got %s\n",
                 opt.method.c_str());
    return kExitUsage;
  }
  if (baseline_method && opt.pool_flags_given) {
    std::fprintf(stderr, "gen: %s is not valid with --method %s\n",
                 opt.first_pool_flag.c_str(), opt.method.c_str());
    return kExitUsage;
  }
  if (opt.format != "text" && opt.format != "f64le") {
    std::fprintf(stderr, "gen: --format must be text or f64le, got %s\n",
                 opt.format.c_str());
    return kExitUsage;
  }

  OutputSink sink(opt.out);
  const bool text = opt.format == "text";
  std::vector<double> chunk(1 << 14);
  std::uint64_t left = opt.count;

  if (pool_method) {
    GeneratorConfig cfg;
    cfg.pool_size = opt.pool_size;
    cfg.transform_family = opt.method == "wallace4"
                               ? TransformFamily::wallace4
                               : TransformFamily::rotation;
    cfg.mixing = parse_mixing(opt.mixing);
    cfg.chi2_method = parse_chi2(opt.chi2);
    cfg.discard_every = opt.discard;
    cfg.out_mean = opt.mean;
    cfg.out_sigma = opt.sigma;
    cfg.seed = opt.seed;
    Generator gen(cfg);
    while (left > 0) {
      const std::size_t take =
          static_cast<std::size_t>(std::min<std::uint64_t>(left, chunk.size()));
      gen.fill(std::span<double>{chunk.data(), take});
      const std::span<const double> view{chunk.data(), take};
      text ? sink.write_text(view) : sink.write_f64le(view);
      left -= take;
    }
  } else {
    BaselineState state(opt.seed);
    const bool polar = opt.method == "polar";
    while (left > 0) {
      const std::size_t take =
          static_cast<std::size_t>(std::min<std::uint64_t>(left, chunk.size()));
      for (std::size_t i = 0; i < take; ++i) {
        const double z = polar ? polar_next(state) : boxmuller_next(state);
        chunk[i] = z * opt.sigma + opt.mean;
      }
      const std::span<const double> view{chunk.data(), take};
      text ? sink.write_text(view) : sink.write_f64le(view);
      left -= take;
    }
  }
  return kExitPass;
}

}  // namespace maxent::cli
