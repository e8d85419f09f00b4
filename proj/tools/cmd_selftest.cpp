// Copyright 2026 the maxent-rng developers
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "commands.hpp"
#include "maxent/baselines.hpp"
#include "maxent/chi2.hpp"
#include "maxent/generator.hpp"
#include "maxent/transforms.hpp"

namespace maxent::cli {

namespace {

struct Check {
  std::string name;
  std::function<bool(std::string&)> fn;
};

bool nearly(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::vector<Check> build_checks(const std::string& inject_fault) {
  std::vector<Check> checks;

  checks.push_back({"wallace-orthogonality", [inject_fault](std::string& why) {
    auto variants = wallace_variants(wallace_variant_count);
    if (inject_fault == "transform-table") {
      variants[17].entries[0][0] += 0.25;  // deliberate corruption
    }
    for (const auto& m : variants) {
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
          double dot = 0.0;
          for (int k = 0; k < 4; ++k) dot += m.entries[k][i] * m.entries[k][j];
          const double want = i == j ? 1.0 : 0.0;
          if (std::abs(dot - want) > 1e-15) {
            why = "variant " + std::to_string(m.variant_id) +
                  " M^T M mismatch at (" + std::to_string(i) + "," +
                  std::to_string(j) + ")";
            return false;
          }
        }
      }
    }
    return true;
  }});

  checks.push_back({"wallace-a1-structure", [](std::string& why) {
    const auto a1 = wallace_a1();
    const std::array<double, 4> e1{1, 0, 0, 0};
    const auto col = apply_wallace4(e1, a1);
    if (col[0] != 0.5 || col[1] != 0.5 || col[2] != 0.5 || col[3] != -0.5) {
      why = "A1 * e1 wrong";
      return false;
    }
    for (const auto& row : a1.entries) {
      for (const double v : row) {
        if (std::abs(v) != 0.5) {
          why = "entry magnitude not 1/2";
          return false;
        }
      }
    }
    return true;
  }});

  checks.push_back({"wallace-apply-matches-naive", [](std::string& why) {
    UniformState u(99);
    for (int trial = 0; trial < 1000; ++trial) {
      const auto m = wallace_variant(static_cast<int>(
          uniform_bits(u) % wallace_variant_count));
      std::array<double, 4> v;
      for (auto& x : v) x = 2.0 * uniform_next(u) - 1.0;
      const auto fast = apply_wallace4(v, m);
      for (int k = 0; k < 4; ++k) {
        double naive = 0.0;
        for (int j = 0; j < 4; ++j) naive += m.entries[k][j] * v[j];
        if (std::abs(fast[k] - naive) > 2e-15) {
          why = "butterfly disagrees with naive multiply";
          return false;
        }
      }
    }
    return true;
  }});

  checks.push_back({"rotation-unit-norm", [](std::string& why) {
    for (const double t : rotation_t_table()) {
      const auto r = rotation_from_t(t);
      if (!nearly(r.c * r.c + r.s * r.s, 1.0, 1e-15)) {
        why = "c^2+s^2 != 1 in the t table";
        return false;
      }
    }
    UniformState u(3);
    for (int i = 0; i < 1000; ++i) {
      const double t = (uniform_next(u) - 0.5) * 1e6;
      const auto r = rotation_from_t(t);
      if (!nearly(r.c * r.c + r.s * r.s, 1.0, 4e-16)) {
        why = "c^2+s^2 != 1 at t=" + std::to_string(t);
        return false;
      }
    }
    return true;
  }});

  checks.push_back({"rotation-exact-points", [](std::string& why) {
    const auto id = rotation_from_t(0.0);
    const auto quarter = rotation_from_t(1.0);
    const auto half = rotation_from_t(0.5);
    if (id.c != 1.0 || id.s != 0.0 || quarter.c != 0.0 || quarter.s != 1.0 ||
        half.c != 0.6 || half.s != 0.8) {
      why = "exact rational rotation values wrong";
      return false;
    }
    return true;
  }});

  checks.push_back({"affine-bijectivity", [](std::string& why) {
    const AffinePermutation p{3, 1, 8};
    if (permute_index(3, p) != 2) {
      why = "(3*3+1) mod 8 != 2";
      return false;
    }
    const auto [alpha, beta] = default_multipliers(1024);
    for (const std::uint64_t mult : {alpha, beta}) {
      std::vector<bool> seen(1024, false);
      for (std::uint64_t j = 0; j < 1024; ++j) {
        seen[permute_index(j, {mult, 7, 1024})] = true;
      }
      if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        why = "affine image is not the full index set";
        return false;
      }
    }
    return true;
  }});

  checks.push_back({"stride-bijectivity", [](std::string& why) {
    const StrideTranspose st{256, 7};
    std::vector<bool> seen(1024, false);
    for (std::uint64_t j = 0; j < 1024; ++j) {
      seen[stride_transpose_index(j, st)] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      why = "stride-transpose image is not the full index set";
      return false;
    }
    return true;
  }});

  checks.push_back({"chi2-spot-values", [](std::string& why) {
    const auto params = Chi2Params::for_nu(1024);
    if (!nearly(chi2_sample(0.0, params, Chi2Method::sqrt_shift), 1023.5,
                1e-9)) {
      why = "sqrt_shift at x=0 != (2nu-1)/2";
      return false;
    }
    if (!nearly(chi2_sample(0.0, params, Chi2Method::wilson_hilferty),
                1023.3334, 1e-3)) {
      why = "wilson_hilferty at x=0 off";
      return false;
    }
    if (!nearly(chi2_sample(0.0, params, Chi2Method::cubic_a),
                1024.0 - params.a_value, 1e-9 * 1024)) {
      why = "cubic_a at x=0 != nu - A";
      return false;
    }
    return true;
  }});

  checks.push_back({"chi2-cubic-residual", [](std::string& why) {
    for (const std::uint64_t nu : {2ULL, 64ULL, 1024ULL, 1000000ULL}) {
      const double a = compute_a(nu);
      const double nud = static_cast<double>(nu);
      const double res = a * a * a - 3.0 * nud * a + 2.0 * nud;
      if (std::abs(res) > 1e-6 * nud) {
        why = "cubic residual too large at nu=" + std::to_string(nu);
        return false;
      }
    }
    if (std::abs(compute_a(1000000) - 2.0 / 3.0) > 1e-6) {
      why = "A does not approach 2/3";
      return false;
    }
    return true;
  }});

  checks.push_back({"uniform-range-determinism", [](std::string& why) {
    UniformState a(12345), b(12345);
    for (int i = 0; i < 100000; ++i) {
      const double x = uniform_next(a);
      if (!(x >= 0.0 && x < 1.0)) {
        why = "uniform outside [0,1)";
        return false;
      }
      if (x != uniform_next(b)) {
        why = "same seed diverged";
        return false;
      }
    }
    return true;
  }});

  checks.push_back({"baseline-sanity", [](std::string& why) {
    BaselineState s(5);
    const std::uint64_t draws0 = s.uniform.draws;
    const int n = 100000;
    for (int i = 0; i < n; ++i) polar_next(s);
    const double per_normal =
        static_cast<double>(s.uniform.draws - draws0) / n;
    if (per_normal < 1.1 || per_normal > 1.45) {
      why = "polar uniform consumption implausible";
      return false;
    }
    const auto [z1, z2] = boxmuller_pair(1.0, 0.25);
    if (z1 != 0.0 || std::abs(z2) > 1e-16) {
      why = "boxmuller(1,.) != (0,0)";
      return false;
    }
    const auto [g1, g2] = boxmuller_pair(std::exp(-2.0), 0.0);
    if (!nearly(g1, 2.0, 1e-12) || g2 != 0.0) {
      why = "boxmuller(e^-2,0) != (2,0)";
      return false;
    }
    return true;
  }});

  checks.push_back({"generator-determinism", [](std::string& why) {
    GeneratorConfig cfg;
    cfg.seed = 7;
    Generator a(cfg), b(cfg);
    for (int i = 0; i < 10000; ++i) {
      if (a.next_normal() != b.next_normal()) {
        why = "same config diverged";
        return false;
      }
    }
    return true;
  }});

  checks.push_back({"generator-norm-conservation", [](std::string& why) {
    GeneratorConfig cfg;
    cfg.pool_size = 256;
    cfg.seed = 11;
    Generator gen(cfg);
    for (int p = 0; p < 100; ++p) {
      gen.step_pass();
      double ss = 0.0;
      for (const double v : gen.pool().raw) ss += v * v;
      if (std::abs(ss - gen.pool().sum_sq) > 1e-9 * 256) {
        why = "cached sum of squares drifted from the pool";
        return false;
      }
      if (std::abs(ss - 256.0) > 1e-6 * 256) {
        why = "pool norm drifted";
        return false;
      }
    }
    return true;
  }});

  checks.push_back({"fill-equals-next", [](std::string& why) {
    GeneratorConfig cfg;
    cfg.seed = 21;
    Generator a(cfg), b(cfg);
    const auto block = a.fill(1000);
    for (const double v : block) {
      if (v != b.next_normal()) {
        why = "fill and next_normal streams differ";
        return false;
      }
    }
    return true;
  }});

  return checks;
}

}  // namespace

int run_selftest(const SelftestOptions& opt) {
  if (!opt.inject_fault.empty() && opt.inject_fault != "transform-table") {
    std::fprintf(stderr, "selftest: unknown fault %s (supported: "
                         "transform-table)\n",
                 opt.inject_fault.c_str());
    return kExitUsage;
  }
  const auto checks = build_checks(opt.inject_fault);
  int failures = 0;
  for (const auto& check : checks) {
    std::string why;
    bool ok = false;
    try {
      ok = check.fn(why);
    } catch (const std::exception& e) {
      why = e.what();
    }
    if (ok) {
      std::printf("[ok]   %s\n", check.name.c_str());
    } else {
      std::printf("[FAIL] %s: %s\n", check.name.c_str(), why.c_str());
      ++failures;
    }
  }
  std::printf("%zu checks, %d failed\n", checks.size(), failures);
  return failures == 0 ? kExitPass : kExitFail;
}

}  // namespace maxent::cli
