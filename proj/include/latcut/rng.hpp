// Copyright 2026 The latcut Authors
// SPDX-License-Identifier: MIT

#ifndef LATCUT_RNG_HPP_
#define LATCUT_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>

#include "latcut/vecmat.hpp"

namespace latcut {

// splitmix64 step; used to derive independent substream seeds from a base
// seed so that results are reproducible regardless of evaluation order.
inline std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = mix_seed(base ^ 0x8f1bbcdcbfa53e0bull);
  s = mix_seed(s ^ mix_seed(a));
  s = mix_seed(s ^ mix_seed(b + 0x2545f4914f6cdd1dull));
  s = mix_seed(s ^ mix_seed(c + 0x9e3779b97f4a7c15ull));
  return s;
}

// Deterministic RNG: the mt19937_64 sequence is pinned by the standard, and
// all value mappings below are written out explicitly (the std::*_distribution
// adapters are implementation-defined, which would break reproducibility of
// serialized results across toolchains).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1).
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [lo, hi] inclusive, by rejection (unbiased).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(eng_());  // full range
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return lo + static_cast<std::int64_t>(v % span);
  }

  // Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1, u2;
    do {
      u1 = uniform01();
    } while (u1 <= 0.0);
    u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // Uniform direction on the unit sphere in d dimensions.
  VecD unit_vector(std::size_t d) {
    VecD v(d);
    double n = 0;
    do {
      for (auto& x : v) x = normal();
      n = norm2(v);
    } while (n < 1e-12);
    for (auto& x : v) x /= n;
    return v;
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0;
  bool have_spare_ = false;
};

}  // namespace latcut

#endif  // LATCUT_RNG_HPP_
