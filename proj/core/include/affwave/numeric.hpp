// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>

namespace affwave {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// Pairwise (cascade) summation of term(i) for i in [begin, end). The
/// association order depends only on the range, never on the caller's thread
/// layout, so results are reproducible bit for bit.
template <typename T, typename F>
T pairwise_sum(std::size_t begin, std::size_t end, const F& term) {
  constexpr std::size_t kLeaf = 32;
  if (end - begin <= kLeaf) {
    T acc{};
    for (std::size_t i = begin; i < end; ++i) acc += term(i);
    return acc;
  }
  const std::size_t mid = begin + (end - begin) / 2;
  return pairwise_sum<T>(begin, mid, term) + pairwise_sum<T>(mid, end, term);
}

/// Portable normal deviates: std::mt19937_64 raw output, 53-bit uniforms,
/// Box-Muller (cosine branch only). std::normal_distribution is avoided on
/// purpose because its algorithm is implementation-defined.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in (0, 1).
  double uniform() {
    std::uint64_t bits;
    do {
      bits = engine_() >> 11;
    } while (bits == 0);
    return static_cast<double>(bits) * 0x1.0p-53;
  }

  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  cplx complex_normal() {
    const double re = normal();
    return {re, normal()};
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace affwave
