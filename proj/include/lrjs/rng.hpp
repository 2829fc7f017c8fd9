#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace lrjs {

// Deterministic sampling helpers on top of std::mt19937_64. The mappings from
// raw 64-bit draws to distributions are pinned here instead of delegating to
// <random>'s implementation-defined distributions, so a seed identifies the
// same stream on every standard library.

/// Uniform double in [0, 1).
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller (two draws per sample).
inline double standard_normal(std::mt19937_64& rng) {
  const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Circularly-symmetric complex normal with unit variance.
inline std::complex<double> standard_complex_normal(std::mt19937_64& rng) {
  const double re = standard_normal(rng);
  const double im = standard_normal(rng);
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

/// Uniform integer in [0, n) without modulo bias.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below: n must be positive");
  const std::uint64_t rem = std::numeric_limits<std::uint64_t>::max() % n;
  const std::uint64_t zone = std::numeric_limits<std::uint64_t>::max() - rem;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= zone);
  return x % n;
}

/// `count` distinct values from [0, total), by partial Fisher-Yates.
inline std::vector<std::uint64_t> sample_without_replacement(std::uint64_t total,
                                                             std::uint64_t count,
                                                             std::mt19937_64& rng) {
  if (count > total)
    throw std::invalid_argument("sample_without_replacement: count exceeds population");
  std::vector<std::uint64_t> pool(total);
  std::iota(pool.begin(), pool.end(), std::uint64_t{0});
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t j = i + uniform_below(rng, total - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

}  // namespace lrjs
