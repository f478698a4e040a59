#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "risac/linalg.hpp"

namespace risac {

namespace detail {

/// splitmix64 finalizer: one mixing round on a 64-bit word.
inline std::uint64_t splitmix64_mix(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  return splitmix64_mix(state);
}

inline std::uint64_t rotl64(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

/// Deterministic stream generator: xoshiro256++ seeded through splitmix64.
/// Identical seeds give identical streams on every build of this library.
/// Independent substreams come from child(k); the derivation is a fixed
/// part of the reproducibility contract:
///
///   child_seed = splitmix64_mix(seed + 0x9E3779B97F4A7C15 * (k + 1))
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t sm = seed;
    for (int i = 0; i < 4; ++i) s_[i] = detail::splitmix64_next(sm);
  }

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() {
    const std::uint64_t result =
        detail::rotl64(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = detail::rotl64(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in (0, 1]; safe as a log() argument.
  double uniform01_open_low() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Two independent standard normals (Box-Muller, trigonometric form).
  /// Draws exactly two uniforms, in the order (radius, angle).
  void gaussian_pair(double& z0, double& z1) {
    const double u1 = uniform01_open_low();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    z0 = r * std::cos(a);
    z1 = r * std::sin(a);
  }

  /// Derived generator for substream k.  Streams for distinct k are
  /// decorrelated; the same (seed, k) always yields the same stream.
  SeededRng child(std::uint64_t k) const {
    return SeededRng(
        detail::splitmix64_mix(seed_ + 0x9E3779B97F4A7C15ull * (k + 1)));
  }

 private:
  std::uint64_t seed_;
  std::uint64_t s_[4];
};

/// n draws from CN(0, 1): each entry (z0 + j z1) / sqrt(2), consuming one
/// gaussian pair per entry in index order.
inline CVec sample_cn01(SeededRng& rng, std::size_t n) {
  CVec v(n);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < n; ++i) {
    double z0, z1;
    rng.gaussian_pair(z0, z1);
    v[i] = cplx(z0 * inv_sqrt2, z1 * inv_sqrt2);
  }
  return v;
}

}  // namespace risac
