// SPDX-License-Identifier: Apache-2.0
//
// Counter-based random numbers (Philox 4x32-10). Every variate is a pure
// function of (seed, replica, index), so replica streams are independent,
// reproducible, and safe to consume from any thread in any order.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "sddesim/errors.hpp"

namespace sddesim {

namespace detail {

struct PhiloxBlock {
  std::array<std::uint32_t, 4> word;
};

inline void philox_round(std::array<std::uint32_t, 4>& ctr, std::array<std::uint32_t, 2>& key) {
  constexpr std::uint64_t kMulA = 0xD2511F53u;
  constexpr std::uint64_t kMulB = 0xCD9E8D57u;
  const std::uint64_t product0 = kMulA * ctr[0];
  const std::uint64_t product1 = kMulB * ctr[2];
  const auto lo0 = static_cast<std::uint32_t>(product0);
  const auto hi0 = static_cast<std::uint32_t>(product0 >> 32);
  const auto lo1 = static_cast<std::uint32_t>(product1);
  const auto hi1 = static_cast<std::uint32_t>(product1 >> 32);
  ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  key[0] += 0x9E3779B9u;
  key[1] += 0xBB67AE85u;
}

inline PhiloxBlock philox4x32(std::uint64_t key64, std::uint64_t ctr_lo, std::uint64_t ctr_hi) {
  std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(ctr_lo), static_cast<std::uint32_t>(ctr_lo >> 32),
      static_cast<std::uint32_t>(ctr_hi), static_cast<std::uint32_t>(ctr_hi >> 32)};
  std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(key64),
                                      static_cast<std::uint32_t>(key64 >> 32)};
  for (int round = 0; round < 10; ++round) philox_round(ctr, key);
  return PhiloxBlock{ctr};
}

// 53-bit uniform in (0, 1]; never returns 0 so log() stays finite.
inline double uniform_open(std::uint32_t lo, std::uint32_t hi) {
  const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
  return static_cast<double>(bits + 1) * 0x1.0p-53;
}

}  // namespace detail

// A reproducible Gaussian stream identified by (seed, replica). gaussian(i)
// is the i-th standard normal of the stream; no state is mutated.
class NoiseStream {
 public:
  NoiseStream(std::uint64_t seed, std::uint64_t replica) : seed_(seed), replica_(replica) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t replica() const { return replica_; }

  double gaussian(std::uint64_t index) const {
    const auto block = detail::philox4x32(seed_, index >> 1, replica_);
    const double u1 = detail::uniform_open(block.word[0], block.word[1]);
    const double u2 = detail::uniform_open(block.word[2], block.word[3]);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    return (index & 1u) ? radius * std::sin(angle) : radius * std::cos(angle);
  }

  // Both Box-Muller mates of one counter block; ~2x cheaper than two
  // single-index calls when consuming consecutively.
  void gaussian_pair(std::uint64_t pair_index, double& g0, double& g1) const {
    const auto block = detail::philox4x32(seed_, pair_index, replica_);
    const double u1 = detail::uniform_open(block.word[0], block.word[1]);
    const double u2 = detail::uniform_open(block.word[2], block.word[3]);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    g0 = radius * std::cos(angle);
    g1 = radius * std::sin(angle);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t replica_;
};

// steps Brownian increments of dimension d over step size dt: each
// coordinate N(0, dt), laid out step-major. Deterministic in (seed, replica).
inline std::vector<double> brownian_increments(const NoiseStream& stream, int steps, double dt,
                                               int dim) {
  if (steps < 0) throw DomainError("step count must be nonnegative");
  if (dim < 1) throw DomainError("dimension must be >= 1");
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  const double scale = std::sqrt(dt);
  std::vector<double> increments(static_cast<std::size_t>(steps) * dim);
  const std::size_t total = increments.size();
  double g0 = 0.0;
  double g1 = 0.0;
  for (std::size_t i = 0; i + 1 < total; i += 2) {
    stream.gaussian_pair(i >> 1, g0, g1);
    increments[i] = scale * g0;
    increments[i + 1] = scale * g1;
  }
  if (total & 1u) {
    stream.gaussian_pair((total - 1) >> 1, g0, g1);
    increments[total - 1] = scale * g0;
  }
  return increments;
}

}  // namespace sddesim
