#pragma once

#include <array>
#include <cstdint>
#include <optional>

namespace ragg {

/// SplitMix64 (Steele, Lea, Flood). Used only to expand seeds.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

/// xoshiro256** 1.0 (Blackman, Vigna). The four state words are the first
/// four SplitMix64 outputs for the seed. Stream k of a seed is the base
/// generator advanced by k calls to jump() (2^128 steps each).
///
/// uniform(): (next() >> 11) * 2^-53, in [0, 1).
/// normal(): Box-Muller on u1 = 1 - uniform(), u2 = uniform();
///   r = sqrt(-2 ln u1), returns r cos(2 pi u2), then r sin(2 pi u2) on the
///   following call.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);
  static Xoshiro256 stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next();
  double uniform();
  double normal();
  /// Standard exponential via -ln(1 - uniform()).
  double exponential();
  /// Uniform integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound);
  void jump();

  const std::array<std::uint64_t, 4>& state() const { return s_; }

 private:
  std::array<std::uint64_t, 4> s_{};
  std::optional<double> spare_normal_;
};

}  // namespace ragg
