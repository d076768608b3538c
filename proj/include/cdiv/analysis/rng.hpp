// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace cdiv {

/// 64-bit linear congruential generator with Knuth's MMIX constants:
///
///   state' = 6364136223846793005 * state + 1442695040888963407  (mod 2^64)
///
/// The initial state is the seed itself. Only the high bits are consumed;
/// the low bits of a power-of-two LCG have short periods. All mappings below
/// are spelled out so any implementation can reproduce a stream from a seed.
class Lcg64 {
 public:
  static constexpr std::uint64_t kMultiplier = 6364136223846793005ULL;
  static constexpr std::uint64_t kIncrement = 1442695040888963407ULL;

  explicit Lcg64(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_raw() { return engine_(); }

  /// High 32 bits of the next state.
  std::uint32_t next_u32() { return static_cast<std::uint32_t>(next_raw() >> 32); }

  /// Uniform in [0, 1) from the high 53 bits.
  double uniform01() { return static_cast<double>(next_raw() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Integer in [lo, hi] by multiply-shift of a 32-bit draw. The bias is
  /// below 2^-32 * span, irrelevant for test generation.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>((next_u32() * span) >> 32);
  }

  bool coin() { return (next_raw() >> 63) != 0; }

  /// Random sign times 10^u with u uniform in [lo_exp10, hi_exp10).
  double log_uniform_signed(double lo_exp10, double hi_exp10) {
    const double mag = std::pow(10.0, uniform(lo_exp10, hi_exp10));
    return coin() ? -mag : mag;
  }

 private:
  std::linear_congruential_engine<std::uint64_t, kMultiplier, kIncrement, 0> engine_;
};

}  // namespace cdiv
