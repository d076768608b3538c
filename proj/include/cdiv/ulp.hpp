// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bit>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <optional>
#include <type_traits>

namespace cdiv {

namespace detail {

template <std::floating_point F>
using bits_of = std::conditional_t<sizeof(F) == 8, std::uint64_t, std::uint32_t>;

// Monotone map from floats onto signed integers; +0 and -0 share key 0.
template <std::floating_point F>
constexpr std::int64_t ordered_key(F f) {
  using U = bits_of<F>;
  constexpr U sign = U{1} << (sizeof(U) * 8 - 1);
  const U u = std::bit_cast<U>(f);
  const auto magnitude = static_cast<std::int64_t>(u & ~sign);
  return (u & sign) ? -magnitude : magnitude;
}

}  // namespace detail

/// Number of representable steps between two finite floats, counted through
/// zero when the signs differ. Empty when either input is NaN or infinite.
template <std::floating_point F>
  requires(sizeof(F) == 4 || sizeof(F) == 8)
constexpr std::optional<std::uint64_t> ulp_distance(F a, F b) {
  if (!std::isfinite(a) || !std::isfinite(b)) return std::nullopt;
  const std::int64_t ka = detail::ordered_key(a);
  const std::int64_t kb = detail::ordered_key(b);
  return ka > kb ? static_cast<std::uint64_t>(ka) - static_cast<std::uint64_t>(kb)
                 : static_cast<std::uint64_t>(kb) - static_cast<std::uint64_t>(ka);
}

}  // namespace cdiv
