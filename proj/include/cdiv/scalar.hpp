// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace cdiv {

/// Raised by every kernel when the divisor norm is zero.
class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("complex division by zero") {}
  explicit DivisionByZero(const std::string& what) : std::domain_error(what) {}
};

/// Field-like real scalar used by all kernels.
///
/// Floats satisfy the field axioms only approximately. Ordering is needed
/// only by the scaled (Smith) baseline.
template <class S>
concept RealScalar = std::regular<S> && requires(const S a, const S b) {
  S(0);
  S(1);
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { a / b } -> std::convertible_to<S>;
  { -a } -> std::convertible_to<S>;
};

template <class S>
concept OrderedScalar = RealScalar<S> && std::totally_ordered<S>;

/// Squaring is priced separately from multiplication. Scalars that track
/// costs provide their own overload, found by ADL.
template <RealScalar S>
constexpr S square(const S& v) {
  return v * v;
}

template <RealScalar S>
constexpr bool is_zero(const S& v) {
  return v == S(0);
}

// ---------------------------------------------------------------------------
// Operation tally
// ---------------------------------------------------------------------------

/// Counts of real operations by cost class. Subtractions count as additions.
struct OpTally {
  std::uint64_t mul = 0;
  std::uint64_t add = 0;
  std::uint64_t square = 0;
  std::uint64_t div = 0;
  std::uint64_t neg = 0;

  friend constexpr bool operator==(const OpTally&, const OpTally&) = default;

  constexpr OpTally& operator+=(const OpTally& o) {
    mul += o.mul;
    add += o.add;
    square += o.square;
    div += o.div;
    neg += o.neg;
    return *this;
  }

  /// Equality on the classes the published cost table prices. Negations are
  /// sign flips and are left out.
  constexpr bool same_cost(const OpTally& o) const {
    return mul == o.mul && add == o.add && square == o.square && div == o.div;
  }

  friend std::ostream& operator<<(std::ostream& os, const OpTally& t) {
    return os << "mul=" << t.mul << " add=" << t.add << " square=" << t.square
              << " div=" << t.div << " neg=" << t.neg;
  }
};

constexpr OpTally tally_merge(const OpTally& a, const OpTally& b) {
  OpTally r = a;
  r += b;
  return r;
}

// ---------------------------------------------------------------------------
// Counting scalar
// ---------------------------------------------------------------------------

/// Wraps a scalar and records every arithmetic operation into a caller-owned
/// tally. Values are exactly those of the wrapped scalar.
///
/// Constants built from integers carry no tally; an operation charges the
/// tally of its left operand, or of the right one if the left has none. One
/// tally per in-flight kernel call: the wrapper does no synchronization.
template <RealScalar S>
class CountingScalar {
 public:
  CountingScalar() = default;
  CountingScalar(int v) : value_(v) {}  // NOLINT: constants from literals
  CountingScalar(S v, OpTally* tally) : value_(std::move(v)), tally_(tally) {}

  const S& value() const { return value_; }
  OpTally* tally() const { return tally_; }

  friend CountingScalar operator+(const CountingScalar& a, const CountingScalar& b) {
    return charged(a, b, &OpTally::add, a.value_ + b.value_);
  }
  friend CountingScalar operator-(const CountingScalar& a, const CountingScalar& b) {
    return charged(a, b, &OpTally::add, a.value_ - b.value_);
  }
  friend CountingScalar operator*(const CountingScalar& a, const CountingScalar& b) {
    return charged(a, b, &OpTally::mul, a.value_ * b.value_);
  }
  friend CountingScalar operator/(const CountingScalar& a, const CountingScalar& b) {
    return charged(a, b, &OpTally::div, a.value_ / b.value_);
  }
  friend CountingScalar operator-(const CountingScalar& a) {
    return charged(a, a, &OpTally::neg, -a.value_);
  }
  friend CountingScalar square(const CountingScalar& a) {
    using cdiv::square;
    return charged(a, a, &OpTally::square, square(a.value_));
  }

  // Comparisons are free and compare values only.
  friend bool operator==(const CountingScalar& a, const CountingScalar& b) {
    return a.value_ == b.value_;
  }
  friend auto operator<=>(const CountingScalar& a, const CountingScalar& b)
    requires std::three_way_comparable<S>
  {
    return a.value_ <=> b.value_;
  }

  friend std::ostream& operator<<(std::ostream& os, const CountingScalar& a) {
    return os << a.value_;
  }

 private:
  static CountingScalar charged(const CountingScalar& a, const CountingScalar& b,
                                std::uint64_t OpTally::*field, S v) {
    OpTally* t = a.tally_ ? a.tally_ : b.tally_;
    if (t) ++(t->*field);
    return CountingScalar(std::move(v), t);
  }

  S value_{};
  OpTally* tally_ = nullptr;
};

}  // namespace cdiv
