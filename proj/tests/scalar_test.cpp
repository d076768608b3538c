// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "cdiv/analysis/rng.hpp"
#include "cdiv/rational.hpp"
#include "cdiv/scalar.hpp"
#include "cdiv/ulp.hpp"

namespace cdiv {
namespace {

using Q = ExactRational;

Q q(long num, long den) { return Q(mpz_class(num), mpz_class(den)); }

// ---------------------------------------------------------------------------
// Test-only oracles
// ---------------------------------------------------------------------------

// Steps from a to b by repeated nextafter.
std::uint64_t walk_distance(double a, double b) {
  std::uint64_t n = 0;
  const double dir = b > a ? std::numeric_limits<double>::infinity()
                           : -std::numeric_limits<double>::infinity();
  while (a != b) {
    a = std::nextafter(a, dir);
    ++n;
  }
  return n;
}

// Nearest double by bisection over the ordered representables, comparing
// candidates against r exactly. Ties pick the even significand.
double nearest_by_search(const Q& r) {
  const double max = std::numeric_limits<double>::max();
  if (r >= Q::from_double(max)) {
    // Halfway point between max and the next binade boundary rounds to inf.
    const Q limit = Q::from_double(max) + (Q::from_double(max) - Q::from_double(std::nextafter(max, 0.0))) / Q(2);
    return r >= limit ? std::numeric_limits<double>::infinity() : max;
  }
  if (r <= -Q::from_double(max)) return -nearest_by_search(-r);
  // Largest double <= r, by bisection over the ordered bit patterns:
  // key k >= 0 is the double with bits k, key k < 0 is its negation.
  const auto from_key = [](std::int64_t k) {
    const double m = std::bit_cast<double>(static_cast<std::uint64_t>(k < 0 ? -k : k));
    return k < 0 ? -m : m;
  };
  const auto max_key = static_cast<std::int64_t>(std::bit_cast<std::uint64_t>(max));
  std::int64_t lo_key = -max_key, hi_key = max_key;  // from_key(lo_key) <= r < from_key(hi_key)
  const auto span_of = [](std::int64_t lo, std::int64_t hi) {
    return static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  };
  while (span_of(lo_key, hi_key) > 1) {
    const std::uint64_t span = span_of(lo_key, hi_key);
    const std::int64_t mid = lo_key + static_cast<std::int64_t>(span / 2);
    if (Q::from_double(from_key(mid)) <= r) {
      lo_key = mid;
    } else {
      hi_key = mid;
    }
  }
  double lo = from_key(lo_key);
  const double up = std::nextafter(lo, std::numeric_limits<double>::infinity());
  const Q dl = r - Q::from_double(lo);
  const Q du = Q::from_double(up) - r;
  if (dl < du) return lo;
  if (du < dl) return up;
  const auto bits = [](double d) { return std::bit_cast<std::uint64_t>(d); };
  return (bits(lo) & 1) == 0 ? lo : up;
}

// ---------------------------------------------------------------------------
// square / tally
// ---------------------------------------------------------------------------

TEST(Square, Examples) {
  EXPECT_EQ(square(0.0), 0.0);
  EXPECT_EQ(square(-3.0), 9.0);
  EXPECT_EQ(square(q(7, 2)), q(49, 4));
}

TEST(Square, CountsAsSquareNotMul) {
  OpTally t;
  const CountingScalar<double> v(-3.0, &t);
  const auto s = square(v);
  EXPECT_EQ(s.value(), 9.0);
  EXPECT_EQ(t, (OpTally{.square = 1}));
}

TEST(Square, EqualsSelfProduct) {
  for (long n = -20; n <= 20; ++n)
    for (long d = 1; d <= 20; ++d) EXPECT_EQ(square(q(n, d)), q(n, d) * q(n, d));
}

TEST(TallyMerge, Examples) {
  EXPECT_EQ(tally_merge({.mul = 3}, {.mul = 1}), (OpTally{.mul = 4}));
  const OpTally t{.mul = 1, .add = 2, .square = 3, .div = 4, .neg = 5};
  EXPECT_EQ(tally_merge({}, t), t);
  EXPECT_EQ(tally_merge({.add = 3, .div = 2}, {.add = 3, .square = 2}),
            (OpTally{.add = 6, .square = 2, .div = 2}));
}

TEST(TallyMerge, MonoidLaws) {
  Lcg64 rng(5);
  const auto draw = [&] {
    return OpTally{static_cast<std::uint64_t>(rng.uniform_int(0, 9)),
                   static_cast<std::uint64_t>(rng.uniform_int(0, 9)),
                   static_cast<std::uint64_t>(rng.uniform_int(0, 9)),
                   static_cast<std::uint64_t>(rng.uniform_int(0, 9)),
                   static_cast<std::uint64_t>(rng.uniform_int(0, 9))};
  };
  for (int i = 0; i < 200; ++i) {
    const OpTally a = draw(), b = draw(), c = draw();
    EXPECT_EQ(tally_merge(a, b), tally_merge(b, a));
    EXPECT_EQ(tally_merge(tally_merge(a, b), c), tally_merge(a, tally_merge(b, c)));
    EXPECT_EQ(tally_merge(a, OpTally{}), a);
  }
}

TEST(TallySameCost, IgnoresNegations) {
  EXPECT_TRUE((OpTally{.mul = 3, .neg = 2}).same_cost({.mul = 3}));
  EXPECT_FALSE((OpTally{.mul = 3}).same_cost({.mul = 3, .add = 1}));
}

// ---------------------------------------------------------------------------
// Counting scalar
// ---------------------------------------------------------------------------

TEST(CountingScalar, EachOperationChargesOneField) {
  OpTally t;
  using C = CountingScalar<double>;
  const C a(6.0, &t), b(2.0, &t);
  EXPECT_EQ((a + b).value(), 8.0);
  EXPECT_EQ((a - b).value(), 4.0);
  EXPECT_EQ((a * b).value(), 12.0);
  EXPECT_EQ((a / b).value(), 3.0);
  EXPECT_EQ((-a).value(), -6.0);
  EXPECT_EQ(t, (OpTally{.mul = 1, .add = 2, .square = 0, .div = 1, .neg = 1}));
  EXPECT_TRUE(a > b);
  EXPECT_EQ(t.add, 2u);  // comparisons are free
}

TEST(CountingScalar, ConstantsChargeTheOtherOperand) {
  OpTally t;
  using C = CountingScalar<double>;
  const C a(5.0, &t);
  EXPECT_EQ((C(1) / a).value(), 0.2);
  EXPECT_EQ(t.div, 1u);
}

TEST(CountingScalar, ValueTransparentOverRandomExpressions) {
  Lcg64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const double u = rng.uniform(-10, 10), v = rng.uniform(-10, 10), w = rng.uniform(0.5, 10);
    OpTally t;
    using C = CountingScalar<double>;
    const C cu(u, &t), cv(v, &t), cw(w, &t);
    const double bare = (u * v - square(w)) / w + (-u);
    const C counted = (cu * cv - square(cw)) / cw + (-cu);
    EXPECT_EQ(counted.value(), bare);
    EXPECT_EQ(t, (OpTally{.mul = 1, .add = 2, .square = 1, .div = 1, .neg = 1}));
  }
}

TEST(CountingScalar, WrapsRationals) {
  OpTally t;
  using C = CountingScalar<Q>;
  const C a(q(1, 3), &t), b(q(1, 6), &t);
  EXPECT_EQ((a + b).value(), q(1, 2));
  EXPECT_EQ(square(a).value(), q(1, 9));
  EXPECT_EQ(t, (OpTally{.add = 1, .square = 1}));
}

// ---------------------------------------------------------------------------
// ExactRational
// ---------------------------------------------------------------------------

bool canonical(const Q& r) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), r.numerator().get_mpz_t(), r.denominator().get_mpz_t());
  return r.denominator() > 0 && g == 1;
}

TEST(ExactRational, CanonicalForm) {
  const Q r = q(6, -4);
  EXPECT_EQ(r.numerator(), -3);
  EXPECT_EQ(r.denominator(), 2);
  EXPECT_EQ(q(0, -7), Q(0));
  EXPECT_EQ(Q(0).denominator(), 1);
  EXPECT_THROW(q(1, 0), DivisionByZero);
  EXPECT_THROW(Q(1) / Q(0), DivisionByZero);
}

// Every small pair: operations stay canonical and agree with integer
// cross-multiplication done independently on machine integers.
TEST(ExactRational, SmallPairsAgreeWithCrossMultiplication) {
  const auto same = [](const Q& r, long num, long den) {
    // r == num/den  <=>  r.num * den == num * r.den
    return r.numerator() * den == mpz_class(num) * r.denominator();
  };
  for (long an = -20; an <= 20; ++an)
    for (long ad = -20; ad <= 20; ++ad) {
      if (ad == 0) continue;
      const Q a = q(an, ad);
      for (long bn = -20; bn <= 20; bn += 3)
        for (long bd = -20; bd <= 20; bd += 3) {
          if (bd == 0) continue;
          const Q b = q(bn, bd);
          const Q s = a + b, d = a - b, p = a * b;
          ASSERT_TRUE(canonical(s) && canonical(d) && canonical(p));
          ASSERT_TRUE(same(s, an * bd + bn * ad, ad * bd));
          ASSERT_TRUE(same(d, an * bd - bn * ad, ad * bd));
          ASSERT_TRUE(same(p, an * bn, ad * bd));
          if (bn != 0) {
            const Q quo = a / b;
            ASSERT_TRUE(canonical(quo));
            ASSERT_TRUE(same(quo, an * bd, ad * bn));
          }
          ASSERT_EQ(a < b, an * ad * bd * bd < bn * bd * ad * ad);
        }
    }
}

TEST(ExactRational, FromDoubleIsExact) {
  EXPECT_EQ(Q::from_double(0.5), q(1, 2));
  EXPECT_EQ(Q::from_double(-3.0), Q(-3));
  EXPECT_EQ(Q::from_double(0.1), Q(mpz_class("3602879701896397"), mpz_class("36028797018963968")));
  const double tiny = std::numeric_limits<double>::denorm_min();
  const Q t = Q::from_double(tiny);
  EXPECT_EQ(t.numerator(), 1);
  EXPECT_EQ(mpz_sizeinbase(t.denominator().get_mpz_t(), 2), 1075u);  // 2^1074
  EXPECT_THROW(Q::from_double(std::numeric_limits<double>::infinity()), std::domain_error);
}

// ---------------------------------------------------------------------------
// round_to_double
// ---------------------------------------------------------------------------

TEST(RoundToDouble, Examples) {
  EXPECT_EQ(round_to_double(q(1, 2)).value, 0.5);
  EXPECT_EQ(round_to_double(Q(0)).value, 0.0);
  // Frozen from the bisection oracle.
  EXPECT_EQ(nearest_by_search(q(11, 5)), 2.2);
  EXPECT_EQ(round_to_double(q(11, 5)).value, 2.2);
  EXPECT_EQ(round_to_double(q(-2, 5)).value, -0.4);
  EXPECT_EQ(round_to_double(q(1, 3)).value, 1.0 / 3.0);
}

TEST(RoundToDouble, TiesToEven) {
  // 1 + 2^-53 lies halfway between 1 and 1 + 2^-52.
  Q half_ulp = Q(1) / Q(mpz_class(1) << 53, mpz_class(1));
  EXPECT_EQ(round_to_double(Q(1) + half_ulp).value, 1.0);
  // 1 + 3 * 2^-53 is halfway between odd 1+2^-52 and even 1+2^-51.
  EXPECT_EQ(round_to_double(Q(1) + half_ulp * Q(3)).value, 1.0 + 0x1.0p-51);
}

TEST(RoundToDouble, OverflowAndSubnormals) {
  const Q max = Q::from_double(std::numeric_limits<double>::max());
  EXPECT_FALSE(round_to_double(max).overflow);
  const RoundedDouble big = round_to_double(max * Q(2));
  EXPECT_TRUE(big.overflow);
  EXPECT_EQ(big.value, std::numeric_limits<double>::infinity());
  EXPECT_EQ(round_to_double(-max * Q(2)).value, -std::numeric_limits<double>::infinity());

  const double dmin = std::numeric_limits<double>::denorm_min();
  const Q qmin = Q::from_double(dmin);
  EXPECT_EQ(round_to_double(qmin).value, dmin);
  EXPECT_EQ(round_to_double(qmin * q(3, 2)).value, 2 * dmin);  // tie 1.5 -> even 2
  EXPECT_EQ(round_to_double(qmin * q(1, 2)).value, 0.0);       // tie 0.5 -> even 0
  EXPECT_EQ(round_to_double(qmin * q(2, 3)).value, dmin);
}

TEST(RoundToDouble, MatchesBisectionOracle) {
  Lcg64 rng(2024);
  for (int i = 0; i < 400; ++i) {
    // Random rational with a wide exponent spread, including subnormals.
    const long num = static_cast<long>(rng.uniform_int(-1'000'000'007, 1'000'000'007));
    const long den = static_cast<long>(rng.uniform_int(1, 999'999'937));
    Q r = q(num, den);
    const int shift = static_cast<int>(rng.uniform_int(-1090, 1030));
    const Q scale = Q::from_double(std::ldexp(1.0, shift / 2)) * Q::from_double(std::ldexp(1.0, shift - shift / 2));
    r = r * scale;
    ASSERT_EQ(round_to_double(r).value, nearest_by_search(r)) << r;
  }
}

// ---------------------------------------------------------------------------
// ulp_distance
// ---------------------------------------------------------------------------

TEST(UlpDistance, Examples) {
  EXPECT_EQ(ulp_distance(1.0, 1.0), 0u);
  EXPECT_EQ(ulp_distance(1.0, std::nextafter(1.0, 2.0)), 1u);
  const double eps = std::numeric_limits<double>::epsilon();
  // Frozen from the neighbor walk.
  EXPECT_EQ(walk_distance(1.0, 1.0 + 4 * eps), 4u);
  EXPECT_EQ(ulp_distance(1.0, 1.0 + 4 * eps), 4u);
}

TEST(UlpDistance, CrossesZero) {
  const double d = std::numeric_limits<double>::denorm_min();
  EXPECT_EQ(ulp_distance(-d, d), 2u);
  EXPECT_EQ(ulp_distance(-0.0, 0.0), 0u);
  EXPECT_EQ(ulp_distance(-d, 0.0), 1u);
  EXPECT_EQ(walk_distance(-3 * d, 2 * d), 5u);  // -2d, -d, -0, d, 2d
  EXPECT_EQ(*ulp_distance(-3 * d, 2 * d), 5u);
}

TEST(UlpDistance, IncomparableInputs) {
  const double inf = std::numeric_limits<double>::infinity();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_FALSE(ulp_distance(1.0, inf).has_value());
  EXPECT_FALSE(ulp_distance(nan, 1.0).has_value());
  EXPECT_FALSE(ulp_distance(-inf, -inf).has_value());
}

TEST(UlpDistance, MatchesWalkNearOne) {
  Lcg64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const double a = rng.uniform(0.5, 4.0);
    const int steps = static_cast<int>(rng.uniform_int(0, 40));
    double b = a;
    for (int s = 0; s < steps; ++s) b = std::nextafter(b, -1.0);
    EXPECT_EQ(*ulp_distance(a, b), walk_distance(a, b));
  }
}

TEST(UlpDistance, SymmetricAndTriangle) {
  Lcg64 rng(9);
  for (int i = 0; i < 2000; ++i) {
    const double a = rng.log_uniform_signed(-300, 300);
    const double b = rng.coin() ? -a * rng.uniform(0.5, 2) : rng.log_uniform_signed(-300, 300);
    const double c = rng.log_uniform_signed(-10, 10);
    const auto ab = *ulp_distance(a, b), ba = *ulp_distance(b, a);
    EXPECT_EQ(ab, ba);
    using wide = unsigned __int128;  // two distances can exceed 2^64
    EXPECT_LE(wide{ab}, wide{*ulp_distance(a, c)} + wide{*ulp_distance(c, b)});
  }
}

TEST(UlpDistance, SinglePrecision) {
  EXPECT_EQ(ulp_distance(1.0f, std::nextafter(1.0f, 2.0f)), 1u);
  EXPECT_EQ(ulp_distance(-1.0f, 1.0f), 2u * std::bit_cast<std::uint32_t>(1.0f));
}

}  // namespace
}  // namespace cdiv
