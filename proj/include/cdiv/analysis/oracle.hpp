// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

#include "cdiv/kernels.hpp"
#include "cdiv/rational.hpp"

namespace cdiv {

struct OracleQuotient {
  Complex<double> value;
  bool overflow_re = false;
  bool overflow_im = false;

  bool overflow() const { return overflow_re || overflow_im; }
};

/// Correctly rounded quotient a / x: operands promoted exactly to rationals,
/// the schoolbook formula evaluated without error, each component rounded
/// once to the nearest double. Components beyond the double range come back
/// infinite with the overflow bit set.
inline OracleQuotient oracle_divide(const Complex<double>& a, const Complex<double>& x) {
  using Q = ExactRational;
  const Complex<Q> qa{Q::from_double(a.re), Q::from_double(a.im)};
  const Complex<Q> qx{Q::from_double(x.re), Q::from_double(x.im)};
  const Complex<Q> exact = divide_naive(qa, qx);
  const RoundedDouble re = round_to_double(exact.re);
  const RoundedDouble im = round_to_double(exact.im);
  return {{re.value, im.value}, re.overflow, im.overflow};
}

}  // namespace cdiv
