// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <utility>

#include "cdiv/scalar.hpp"

namespace cdiv {

/// Complex value as a pair of real scalars. (0, 0) is legal except as a
/// divisor.
template <RealScalar S>
struct Complex {
  S re{};
  S im{};

  friend bool operator==(const Complex&, const Complex&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Complex& z) {
    return os << '(' << z.re << ", " << z.im << ')';
  }
};

template <RealScalar S>
Complex(S, S) -> Complex<S>;

/// Numerators of the quotient, i.e. the components of a * conj(x).
template <RealScalar S>
struct ConjProduct {
  S p{};  // a_r x_r + a_i x_i
  S q{};  // a_i x_r - a_r x_i

  friend bool operator==(const ConjProduct&, const ConjProduct&) = default;
};

/// Divisor with the x-side work done once: delta = 1 / (x_r^2 + x_i^2) and
/// xsum = x_r + x_i.
template <RealScalar S>
struct PreparedDenominator {
  S xr{};
  S xi{};
  S delta{};
  S xsum{};
};

/// x_r^2 + x_i^2 with two squarings and one addition.
template <RealScalar S>
S denom_norm(const Complex<S>& x) {
  return square(x.re) + square(x.im);
}

namespace detail {

template <RealScalar S>
S checked_norm(const Complex<S>& x) {
  S r = denom_norm(x);
  if (is_zero(r)) throw DivisionByZero();
  return r;
}

}  // namespace detail

/// Schoolbook quotient, evaluated term for term:
/// y_r = (a_r x_r + a_i x_i) / R,  y_i = (a_i x_r - a_r x_i) / R.
/// Cost: 4 mul, 3 add, 2 square, 2 div.
///
/// Throws DivisionByZero when the computed R is zero, which in floating point
/// also covers a norm that underflowed.
template <RealScalar S>
Complex<S> divide_naive(const Complex<S>& a, const Complex<S>& x) {
  const S r = detail::checked_norm(x);
  const S p = a.re * x.re + a.im * x.im;
  const S q = a.im * x.re - a.re * x.im;
  return {p / r, q / r};
}

/// a * conj(x) with three multiplications and five additions:
///
///   s1 = a_r - a_i   s2 = a_r + a_i   s3 = x_r + x_i
///   m1 = s1 x_r      m2 = s2 x_i      m3 = a_i s3
///   p  = m1 + m3     q  = m3 - m2
///
/// Every sign is folded into the final subtraction, so no negation is needed.
template <RealScalar S>
ConjProduct<S> conj_num_3m(const Complex<S>& a, const Complex<S>& x) {
  const S s1 = a.re - a.im;
  const S s2 = a.re + a.im;
  const S s3 = x.re + x.im;
  const S m1 = s1 * x.re;
  const S m2 = s2 * x.im;
  const S m3 = a.im * s3;
  return {m1 + m3, m3 - m2};
}

/// Three-multiplication quotient: conj_num_3m numerators, each divided by R.
/// Cost: 3 mul, 6 add, 2 square, 2 div, 0 neg.
///
/// The two divisions by R stand for the diagonal scaling by 1/R; dividing
/// directly keeps the cost table literal. Evaluation order is fixed:
/// R, s1, s2, s3, m1, m2, m3, p, q, p/R, q/R.
template <RealScalar S>
Complex<S> divide_fast(const Complex<S>& a, const Complex<S>& x) {
  const S r = detail::checked_norm(x);
  const ConjProduct<S> n = conj_num_3m(a, x);
  return {n.p / r, n.q / r};
}

/// The factor chain with the matrices exactly as published:
/// D3 = diag(a_r - a_i, -(a_r + a_i), a_i), T3x2 rows (1,0)/(0,-1)/(1,1),
/// T2x3 rows (1,0,1)/(0,1,1). Its imaginary part comes out as
/// (a_i x_r + a_r x_i + 2 a_i x_i) / R, which is wrong whenever a_i x_i or
/// a_r x_i is nonzero. Kept only so audits can show the discrepancy.
template <RealScalar S>
Complex<S> divide_fast_printed(const Complex<S>& a, const Complex<S>& x) {
  const S r = detail::checked_norm(x);
  const S d1 = a.re - a.im;
  const S d2 = -(a.re + a.im);
  const S d3 = a.im;
  // T3x2 X = (x_r, -x_i, x_r + x_i)
  const S v1 = x.re;
  const S v2 = -x.im;
  const S v3 = x.re + x.im;
  const S m1 = d1 * v1;
  const S m2 = d2 * v2;
  const S m3 = d3 * v3;
  return {(m1 + m3) / r, (m2 + m3) / r};
}

/// Schoolbook product: 4 mul, 2 add.
template <RealScalar S>
Complex<S> mul_schoolbook(const Complex<S>& a, const Complex<S>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

/// Gauss product with three multiplications and five additions:
///
///   k1 = b_r (a_r + a_i)   k2 = a_r (b_i - b_r)   k3 = a_i (b_r + b_i)
///   re = k1 - k3           im = k1 + k2
template <RealScalar S>
Complex<S> gauss_mul_3m(const Complex<S>& a, const Complex<S>& b) {
  const S k1 = b.re * (a.re + a.im);
  const S k2 = a.re * (b.im - b.re);
  const S k3 = a.im * (b.re + b.im);
  return {k1 - k3, k1 + k2};
}

template <RealScalar S>
PreparedDenominator<S> prepare_denominator(const Complex<S>& x) {
  const S r = detail::checked_norm(x);
  return {x.re, x.im, S(1) / r, x.re + x.im};
}

/// Quotient against a prepared divisor. The two scalings by delta are
/// multiplications here, so a call costs 5 mul, 4 add and nothing else.
template <RealScalar S>
Complex<S> divide_prepared(const Complex<S>& a, const PreparedDenominator<S>& d) {
  const S s1 = a.re - a.im;
  const S s2 = a.re + a.im;
  const S m1 = s1 * d.xr;
  const S m2 = s2 * d.xi;
  const S m3 = a.im * d.xsum;
  return {(m1 + m3) * d.delta, (m3 - m2) * d.delta};
}

/// Scaled division that never forms x_r^2 + x_i^2. Ties |x_r| == |x_i| and
/// NaN magnitudes take the x_r branch.
template <OrderedScalar S>
Complex<S> divide_smith(const Complex<S>& a, const Complex<S>& x) {
  const auto magnitude = [](const S& v) { return v < S(0) ? -v : v; };
  if (is_zero(x.re) && is_zero(x.im)) throw DivisionByZero();
  if (!(magnitude(x.im) > magnitude(x.re))) {
    const S t = x.im / x.re;
    const S den = x.re + x.im * t;
    return {(a.re + a.im * t) / den, (a.im - a.re * t) / den};
  }
  const S t = x.re / x.im;
  const S den = x.im + x.re * t;
  return {(a.re * t + a.im) / den, (a.im * t - a.re) / den};
}

}  // namespace cdiv
