// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cdiv/kernels.hpp"
#include "cdiv/scalar.hpp"

namespace cdiv {

enum class CountedKernel { kNaive, kFast, kMulSchoolbook, kGaussMul, kPrepared };

inline constexpr std::array kCountedKernels = {CountedKernel::kNaive, CountedKernel::kFast,
                                               CountedKernel::kMulSchoolbook,
                                               CountedKernel::kGaussMul, CountedKernel::kPrepared};

inline std::string_view kernel_name(CountedKernel k) {
  switch (k) {
    case CountedKernel::kNaive:
      return "naive";
    case CountedKernel::kFast:
      return "fast";
    case CountedKernel::kMulSchoolbook:
      return "mul_schoolbook";
    case CountedKernel::kGaussMul:
      return "gauss_mul";
    case CountedKernel::kPrepared:
      return "prepared";
  }
  throw std::invalid_argument("unknown kernel");
}

inline CountedKernel parse_counted_kernel(std::string_view name) {
  for (CountedKernel k : kCountedKernels)
    if (kernel_name(k) == name) return k;
  throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

/// Published cost of each kernel. The Gauss addition count (5) and the
/// prepared-divisor cost model are properties of this implementation.
inline OpTally expected_tally(CountedKernel k) {
  switch (k) {
    case CountedKernel::kNaive:
      return {.mul = 4, .add = 3, .square = 2, .div = 2};
    case CountedKernel::kFast:
      return {.mul = 3, .add = 6, .square = 2, .div = 2};
    case CountedKernel::kMulSchoolbook:
      return {.mul = 4, .add = 2};
    case CountedKernel::kGaussMul:
      return {.mul = 3, .add = 5};
    case CountedKernel::kPrepared:
      return {.mul = 5, .add = 4};
  }
  throw std::invalid_argument("unknown kernel");
}

struct CountReport {
  std::string algorithm;
  OpTally measured;
  OpTally expected;
  bool match = false;  // equality on mul, add, square, div
};

/// Runs one kernel call on the given operands under the counting scalar.
/// For the prepared kernel only the per-numerator call is counted.
template <RealScalar S = double>
OpTally measure_tally(CountedKernel k, const Complex<S>& a, const Complex<S>& x) {
  using C = CountingScalar<S>;
  OpTally tally;
  const Complex<C> ca{C(a.re, &tally), C(a.im, &tally)};
  const Complex<C> cx{C(x.re, &tally), C(x.im, &tally)};
  switch (k) {
    case CountedKernel::kNaive:
      divide_naive(ca, cx);
      break;
    case CountedKernel::kFast:
      divide_fast(ca, cx);
      break;
    case CountedKernel::kMulSchoolbook:
      mul_schoolbook(ca, cx);
      break;
    case CountedKernel::kGaussMul:
      gauss_mul_3m(ca, cx);
      break;
    case CountedKernel::kPrepared: {
      const PreparedDenominator<C> d = prepare_denominator(cx);
      tally = OpTally{};
      divide_prepared(ca, d);
      break;
    }
  }
  return tally;
}

/// Tally of one call on the fixed operands a = (3, 4), x = (1, 2).
inline CountReport run_count(CountedKernel k) {
  CountReport rep;
  rep.algorithm = std::string(kernel_name(k));
  rep.measured = measure_tally<double>(k, {3.0, 4.0}, {1.0, 2.0});
  rep.expected = expected_tally(k);
  rep.match = rep.measured.same_cost(rep.expected);
  return rep;
}

}  // namespace cdiv
