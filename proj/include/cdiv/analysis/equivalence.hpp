// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cdiv/analysis/rng.hpp"
#include "cdiv/kernels.hpp"
#include "cdiv/rational.hpp"

namespace cdiv {

using QComplex = Complex<ExactRational>;

/// Which three-multiplication division the "fast" identity exercises.
enum class FastKernel { kCorrected, kPrinted };

struct IdentityResult {
  std::string name;
  std::size_t grid_cases = 0;
  std::size_t random_cases = 0;
  std::size_t failures = 0;
  std::optional<std::string> first_counterexample;

  std::size_t cases() const { return grid_cases + random_cases; }
  bool pass() const { return failures == 0; }
};

struct EquivalenceSummary {
  std::vector<IdentityResult> identities;

  bool pass() const {
    for (const auto& r : identities)
      if (!r.pass()) return false;
    return true;
  }
};

struct EquivalenceOptions {
  int grid_half_width = 3;
  std::size_t random_samples = 0;
  std::uint64_t seed = 42;
  FastKernel fast = FastKernel::kCorrected;
  std::int64_t random_bound = 1'000'000;  // |numerator|, denominator <= bound
};

/// Random rational: numerator in [-bound, bound], denominator in [1, bound],
/// drawn in that order.
inline ExactRational random_rational(Lcg64& rng, std::int64_t bound) {
  const std::int64_t num = rng.uniform_int(-bound, bound);
  const std::int64_t den = rng.uniform_int(1, bound);
  return ExactRational(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
}

/// Random complex pair (a, x) with x != 0; zero divisors are redrawn.
inline std::array<QComplex, 2> random_pair(Lcg64& rng, std::int64_t bound) {
  QComplex a{random_rational(rng, bound), random_rational(rng, bound)};
  QComplex x;
  do {
    x = QComplex{random_rational(rng, bound), random_rational(rng, bound)};
  } while (is_zero(x.re) && is_zero(x.im));
  return {a, x};
}

namespace detail {

inline std::string describe(const QComplex& a, const QComplex& x, const QComplex& got,
                            const QComplex& want) {
  std::ostringstream os;
  os << "a=" << a << " x=" << x << " got " << got << " expected " << want;
  return os.str();
}

}  // namespace detail

/// Exact-arithmetic equivalence of the reduced-multiplication kernels with
/// their schoolbook counterparts, over the integer grid of the given
/// half-width (x != 0) and then over random rationals.
inline EquivalenceSummary run_equivalence(const EquivalenceOptions& opt) {
  using Check = std::function<std::optional<std::string>(const QComplex&, const QComplex&)>;
  const auto fast = opt.fast == FastKernel::kPrinted
                        ? &divide_fast_printed<ExactRational>
                        : &divide_fast<ExactRational>;
  const auto mismatch = [](const QComplex& a, const QComplex& x, const QComplex& got,
                           const QComplex& want) -> std::optional<std::string> {
    if (got == want) return std::nullopt;
    return detail::describe(a, x, got, want);
  };

  const std::vector<std::pair<std::string, Check>> checks = {
      {"divide_fast == divide_naive",
       [&](const QComplex& a, const QComplex& x) {
         return mismatch(a, x, fast(a, x), divide_naive(a, x));
       }},
      {"gauss_mul_3m == mul_schoolbook",
       [&](const QComplex& a, const QComplex& x) {
         return mismatch(a, x, gauss_mul_3m(a, x), mul_schoolbook(a, x));
       }},
      {"divide_prepared == divide_naive",
       [&](const QComplex& a, const QComplex& x) {
         return mismatch(a, x, divide_prepared(a, prepare_denominator(x)), divide_naive(a, x));
       }},
      {"mul_schoolbook(divide_fast(a, x), x) == a",
       [&](const QComplex& a, const QComplex& x) {
         return mismatch(a, x, mul_schoolbook(fast(a, x), x), a);
       }},
  };

  EquivalenceSummary summary;
  for (const auto& check : checks) {
    IdentityResult r;
    r.name = check.first;
    summary.identities.push_back(std::move(r));
  }

  const auto run_case = [&](const QComplex& a, const QComplex& x, bool grid) {
    for (std::size_t k = 0; k < checks.size(); ++k) {
      IdentityResult& res = summary.identities[k];
      ++(grid ? res.grid_cases : res.random_cases);
      if (auto bad = checks[k].second(a, x)) {
        ++res.failures;
        if (!res.first_counterexample) res.first_counterexample = std::move(bad);
      }
    }
  };

  const int w = opt.grid_half_width;
  for (int ar = -w; ar <= w; ++ar)
    for (int ai = -w; ai <= w; ++ai)
      for (int xr = -w; xr <= w; ++xr)
        for (int xi = -w; xi <= w; ++xi) {
          if (xr == 0 && xi == 0) continue;
          run_case(QComplex{ar, ai}, QComplex{xr, xi}, true);
        }

  Lcg64 rng(opt.seed);
  for (std::size_t i = 0; i < opt.random_samples; ++i) {
    const auto [a, x] = random_pair(rng, opt.random_bound);
    run_case(a, x, false);
  }
  return summary;
}

}  // namespace cdiv
