// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "cdiv/scalar.hpp"

namespace cdiv {

/// Exact rational number in canonical form: denominator > 0 and
/// gcd(|numerator|, denominator) == 1 after every operation.
class ExactRational {
 public:
  ExactRational() : num_(0), den_(1) {}
  ExactRational(int v) : num_(v), den_(1) {}  // NOLINT: integer literals
  explicit ExactRational(long v) : num_(v), den_(1) {}
  ExactRational(mpz_class num, mpz_class den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw DivisionByZero("rational with zero denominator");
    canonicalize();
  }

  /// Exact value of a finite double.
  static ExactRational from_double(double v) {
    if (!std::isfinite(v)) throw std::domain_error("non-finite double has no rational value");
    if (v == 0.0) return {};
    int exp = 0;
    const double frac = std::frexp(v, &exp);  // v = frac * 2^exp, 0.5 <= |frac| < 1
    // 53 significant bits make frac * 2^53 an integer.
    const auto mant = static_cast<std::int64_t>(std::ldexp(frac, 53));
    exp -= 53;
    ExactRational r;
    r.num_ = mpz_class(static_cast<long>(mant));
    r.den_ = 1;
    if (exp > 0) {
      mpz_mul_2exp(r.num_.get_mpz_t(), r.num_.get_mpz_t(), static_cast<unsigned long>(exp));
    } else if (exp < 0) {
      mpz_mul_2exp(r.den_.get_mpz_t(), r.den_.get_mpz_t(), static_cast<unsigned long>(-exp));
    }
    r.canonicalize();
    return r;
  }

  const mpz_class& numerator() const { return num_; }
  const mpz_class& denominator() const { return den_; }
  int sign() const { return sgn(num_); }

  friend ExactRational operator+(const ExactRational& a, const ExactRational& b) {
    return ExactRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend ExactRational operator-(const ExactRational& a, const ExactRational& b) {
    return ExactRational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend ExactRational operator*(const ExactRational& a, const ExactRational& b) {
    return ExactRational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend ExactRational operator/(const ExactRational& a, const ExactRational& b) {
    if (b.num_ == 0) throw DivisionByZero("rational division by zero");
    return ExactRational(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend ExactRational operator-(const ExactRational& a) {
    ExactRational r = a;
    r.num_ = -r.num_;
    return r;
  }
  friend ExactRational square(const ExactRational& a) {
    ExactRational r;
    r.num_ = a.num_ * a.num_;
    r.den_ = a.den_ * a.den_;  // squares of coprime values stay coprime
    return r;
  }

  // Canonical form makes structural equality value equality.
  friend bool operator==(const ExactRational& a, const ExactRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
    const int c = cmp(a.num_ * b.den_, b.num_ * a.den_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const ExactRational& r) {
    os << r.num_;
    if (r.den_ != 1) os << '/' << r.den_;
    return os;
  }

 private:
  void canonicalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
    if (g != 1) {
      mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
  }

  mpz_class num_;
  mpz_class den_;
};

/// Result of rounding a rational to double.
struct RoundedDouble {
  double value = 0.0;
  bool overflow = false;  // magnitude rounds past the largest finite double
};

/// Nearest double to `r`, ties to even. Subnormal results are rounded on the
/// subnormal grid; values beyond the finite range round to infinity and set
/// `overflow`.
inline RoundedDouble round_to_double(const ExactRational& r) {
  constexpr int kMantBits = std::numeric_limits<double>::digits;         // 53
  constexpr int kMinExp = std::numeric_limits<double>::min_exponent - 1;  // -1022
  constexpr int kMaxExp = std::numeric_limits<double>::max_exponent - 1;  // 1023

  const int s = r.sign();
  if (s == 0) return {0.0, false};
  mpz_class n = abs(r.numerator());
  mpz_class d = r.denominator();

  // e = floor(log2(n/d)).
  long e = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2));
  {
    mpz_class lhs = n, rhs = d;
    if (e >= 0) {
      mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), static_cast<unsigned long>(e));
    } else {
      mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<unsigned long>(-e));
    }
    if (lhs < rhs) --e;
  }
  const double inf = std::numeric_limits<double>::infinity();
  if (e > kMaxExp) return {s * inf, true};

  // Quantum exponent of the target binade; fixed at the subnormal spacing
  // below the normal range.
  const long q = (e < kMinExp ? kMinExp : e) - (kMantBits - 1);
  if (q < 0) {
    mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(-q));
  } else {
    mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(q));
  }
  mpz_class quot, rem;
  mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  const int half = cmp(mpz_class(rem * 2), d);
  if (half > 0 || (half == 0 && mpz_odd_p(quot.get_mpz_t()))) ++quot;

  // quot <= 2^53, exactly representable.
  const double mant = quot.get_d();
  const double v = std::ldexp(mant, static_cast<int>(q));
  if (std::isinf(v)) return {s * inf, true};
  return {s * v, false};
}

}  // namespace cdiv
