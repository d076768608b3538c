// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cdiv/kernels.hpp"
#include "cdiv/rational.hpp"

namespace cdiv {

/// Dense 2x2 matrix, row-major.
template <RealScalar S>
struct Mat2 {
  std::array<std::array<S, 2>, 2> m{};

  const S& operator()(int row, int col) const { return m[row][col]; }
  S& operator()(int row, int col) { return m[row][col]; }

  friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// Sign pattern matrix with entries in {-1, 0, 1}.
template <int Rows, int Cols>
class SignMatrix {
 public:
  constexpr SignMatrix() = default;
  constexpr SignMatrix(std::array<std::array<int, Cols>, Rows> entries) : e_(entries) {
    for (const auto& row : e_)
      for (int v : row)
        if (v < -1 || v > 1) throw std::invalid_argument("sign matrix entry outside {-1, 0, 1}");
  }

  constexpr int operator()(int row, int col) const { return e_[row][col]; }

  friend constexpr bool operator==(const SignMatrix&, const SignMatrix&) = default;

 private:
  std::array<std::array<int, Cols>, Rows> e_{};
};

using Mat2x3 = SignMatrix<2, 3>;
using Mat3x2 = SignMatrix<3, 2>;

template <RealScalar S>
struct Diag3 {
  std::array<S, 3> d{};

  friend bool operator==(const Diag3&, const Diag3&) = default;
};

enum class FactorVariant {
  kPrinted,     // matrices exactly as published
  kCorrectedA,  // sign moved into T2x3: rows (1,0,1)/(0,-1,1)
  kCorrectedB,  // sign kept in D3, T3x2 row 2 becomes (0,1)
};

inline constexpr std::array kAllVariants = {FactorVariant::kCorrectedA, FactorVariant::kCorrectedB,
                                            FactorVariant::kPrinted};

inline std::string_view variant_name(FactorVariant v) {
  switch (v) {
    case FactorVariant::kPrinted:
      return "printed";
    case FactorVariant::kCorrectedA:
      return "corrected-A";
    case FactorVariant::kCorrectedB:
      return "corrected-B";
  }
  throw std::invalid_argument("unknown factor variant");
}

inline FactorVariant parse_variant(std::string_view name) {
  for (FactorVariant v : kAllVariants)
    if (variant_name(v) == name) return v;
  throw std::invalid_argument("unknown factor variant: " + std::string(name));
}

/// The chain D2 T2x3 D3 T3x2 for one numerator and one delta. D2 = delta * I.
template <RealScalar S>
struct FactorSet {
  S delta{};
  Mat2x3 t23;
  Diag3<S> d3;
  Mat3x2 t32;
  FactorVariant variant = FactorVariant::kCorrectedA;
};

/// The numerator matrix [[a_r, a_i], [a_i, -a_r]] so that a * conj(x) is
/// build_a2(a) * (x_r, x_i).
template <RealScalar S>
Mat2<S> build_a2(const Complex<S>& a) {
  Mat2<S> r;
  r(0, 0) = a.re;
  r(0, 1) = a.im;
  r(1, 0) = a.im;
  r(1, 1) = -a.re;
  return r;
}

template <RealScalar S>
FactorSet<S> build_factors(const Complex<S>& a, const S& delta, FactorVariant variant) {
  FactorSet<S> f;
  f.delta = delta;
  f.variant = variant;
  switch (variant) {
    case FactorVariant::kPrinted:
      f.t23 = Mat2x3({{{1, 0, 1}, {0, 1, 1}}});
      f.d3 = {{a.re - a.im, -(a.re + a.im), a.im}};
      f.t32 = Mat3x2({{{1, 0}, {0, -1}, {1, 1}}});
      return f;
    case FactorVariant::kCorrectedA:
      f.t23 = Mat2x3({{{1, 0, 1}, {0, -1, 1}}});
      f.d3 = {{a.re - a.im, a.re + a.im, a.im}};
      f.t32 = Mat3x2({{{1, 0}, {0, 1}, {1, 1}}});
      return f;
    case FactorVariant::kCorrectedB:
      f.t23 = Mat2x3({{{1, 0, 1}, {0, 1, 1}}});
      f.d3 = {{a.re - a.im, -(a.re + a.im), a.im}};
      f.t32 = Mat3x2({{{1, 0}, {0, 1}, {1, 1}}});
      return f;
  }
  throw std::invalid_argument("unknown factor variant");
}

namespace detail {

template <RealScalar S>
S signed_scale(int sign, const S& v) {
  if (sign == 0) return S(0);
  return sign > 0 ? v : -v;
}

// One row of a sign matrix applied to a vector: positive terms are summed
// first and negative terms subtracted, so a row with any +1 needs no
// negation. Never multiplies.
template <RealScalar S, int Rows, int Cols, std::size_t N>
  requires(N == Cols)
S gather_row(const SignMatrix<Rows, Cols>& t, int row, const std::array<S, N>& v) {
  std::optional<S> acc;
  for (int c = 0; c < Cols; ++c) {
    if (t(row, c) != 1) continue;
    acc = acc ? *acc + v[c] : v[c];
  }
  for (int c = 0; c < Cols; ++c) {
    if (t(row, c) != -1) continue;
    acc = acc ? *acc - v[c] : -v[c];
  }
  return acc ? *acc : S(0);
}

}  // namespace detail

/// Dense product D2 T2x3 D3 T3x2 by plain matrix multiplication.
template <RealScalar S>
Mat2<S> compose(const FactorSet<S>& f) {
  // (D3 T3x2) is 3x2.
  std::array<std::array<S, 2>, 3> inner{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 2; ++c) inner[r][c] = detail::signed_scale(f.t32(r, c), f.d3.d[r]);
  Mat2<S> out;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      S sum(0);
      for (int k = 0; k < 3; ++k) sum = sum + detail::signed_scale(f.t23(r, k), inner[k][c]);
      out(r, c) = f.delta * sum;
    }
  }
  return out;
}

/// Applies the chain right to left to (x_r, x_i) without forming the dense
/// product. Multiplies only at D3 (three times) and D2 (twice, by delta).
template <RealScalar S>
Complex<S> apply(const FactorSet<S>& f, const Complex<S>& x) {
  const std::array<S, 2> xv{x.re, x.im};
  std::array<S, 3> u;
  for (int r = 0; r < 3; ++r) u[r] = detail::gather_row(f.t32, r, xv);
  for (int r = 0; r < 3; ++r) u[r] = f.d3.d[r] * u[r];
  const S y0 = detail::gather_row(f.t23, 0, u);
  const S y1 = detail::gather_row(f.t23, 1, u);
  return {f.delta * y0, f.delta * y1};
}

/// Dense 2x2 matrix times vector.
template <RealScalar S>
Complex<S> mat_vec(const Mat2<S>& m, const Complex<S>& x) {
  return {m(0, 0) * x.re + m(0, 1) * x.im, m(1, 0) * x.re + m(1, 1) * x.im};
}

// ---------------------------------------------------------------------------
// Audit
// ---------------------------------------------------------------------------

/// 1-based (row, col) of a mismatching matrix entry.
struct EntryIndex {
  int row = 0;
  int col = 0;

  friend bool operator==(const EntryIndex&, const EntryIndex&) = default;
};

inline std::string to_string(const EntryIndex& e) {
  return "(" + std::to_string(e.row) + "," + std::to_string(e.col) + ")";
}

struct VariantAudit {
  FactorVariant variant = FactorVariant::kCorrectedA;
  bool compose_pass = false;
  bool apply_pass = false;
  std::optional<EntryIndex> first_mismatch;  // first composed entry that differs
  Complex<ExactRational> composed_quotient;  // apply(f, x)
  Mat2<ExactRational> composed;              // compose(f)

  bool pass() const { return compose_pass && apply_pass; }
};

struct AuditReport {
  Complex<ExactRational> a;
  Complex<ExactRational> x;
  Complex<ExactRational> expected_quotient;  // schoolbook quotient
  Mat2<ExactRational> expected;              // (1/R) A2
  std::vector<VariantAudit> variants;

  const VariantAudit& find(FactorVariant v) const {
    for (const auto& va : variants)
      if (va.variant == v) return va;
    throw std::out_of_range("variant not audited");
  }
};

/// Checks every variant over exact rationals at both the matrix level
/// (compose == (1/R) A2) and the vector level (apply == schoolbook quotient).
/// A variant may pass on special vectors while failing in general, so the
/// two levels are reported separately.
inline AuditReport audit(const Complex<ExactRational>& a, const Complex<ExactRational>& x) {
  using Q = ExactRational;
  const Q r = denom_norm(x);
  if (is_zero(r)) throw DivisionByZero();
  const Q delta = Q(1) / r;

  AuditReport rep;
  rep.a = a;
  rep.x = x;
  rep.expected_quotient = divide_naive(a, x);
  const Mat2<Q> a2 = build_a2(a);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) rep.expected(i, j) = delta * a2(i, j);

  for (FactorVariant v : kAllVariants) {
    const FactorSet<Q> f = build_factors(a, delta, v);
    VariantAudit va;
    va.variant = v;
    va.composed = compose(f);
    for (int i = 0; i < 2 && !va.first_mismatch; ++i)
      for (int j = 0; j < 2 && !va.first_mismatch; ++j)
        if (va.composed(i, j) != rep.expected(i, j)) va.first_mismatch = EntryIndex{i + 1, j + 1};
    va.compose_pass = !va.first_mismatch.has_value();
    va.composed_quotient = apply(f, x);
    va.apply_pass = va.composed_quotient == rep.expected_quotient;
    rep.variants.push_back(std::move(va));
  }
  return rep;
}

inline AuditReport audit_integers(int ar, int ai, int xr, int xi) {
  return audit(Complex<ExactRational>{ar, ai}, Complex<ExactRational>{xr, xi});
}

/// Per-variant outcome of auditing every point of an integer grid.
struct GridAuditSummary {
  FactorVariant variant = FactorVariant::kCorrectedA;
  std::size_t points = 0;
  std::size_t compose_failures = 0;
  std::size_t apply_failures = 0;
  std::optional<std::array<int, 4>> witness;  // first failing (a_r, a_i, x_r, x_i)
  std::optional<EntryIndex> witness_entry;    // first composed mismatch there

  bool compose_pass() const { return compose_failures == 0; }
  bool apply_pass() const { return apply_failures == 0; }
  bool pass() const { return compose_pass() && apply_pass(); }
};

/// Audits all a, x with components in [-half_width, half_width], x != 0.
inline std::vector<GridAuditSummary> audit_grid(int half_width) {
  std::vector<GridAuditSummary> out;
  for (FactorVariant v : kAllVariants) {
    GridAuditSummary s;
    s.variant = v;
    out.push_back(s);
  }
  const int w = half_width;
  for (int ar = -w; ar <= w; ++ar)
    for (int ai = -w; ai <= w; ++ai)
      for (int xr = -w; xr <= w; ++xr)
        for (int xi = -w; xi <= w; ++xi) {
          if (xr == 0 && xi == 0) continue;
          const AuditReport rep = audit_integers(ar, ai, xr, xi);
          for (auto& s : out) {
            const VariantAudit& va = rep.find(s.variant);
            ++s.points;
            if (!va.compose_pass) ++s.compose_failures;
            if (!va.apply_pass) ++s.apply_failures;
            if (!va.pass() && !s.witness) {
              s.witness = std::array{ar, ai, xr, xi};
              s.witness_entry = va.first_mismatch;
            }
          }
        }
  return out;
}

}  // namespace cdiv
