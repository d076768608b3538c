// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "cdiv/analysis/oracle.hpp"
#include "cdiv/analysis/rng.hpp"
#include "cdiv/kernels.hpp"
#include "cdiv/ulp.hpp"

namespace cdiv {

enum class SweepAlgorithm { kNaive, kFast, kPrepared, kSmith };
enum class Distribution { kWellScaled, kExtreme, kGrid };

inline constexpr std::array kSweepAlgorithms = {SweepAlgorithm::kNaive, SweepAlgorithm::kFast,
                                                SweepAlgorithm::kPrepared, SweepAlgorithm::kSmith};
inline constexpr std::array kDistributions = {Distribution::kWellScaled, Distribution::kExtreme,
                                              Distribution::kGrid};

/// Half-width of the integer grid distribution.
inline constexpr int kSweepGridHalfWidth = 3;

inline std::string_view algorithm_name(SweepAlgorithm a) {
  switch (a) {
    case SweepAlgorithm::kNaive:
      return "naive";
    case SweepAlgorithm::kFast:
      return "fast";
    case SweepAlgorithm::kPrepared:
      return "prepared";
    case SweepAlgorithm::kSmith:
      return "smith";
  }
  throw std::invalid_argument("unknown algorithm");
}

inline std::string_view distribution_name(Distribution d) {
  switch (d) {
    case Distribution::kWellScaled:
      return "wellscaled";
    case Distribution::kExtreme:
      return "extreme";
    case Distribution::kGrid:
      return "grid";
  }
  throw std::invalid_argument("unknown distribution");
}

inline SweepAlgorithm parse_algorithm(std::string_view s) {
  for (auto a : kSweepAlgorithms)
    if (algorithm_name(a) == s) return a;
  throw std::invalid_argument("unknown algorithm: " + std::string(s));
}

inline Distribution parse_distribution(std::string_view s) {
  for (auto d : kDistributions)
    if (distribution_name(d) == s) return d;
  throw std::invalid_argument("unknown distribution: " + std::string(s));
}

struct SweepConfig {
  SweepAlgorithm algorithm = SweepAlgorithm::kFast;
  Distribution distribution = Distribution::kWellScaled;
  std::size_t sample_count = 1000;  // ignored by the grid distribution
  std::uint64_t seed = 0;           // ignored by the grid distribution
  std::filesystem::path output_path;  // empty: records are not written
};

// ---------------------------------------------------------------------------
// Flags
// ---------------------------------------------------------------------------

enum class Flag : unsigned { kOverflow = 1, kUnderflow = 2, kNan = 4, kDivZero = 8 };

inline constexpr std::array kAllFlags = {Flag::kOverflow, Flag::kUnderflow, Flag::kNan,
                                         Flag::kDivZero};

inline std::string_view flag_name(Flag f) {
  switch (f) {
    case Flag::kOverflow:
      return "overflow";
    case Flag::kUnderflow:
      return "underflow";
    case Flag::kNan:
      return "nan";
    case Flag::kDivZero:
      return "divzero";
  }
  return "?";
}

class FlagSet {
 public:
  constexpr FlagSet() = default;

  constexpr bool has(Flag f) const { return bits_ & static_cast<unsigned>(f); }
  constexpr void set(Flag f) { bits_ |= static_cast<unsigned>(f); }
  constexpr bool empty() const { return bits_ == 0; }

  /// '|'-joined flag tokens in a fixed order; empty when no flag is set.
  std::string str() const {
    std::string out;
    for (Flag f : kAllFlags) {
      if (!has(f)) continue;
      if (!out.empty()) out += '|';
      out += flag_name(f);
    }
    return out;
  }

  friend constexpr bool operator==(FlagSet, FlagSet) = default;

 private:
  unsigned bits_ = 0;
};

/// Everything the flag classifier looks at for one evaluation.
struct FlagInputs {
  Complex<double> a;
  Complex<double> x;
  Complex<double> y;
  Complex<double> ref;
  bool ref_overflow = false;
  std::optional<double> norm;  // computed x_r^2 + x_i^2 when the kernel forms it
  bool divzero = false;        // the kernel rejected a zero norm
};

/// overflow: something went infinite from finite inputs (the norm, an output,
///   or the exact quotient itself).
/// underflow: the computed norm is zero or subnormal, or an output component
///   is below the normal range while the reference is not.
/// nan: an output component is NaN.
/// divzero: the zero-norm branch was taken.
inline FlagSet classify_flags(const FlagInputs& in) {
  constexpr double kMinNormal = std::numeric_limits<double>::min();
  FlagSet flags;
  const bool finite_inputs = std::isfinite(in.a.re) && std::isfinite(in.a.im) &&
                             std::isfinite(in.x.re) && std::isfinite(in.x.im);
  const bool norm_inf = in.norm && std::isinf(*in.norm);
  if (finite_inputs && (norm_inf || std::isinf(in.y.re) || std::isinf(in.y.im) || in.ref_overflow))
    flags.set(Flag::kOverflow);

  const bool norm_tiny = in.norm && std::fabs(*in.norm) < kMinNormal;
  const auto lost = [&](double y, double ref) {
    return std::isfinite(y) && std::fabs(y) < kMinNormal && std::fabs(ref) >= kMinNormal;
  };
  if (norm_tiny || lost(in.y.re, in.ref.re) || lost(in.y.im, in.ref.im))
    flags.set(Flag::kUnderflow);

  if (std::isnan(in.y.re) || std::isnan(in.y.im)) flags.set(Flag::kNan);
  if (in.divzero) flags.set(Flag::kDivZero);
  return flags;
}

// ---------------------------------------------------------------------------
// Records and summary
// ---------------------------------------------------------------------------

struct SweepRecord {
  Complex<double> a;
  Complex<double> x;
  SweepAlgorithm algorithm = SweepAlgorithm::kFast;
  Complex<double> y;
  Complex<double> ref;
  double relerr_re = 0.0;
  double relerr_im = 0.0;
  std::optional<std::uint64_t> ulp_re;  // empty: incomparable
  std::optional<std::uint64_t> ulp_im;
  FlagSet flags;
};

struct ComponentStats {
  double max_relerr = 0.0;
  double median_relerr = 0.0;
  std::uint64_t max_ulp = 0;
  double median_ulp = 0.0;
  std::size_t comparable = 0;  // records with a finite ULP distance
};

struct SweepSummary {
  std::size_t records = 0;
  ComponentStats re;
  ComponentStats im;
  std::size_t clean = 0;  // records without flags
  std::array<std::size_t, kAllFlags.size()> flag_counts{};

  std::size_t flag_count(Flag f) const {
    for (std::size_t i = 0; i < kAllFlags.size(); ++i)
      if (kAllFlags[i] == f) return flag_counts[i];
    return 0;
  }
  std::size_t flagged() const { return records - clean; }
  std::uint64_t max_ulp() const { return std::max(re.max_ulp, im.max_ulp); }
};

struct SweepResult {
  std::vector<SweepRecord> records;
  SweepSummary summary;
};

namespace detail {

inline double relative_error(double y, double ref) {
  constexpr double kMinNormal = std::numeric_limits<double>::min();
  return std::fabs(y - ref) / std::max(std::fabs(ref), kMinNormal);
}

template <class T>
double median_of(std::vector<T> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? static_cast<double>(v[n / 2])
               : (static_cast<double>(v[n / 2 - 1]) + static_cast<double>(v[n / 2])) / 2.0;
}

inline ComponentStats component_stats(const std::vector<SweepRecord>& recs, bool real_part) {
  ComponentStats s;
  std::vector<double> rel;
  std::vector<std::uint64_t> ulps;
  for (const auto& r : recs) {
    const auto& u = real_part ? r.ulp_re : r.ulp_im;
    if (!u) continue;
    const double e = real_part ? r.relerr_re : r.relerr_im;
    ulps.push_back(*u);
    rel.push_back(e);
    s.max_ulp = std::max(s.max_ulp, *u);
    s.max_relerr = std::max(s.max_relerr, e);
  }
  s.comparable = ulps.size();
  s.median_relerr = median_of(std::move(rel));
  s.median_ulp = median_of(std::move(ulps));
  return s;
}

inline std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

}  // namespace detail

inline SweepSummary summarize(const std::vector<SweepRecord>& recs) {
  SweepSummary s;
  s.records = recs.size();
  s.re = detail::component_stats(recs, true);
  s.im = detail::component_stats(recs, false);
  for (const auto& r : recs) {
    if (r.flags.empty()) ++s.clean;
    for (std::size_t i = 0; i < kAllFlags.size(); ++i)
      if (r.flags.has(kAllFlags[i])) ++s.flag_counts[i];
  }
  return s;
}

/// Runs one algorithm on one operand pair in double precision and compares
/// it with the correctly rounded quotient.
inline SweepRecord evaluate(SweepAlgorithm alg, const Complex<double>& a,
                            const Complex<double>& x) {
  constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
  SweepRecord rec;
  rec.a = a;
  rec.x = x;
  rec.algorithm = alg;

  FlagInputs fi;
  fi.a = a;
  fi.x = x;
  if (alg != SweepAlgorithm::kSmith) fi.norm = denom_norm(x);
  try {
    switch (alg) {
      case SweepAlgorithm::kNaive:
        rec.y = divide_naive(a, x);
        break;
      case SweepAlgorithm::kFast:
        rec.y = divide_fast(a, x);
        break;
      case SweepAlgorithm::kPrepared:
        rec.y = divide_prepared(a, prepare_denominator(x));
        break;
      case SweepAlgorithm::kSmith:
        rec.y = divide_smith(a, x);
        break;
    }
  } catch (const DivisionByZero&) {
    rec.y = {kNan, kNan};
    fi.divzero = true;
  }

  bool ref_overflow = false;
  if (!(x.re == 0.0 && x.im == 0.0)) {
    const OracleQuotient o = oracle_divide(a, x);
    rec.ref = o.value;
    ref_overflow = o.overflow();
  } else {
    rec.ref = {kNan, kNan};
  }

  rec.relerr_re = detail::relative_error(rec.y.re, rec.ref.re);
  rec.relerr_im = detail::relative_error(rec.y.im, rec.ref.im);
  rec.ulp_re = ulp_distance(rec.y.re, rec.ref.re);
  rec.ulp_im = ulp_distance(rec.y.im, rec.ref.im);

  fi.y = rec.y;
  fi.ref = rec.ref;
  fi.ref_overflow = ref_overflow;
  rec.flags = classify_flags(fi);
  return rec;
}

/// Operand pairs for a configuration, in stream order. Random draws take
/// a_r, a_i, x_r, x_i in that order, each a random sign times a magnitude
/// log-uniform over the distribution's range.
inline std::vector<std::array<Complex<double>, 2>> sweep_inputs(const SweepConfig& cfg) {
  std::vector<std::array<Complex<double>, 2>> out;
  if (cfg.distribution == Distribution::kGrid) {
    const int w = kSweepGridHalfWidth;
    for (int ar = -w; ar <= w; ++ar)
      for (int ai = -w; ai <= w; ++ai)
        for (int xr = -w; xr <= w; ++xr)
          for (int xi = -w; xi <= w; ++xi) {
            if (xr == 0 && xi == 0) continue;
            out.push_back({Complex<double>{double(ar), double(ai)},
                           Complex<double>{double(xr), double(xi)}});
          }
    return out;
  }
  const double lo = cfg.distribution == Distribution::kWellScaled ? -3.0 : -300.0;
  const double hi = -lo;
  Lcg64 rng(cfg.seed);
  out.reserve(cfg.sample_count);
  for (std::size_t i = 0; i < cfg.sample_count; ++i) {
    const double ar = rng.log_uniform_signed(lo, hi);
    const double ai = rng.log_uniform_signed(lo, hi);
    const double xr = rng.log_uniform_signed(lo, hi);
    const double xi = rng.log_uniform_signed(lo, hi);
    out.push_back({Complex<double>{ar, ai}, Complex<double>{xr, xi}});
  }
  return out;
}

inline constexpr std::string_view kSweepCsvHeader =
    "a_re,a_im,x_re,x_im,alg,y_re,y_im,ref_re,ref_im,relerr_re,relerr_im,ulp_re,ulp_im,flags";

/// One CSV row; incomparable ULP fields are written as NA.
inline std::string csv_row(const SweepRecord& r) {
  using detail::format_double;
  const auto ulp = [](const std::optional<std::uint64_t>& u) {
    return u ? std::to_string(*u) : std::string("NA");
  };
  std::string s;
  for (double v : {r.a.re, r.a.im, r.x.re, r.x.im}) s += format_double(v) + ',';
  s += algorithm_name(r.algorithm);
  for (double v : {r.y.re, r.y.im, r.ref.re, r.ref.im, r.relerr_re, r.relerr_im})
    s += ',' + format_double(v);
  s += ',' + ulp(r.ulp_re) + ',' + ulp(r.ulp_im) + ',' + r.flags.str();
  return s;
}

inline void write_csv(std::ostream& os, const std::vector<SweepRecord>& recs) {
  os << kSweepCsvHeader << '\n';
  for (const auto& r : recs) os << csv_row(r) << '\n';
}

/// Unwritable output path.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Draws the inputs, evaluates every pair, and writes the CSV when an output
/// path is configured. Deterministic in the configuration.
inline SweepResult run_sweep(const SweepConfig& cfg) {
  if (cfg.sample_count < 1 && cfg.distribution != Distribution::kGrid)
    throw std::invalid_argument("sample_count must be at least 1");
  std::ofstream out;
  if (!cfg.output_path.empty()) {
    out.open(cfg.output_path, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputError("cannot write " + cfg.output_path.string());
  }
  SweepResult res;
  for (const auto& [a, x] : sweep_inputs(cfg)) res.records.push_back(evaluate(cfg.algorithm, a, x));
  res.summary = summarize(res.records);
  if (out.is_open()) {
    write_csv(out, res.records);
    out.flush();
    if (!out) throw OutputError("failed writing " + cfg.output_path.string());
  }
  return res;
}

}  // namespace cdiv
