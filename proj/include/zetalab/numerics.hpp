// Copyright 2026 The zetalab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Precision context, exact binomials and correctly rounded summation.

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zetalab/errors.hpp"
#include "zetalab/real.hpp"

namespace zetalab {

/// Working precision shared by every evaluation. Immutable once built.
class PrecisionContext {
 public:
  static constexpr Bits kMinBits = 53;
  static constexpr Bits kDefaultBits = 256;
  static constexpr Bits kMaxBits = Bits{1} << 20;

  explicit PrecisionContext(Bits bits = kDefaultBits) : bits_(bits) {
    if (bits < kMinBits || bits > kMaxBits) {
      throw DomainError("precision must lie in [53, 1048576] bits, got " + std::to_string(bits));
    }
  }

  [[nodiscard]] Bits bits() const { return bits_; }

  /// A context carrying `extra` guard bits on top of this one.
  [[nodiscard]] PrecisionContext widened(Bits extra) const { return PrecisionContext(bits_ + extra); }

  [[nodiscard]] Real zero() const { return Real(bits_); }
  [[nodiscard]] Real real(double x) const { return Real(x, bits_); }
  [[nodiscard]] Real real(long x) const { return Real(x, bits_); }
  [[nodiscard]] Real real(int x) const { return Real(static_cast<long>(x), bits_); }
  [[nodiscard]] Real real(const mpz_class& x) const { return Real(x, bits_); }
  [[nodiscard]] Real real(const Real& x) const { return Real(x, bits_); }
  [[nodiscard]] Real parse(std::string_view text) const { return Real::parse(text, bits_); }
  [[nodiscard]] Complex complex(double re, double im) const { return Complex(re, im, bits_); }
  [[nodiscard]] Complex complex(const Complex& z) const { return rounded(z, bits_); }

  /// Significant decimal digits worth printing: bits * log10(2) - 2.
  [[nodiscard]] int decimal_digits() const {
    return std::max(1, static_cast<int>(std::floor(static_cast<double>(bits_) * 0.30102999566398120)) - 2);
  }

  friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

 private:
  Bits bits_;
};

/// Inclusive linear axis; a single step sits at `min`.
struct Axis {
  Real min;
  Real max;
  unsigned steps = 1;

  [[nodiscard]] Real at(unsigned i) const {
    if (steps <= 1) return min;
    return min + (max - min) * Real(static_cast<long>(i), max.precision()) / static_cast<long>(steps - 1);
  }

  [[nodiscard]] std::vector<Real> values() const {
    std::vector<Real> out;
    out.reserve(steps);
    for (unsigned i = 0; i < steps; ++i) out.push_back(at(i));
    return out;
  }
};

/// C(k, n) exactly; zero when n > k.
inline mpz_class binomial(unsigned long k, unsigned long n) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), k, n);
  return r;
}

/// Outcome of compensated_sum. `abs_total` is sum |term_i| rounded upward and
/// measures how much cancellation the sum went through.
struct SumResult {
  Real value;
  Real error_bound;
  Real abs_total;
};

/// Sums `terms` with a single final rounding to the context precision.
/// The exact sum lies within `error_bound` of `value`.
inline SumResult compensated_sum(std::span<const Real> terms, const PrecisionContext& ctx) {
  SumResult out{ctx.zero(), ctx.zero(), ctx.zero()};
  if (terms.empty()) return out;

  std::vector<mpfr_ptr> ptrs;
  ptrs.reserve(terms.size());
  for (const Real& t : terms) ptrs.push_back(const_cast<mpfr_ptr>(t.get()));

  const int ternary = mpfr_sum(out.value.get(), ptrs.data(), ptrs.size(), MPFR_RNDN);
  if (ternary != 0) out.error_bound = ldexp(Real(out.value.ulp(), ctx.bits()), -1);

  std::vector<Real> magnitudes;
  magnitudes.reserve(terms.size());
  for (const Real& t : terms) magnitudes.push_back(abs(t));
  for (std::size_t i = 0; i < terms.size(); ++i) ptrs[i] = magnitudes[i].get();
  mpfr_sum(out.abs_total.get(), ptrs.data(), ptrs.size(), MPFR_RNDU);
  return out;
}

inline SumResult compensated_sum(const std::vector<Real>& terms, const PrecisionContext& ctx) {
  return compensated_sum(std::span<const Real>(terms), ctx);
}

/// Bits lost to cancellation: log2(sum |terms| / |value|), clamped to [0, bits].
inline double bits_lost(const SumResult& s, const PrecisionContext& ctx) {
  const double cap = static_cast<double>(ctx.bits());
  if (s.abs_total.is_zero()) return 0.0;
  if (s.value.is_zero()) return cap;
  const double lost = log2(s.abs_total / abs(s.value)).to_double();
  return std::clamp(lost, 0.0, cap);
}

}  // namespace zetalab
