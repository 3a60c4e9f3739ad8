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

// Value-semantics wrappers over MPFR. Every Real carries its own precision;
// binary operations produce the larger precision of their operands, rounding
// is always to nearest-even.

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zetalab/errors.hpp"

namespace zetalab {

using Bits = mpfr_prec_t;

class Real {
 public:
  static constexpr mpfr_rnd_t kRound = MPFR_RNDN;

  Real() : Real(Bits{53}) {}
  explicit Real(Bits prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(double x, Bits prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, x, kRound);
  }
  Real(long x, Bits prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, x, kRound);
  }
  Real(int x, Bits prec) : Real(static_cast<long>(x), prec) {}
  Real(unsigned long x, Bits prec) {
    mpfr_init2(v_, prec);
    mpfr_set_ui(v_, x, kRound);
  }
  Real(const mpz_class& x, Bits prec) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, x.get_mpz_t(), kRound);
  }
  Real(const mpq_class& x, Bits prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, x.get_mpq_t(), kRound);
  }
  /// Re-rounds `x` to `prec` bits.
  Real(const Real& x, Bits prec) {
    mpfr_init2(v_, prec);
    mpfr_set(v_, x.v_, kRound);
  }

  /// Parses a decimal literal; throws DomainError on malformed input.
  static Real parse(std::string_view text, Bits prec) {
    Real r(prec);
    std::string s(text);
    char* end = nullptr;
    if (!s.empty()) mpfr_strtofr(r.v_, s.c_str(), &end, 10, kRound);
    if (s.empty() || end != s.c_str() + s.size()) throw DomainError("not a decimal number: '" + s + "'");
    return r;
  }

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, kRound);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, kRound);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  [[nodiscard]] Bits precision() const { return mpfr_get_prec(v_); }
  [[nodiscard]] mpfr_srcptr get() const { return v_; }
  [[nodiscard]] mpfr_ptr get() { return v_; }

  [[nodiscard]] bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  [[nodiscard]] bool is_finite() const { return mpfr_number_p(v_) != 0; }
  [[nodiscard]] bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  [[nodiscard]] int sign() const { return mpfr_sgn(v_); }
  [[nodiscard]] double to_double() const { return mpfr_get_d(v_, kRound); }
  [[nodiscard]] long to_long() const { return mpfr_get_si(v_, kRound); }

  /// Unit in the last place of this value at its own precision (0 for zero).
  [[nodiscard]] Real ulp() const {
    Real u(Bits{32});
    if (is_zero() || !is_finite()) return u;
    mpfr_set_ui_2exp(u.v_, 1, mpfr_get_exp(v_) - precision(), kRound);
    return u;
  }

  /// Exact dyadic rational value; requires a finite value.
  [[nodiscard]] mpq_class to_rational() const {
    if (!is_finite()) throw DomainError("non-finite value has no rational form");
    // Zero reports the minimum exponent; skip the 2^|emin| scale.
    if (is_zero()) return 0;
    mpz_class mant;
    const mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), v_);
    mpq_class q(mant);
    if (e >= 0) {
      mpz_class scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(e));
      q *= scale;
    } else {
      mpz_class scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(-e));
      q /= scale;
    }
    q.canonicalize();
    return q;
  }

  /// Decimal rendering with `digits` significant digits, locale independent.
  [[nodiscard]] std::string str(int digits) const {
    if (is_nan()) return "nan";
    if (!is_finite()) return sign() > 0 ? "inf" : "-inf";
    digits = std::max(digits, 1);
    const int n = mpfr_snprintf(nullptr, 0, "%.*Rg", digits, v_);
    std::string out(static_cast<std::size_t>(n) + 1, '\0');
    mpfr_snprintf(out.data(), out.size(), "%.*Rg", digits, v_);
    out.resize(static_cast<std::size_t>(n));
    return out;
  }

  Real& operator+=(const Real& o) { return inplace(o, mpfr_add); }
  Real& operator-=(const Real& o) { return inplace(o, mpfr_sub); }
  Real& operator*=(const Real& o) { return inplace(o, mpfr_mul); }
  Real& operator/=(const Real& o) { return inplace(o, mpfr_div); }
  Real& operator+=(long o) { mpfr_add_si(v_, v_, o, kRound); return *this; }
  Real& operator-=(long o) { mpfr_sub_si(v_, v_, o, kRound); return *this; }
  Real& operator*=(long o) { mpfr_mul_si(v_, v_, o, kRound); return *this; }
  Real& operator/=(long o) { mpfr_div_si(v_, v_, o, kRound); return *this; }

  Real operator-() const {
    Real r(*this);
    mpfr_neg(r.v_, r.v_, kRound);
    return r;
  }

  friend Real operator+(const Real& a, const Real& b) { return binary(a, b, mpfr_add); }
  friend Real operator-(const Real& a, const Real& b) { return binary(a, b, mpfr_sub); }
  friend Real operator*(const Real& a, const Real& b) { return binary(a, b, mpfr_mul); }
  friend Real operator/(const Real& a, const Real& b) { return binary(a, b, mpfr_div); }

  friend Real operator+(Real a, long b) { return a += b; }
  friend Real operator-(Real a, long b) { return a -= b; }
  friend Real operator*(Real a, long b) { return a *= b; }
  friend Real operator/(Real a, long b) { return a /= b; }
  friend Real operator+(long a, Real b) { return b += a; }
  friend Real operator*(long a, Real b) { return b *= a; }
  friend Real operator-(long a, const Real& b) {
    Real r(b.precision());
    mpfr_si_sub(r.v_, a, b.v_, kRound);
    return r;
  }
  friend Real operator/(long a, const Real& b) {
    Real r(b.precision());
    mpfr_si_div(r.v_, a, b.v_, kRound);
    return r;
  }

  // A double would otherwise convert silently to long.
  template <std::floating_point F> Real& operator+=(F) = delete;
  template <std::floating_point F> Real& operator-=(F) = delete;
  template <std::floating_point F> Real& operator*=(F) = delete;
  template <std::floating_point F> Real& operator/=(F) = delete;
  template <std::floating_point F> friend Real operator+(const Real&, F) = delete;
  template <std::floating_point F> friend Real operator-(const Real&, F) = delete;
  template <std::floating_point F> friend Real operator*(const Real&, F) = delete;
  template <std::floating_point F> friend Real operator/(const Real&, F) = delete;
  template <std::floating_point F> friend Real operator+(F, const Real&) = delete;
  template <std::floating_point F> friend Real operator-(F, const Real&) = delete;
  template <std::floating_point F> friend Real operator*(F, const Real&) = delete;
  template <std::floating_point F> friend Real operator/(F, const Real&) = delete;

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, long b) {
    if (a.is_nan()) return std::partial_ordering::unordered;
    const int c = mpfr_cmp_si(a.v_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend bool operator==(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, double b) {
    if (a.is_nan() || b != b) return std::partial_ordering::unordered;
    const int c = mpfr_cmp_d(a.v_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

  friend std::ostream& operator<<(std::ostream& os, const Real& x) {
    return os << x.str(static_cast<int>(static_cast<double>(x.precision()) * 0.30103));
  }

 private:
  using Op = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

  static Real binary(const Real& a, const Real& b, Op op) {
    Real r(std::max(a.precision(), b.precision()));
    op(r.v_, a.v_, b.v_, kRound);
    return r;
  }
  Real& inplace(const Real& o, Op op) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), kRound);
    op(v_, v_, o.v_, kRound);
    return *this;
  }

  mpfr_t v_;
};

namespace detail {
using UnaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
inline Real apply(const Real& x, UnaryOp op) {
  Real r(x.precision());
  op(r.get(), x.get(), Real::kRound);
  return r;
}
}  // namespace detail

inline Real abs(const Real& x) { return detail::apply(x, mpfr_abs); }
inline Real sqrt(const Real& x) { return detail::apply(x, mpfr_sqrt); }
inline Real exp(const Real& x) { return detail::apply(x, mpfr_exp); }
inline Real expm1(const Real& x) { return detail::apply(x, mpfr_expm1); }
inline Real log(const Real& x) { return detail::apply(x, mpfr_log); }
inline Real log1p(const Real& x) { return detail::apply(x, mpfr_log1p); }
inline Real log2(const Real& x) { return detail::apply(x, mpfr_log2); }
inline Real sin(const Real& x) { return detail::apply(x, mpfr_sin); }
inline Real cos(const Real& x) { return detail::apply(x, mpfr_cos); }

inline Real pow(const Real& x, const Real& y) {
  Real r(std::max(x.precision(), y.precision()));
  mpfr_pow(r.get(), x.get(), y.get(), Real::kRound);
  return r;
}
inline Real pow(const Real& x, long n) {
  Real r(x.precision());
  mpfr_pow_si(r.get(), x.get(), n, Real::kRound);
  return r;
}
inline Real atan2(const Real& y, const Real& x) {
  Real r(std::max(x.precision(), y.precision()));
  mpfr_atan2(r.get(), y.get(), x.get(), Real::kRound);
  return r;
}
inline Real hypot(const Real& x, const Real& y) {
  Real r(std::max(x.precision(), y.precision()));
  mpfr_hypot(r.get(), x.get(), y.get(), Real::kRound);
  return r;
}
inline Real max(const Real& a, const Real& b) { return (a < b) ? b : a; }
inline Real min(const Real& a, const Real& b) { return (b < a) ? b : a; }

/// x * 2^e, exact.
inline Real ldexp(const Real& x, long e) {
  Real r(x.precision());
  mpfr_mul_2si(r.get(), x.get(), e, Real::kRound);
  return r;
}

/// Both sin and cos of x in one call.
inline std::pair<Real, Real> sin_cos(const Real& x) {
  std::pair<Real, Real> sc{Real(x.precision()), Real(x.precision())};
  mpfr_sin_cos(sc.first.get(), sc.second.get(), x.get(), Real::kRound);
  return sc;
}

inline Real pi(Bits prec) {
  Real r(prec);
  mpfr_const_pi(r.get(), Real::kRound);
  return r;
}

/// Natural log of a positive integer.
inline Real log(unsigned long m, Bits prec) {
  Real r(static_cast<unsigned long>(m), prec);
  mpfr_log(r.get(), r.get(), Real::kRound);
  return r;
}

/// Complex number over Real components.
struct Complex {
  Real re;
  Real im;

  Complex() = default;
  explicit Complex(Bits prec) : re(prec), im(prec) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(Real r) : re(std::move(r)), im(re.precision()) {}
  Complex(double r, double i, Bits prec) : re(r, prec), im(i, prec) {}

  [[nodiscard]] Bits precision() const { return std::max(re.precision(), im.precision()); }
  [[nodiscard]] bool is_finite() const { return re.is_finite() && im.is_finite(); }

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }
  Complex& operator/=(const Complex& o) { return *this = *this / o; }
  Complex& operator*=(const Real& o) { re *= o; im *= o; return *this; }
  Complex& operator/=(const Real& o) { re /= o; im /= o; return *this; }

  Complex operator-() const { return {-re, -im}; }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    // Smith's algorithm avoids overflow of |b|^2 in extreme ranges.
    if (abs(b.re) >= abs(b.im)) {
      const Real r = b.im / b.re;
      const Real d = b.re + b.im * r;
      return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
    }
    const Real r = b.re / b.im;
    const Real d = b.re * r + b.im;
    return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
  }
  friend Complex operator*(Complex a, const Real& b) { return a *= b; }
  friend Complex operator*(const Real& b, Complex a) { return a *= b; }
  friend Complex operator/(Complex a, const Real& b) { return a /= b; }
  friend Complex operator+(Complex a, const Real& b) { a.re += b; return a; }
  friend Complex operator-(Complex a, const Real& b) { a.re -= b; return a; }
  friend Complex operator-(const Real& b, const Complex& a) { return {b - a.re, -a.im}; }
  friend Complex operator+(Complex a, long b) { a.re += b; return a; }
  friend Complex operator-(Complex a, long b) { a.re -= b; return a; }
  friend Complex operator-(long b, const Complex& a) { return {b - a.re, -a.im}; }

  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

inline Real abs(const Complex& z) { return hypot(z.re, z.im); }
inline Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
inline Complex conj(const Complex& z) { return {z.re, -z.im}; }

inline Complex exp(const Complex& z) {
  const Real m = exp(z.re);
  auto [s, c] = sin_cos(z.im);
  return {m * c, m * s};
}

/// e^{i theta}.
inline Complex exp_i(const Real& theta) {
  auto [s, c] = sin_cos(theta);
  return {std::move(c), std::move(s)};
}

/// base^(-s) for a positive integer base, given log(base) at working precision.
inline Complex pow_neg(const Real& log_base, const Complex& s) {
  const Real mag = exp(-(s.re * log_base));
  if (s.im.is_zero()) return Complex(mag);
  auto [sn, cs] = sin_cos(s.im * log_base);
  return {mag * cs, -(mag * sn)};
}

/// z^n for integer n >= 0 by repeated squaring.
inline Complex pow(Complex z, unsigned long n) {
  Complex r(Real(1L, z.precision()), Real(z.precision()));
  while (n != 0) {
    if ((n & 1UL) != 0) r *= z;
    n >>= 1UL;
    if (n != 0) z *= z;
  }
  return r;
}

/// Rounds every component to `prec` bits.
inline Complex rounded(const Complex& z, Bits prec) { return {Real(z.re, prec), Real(z.im, prec)}; }

}  // namespace zetalab
