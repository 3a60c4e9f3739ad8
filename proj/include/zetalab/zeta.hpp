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

// Riemann zeta on re(s) > -1, the auxiliary function Q(s) = 1 - ((s-1)/s) zeta(s),
// the transfer function G(s) = 1 / ((s-1) zeta(s)) and its geometric-like series.
//
// The production evaluator is the alternating eta series with Borwein's
// Chebyshev acceleration, zeta = eta / (1 - 2^{1-s}). Euler-Maclaurin summation
// is kept alongside as an independent evaluator for cross-checks.

#include <gmpxx.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "zetalab/errors.hpp"
#include "zetalab/numerics.hpp"
#include "zetalab/parallel.hpp"
#include "zetalab/real.hpp"

namespace zetalab {

/// Exclusion radius around the points 1 + 2 pi i k / ln 2, k != 0.
inline constexpr double kEtaSingularityRadius = 1e-6;

namespace detail {

inline std::string describe(const Complex& s) {
  std::ostringstream os;
  os << s.re.str(17) << (s.im.sign() < 0 ? " - " : " + ") << abs(s.im).str(17) << "i";
  return os.str();
}

inline void check_zeta_domain(const Complex& s) {
  if (!s.is_finite()) throw DomainError("zeta argument must be finite");
  if (s.re == 1L && s.im.is_zero()) throw PoleError("zeta has a pole at s = 1");
  if (!(s.re > -1L)) throw DomainError("zeta is supported on re(s) > -1, got s = " + describe(s));

  const double period = 2.0 * std::numbers::pi / std::numbers::ln2;
  const double k = std::nearbyint(s.im.to_double() / period);
  if (k != 0.0) {
    const Bits bits = std::max<Bits>(s.precision(), 64);
    const Real centre_im = Real(k, bits) * ldexp(pi(bits), 1) / log(2UL, bits);
    const Real dist = hypot(Real(s.re, bits) - 1L, Real(s.im, bits) - centre_im);
    if (dist < kEtaSingularityRadius) {
      throw SingularityGuardError("eta method is singular near s = 1 + 2 pi i k / ln 2 (k = " +
                                  std::to_string(static_cast<long>(k)) + ")");
    }
  }
}

/// Borwein weights c_k = d_n - d_k for k < n, with d_n, as exact integers.
inline std::vector<mpz_class> borwein_weights(unsigned n, mpz_class& d_n) {
  std::vector<mpz_class> d(n + 1);
  mpz_class term = 1;  // n (n+i-1)! 4^i / ((n-i)! (2i)!) at i = 0
  mpz_class acc = term;
  d[0] = acc;
  for (unsigned i = 1; i <= n; ++i) {
    term *= 4UL * (n + i - 1UL) * (n - i + 1UL);
    mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), 2UL * i * (2UL * i - 1UL));
    acc += term;
    d[i] = acc;
  }
  d_n = d[n];
  std::vector<mpz_class> c(n);
  for (unsigned k = 0; k < n; ++k) c[k] = d_n - d[k];
  return c;
}

/// B_0 .. B_m exactly.
inline std::vector<mpq_class> bernoulli_numbers(unsigned m) {
  std::vector<mpq_class> b(m + 1);
  b[0] = 1;
  for (unsigned j = 1; j <= m; ++j) {
    mpq_class acc = 0;
    for (unsigned k = 0; k < j; ++k) acc += mpq_class(binomial(j + 1, k)) * b[k];
    b[j] = -acc / (j + 1);
    b[j].canonicalize();
  }
  return b;
}

}  // namespace detail

/// Number of Borwein terms for `bits` of accuracy at imaginary part t and real part sigma.
inline unsigned borwein_terms(double sigma, double t, Bits bits) {
  t = std::abs(t);
  double nats = static_cast<double>(bits) * std::numbers::ln2 + std::log(3.0 * (1.0 + 2.0 * t)) +
                std::numbers::pi * t / 2.0;
  if (sigma < 0.5) nats += (0.5 - sigma) * std::log(static_cast<double>(bits) + t + 2.0) * 2.0;
  const double rate = std::log(3.0 + 2.0 * std::numbers::sqrt2);
  return static_cast<unsigned>(std::ceil(nats / rate)) + 4;
}

/// zeta(s) for s != 1, re(s) > -1, away from the eta singularities.
inline Complex zeta(const Complex& s, const PrecisionContext& ctx) {
  detail::check_zeta_domain(s);

  const double sigma = s.re.to_double();
  const double t = s.im.to_double();
  const double dist_to_one = std::hypot(sigma - 1.0, t);
  // 1 - 2^{1-s} cancels by about -log2|s-1| bits near s = 1.
  const Bits near_one = dist_to_one < 1.0 ? static_cast<Bits>(std::ceil(-std::log2(dist_to_one))) : 0;
  const Bits target = ctx.bits() + 16 + near_one;
  const unsigned n = borwein_terms(sigma, t, target);
  const Bits w = target + static_cast<Bits>(std::ceil(std::log2(static_cast<double>(n) + 1.0))) + 8;

  mpz_class d_n;
  const auto weights = detail::borwein_weights(n, d_n);
  const Complex sw = rounded(s, w);
  const bool real_axis = sw.im.is_zero();

  Real acc_re(w);
  Real acc_im(w);
  for (unsigned k = 0; k < n; ++k) {
    const Real lg = log(static_cast<unsigned long>(k) + 1UL, w);
    const Real c(weights[k], w);
    const Real mag = exp(-(sw.re * lg)) * c;
    if (real_axis) {
      if ((k & 1U) == 0) acc_re += mag; else acc_re -= mag;
      continue;
    }
    auto [sn, cs] = sin_cos(sw.im * lg);
    if ((k & 1U) == 0) {
      acc_re += mag * cs;
      acc_im -= mag * sn;
    } else {
      acc_re -= mag * cs;
      acc_im += mag * sn;
    }
  }
  const Real dn(d_n, w);
  Complex eta{acc_re / dn, acc_im / dn};

  // 1 - 2^{1-s}
  const Complex one_minus_s = 1L - sw;
  const Complex two_pow = exp(one_minus_s * log(2UL, w));
  const Complex denom = 1L - two_pow;
  if (real_axis) return Complex(ctx.real(eta.re / denom.re));
  return ctx.complex(eta / denom);
}

inline Complex zeta(const Real& sigma, const PrecisionContext& ctx) {
  return zeta(Complex(ctx.real(sigma)), ctx);
}

/// Truncation of the Euler-Maclaurin evaluator. Zero picks automatically.
struct EulerMaclaurinTerms {
  unsigned direct = 0;       // terms summed explicitly, k < direct
  unsigned corrections = 0;  // Bernoulli correction terms
};

/// Independent zeta evaluator: Euler-Maclaurin summation. Valid for any s != 1.
inline Complex zeta_euler_maclaurin(const Complex& s, const PrecisionContext& ctx, EulerMaclaurinTerms terms = {}) {
  if (!s.is_finite()) throw DomainError("zeta argument must be finite");
  if (s.re == 1L && s.im.is_zero()) throw PoleError("zeta has a pole at s = 1");

  const Bits w = ctx.bits() + 40;
  const double s_abs = std::hypot(s.re.to_double(), s.im.to_double());
  const unsigned m = terms.corrections ? terms.corrections : static_cast<unsigned>(w / 4 + 8);
  const unsigned big_n =
      terms.direct ? terms.direct : static_cast<unsigned>(std::ceil(2.0 * (s_abs + 2.0 * m) / std::numbers::pi)) + 2;

  const Complex sw = rounded(s, w);
  Complex sum(w);
  for (unsigned k = 1; k < big_n; ++k) sum += pow_neg(log(static_cast<unsigned long>(k), w), sw);

  const Real log_n = log(static_cast<unsigned long>(big_n), w);
  const Complex n_pow_neg_s = pow_neg(log_n, sw);  // N^{-s}
  const Real n_real(static_cast<unsigned long>(big_n), w);
  sum += n_pow_neg_s * n_real / (sw - 1L);  // N^{1-s}/(s-1)
  sum += ldexp(Real(1L, w), -1) * n_pow_neg_s;

  const auto bern = detail::bernoulli_numbers(2 * m);
  const Real n_sq = n_real * n_real;
  Complex poch = sw;                     // s (s+1) ... (s+2j-2)
  Complex n_pow = n_pow_neg_s / n_real;  // N^{-s-2j+1}
  mpz_class fact = 2;                    // (2j)!
  for (unsigned j = 1; j <= m; ++j) {
    const Real coeff(mpq_class(bern[2 * j] / mpq_class(fact)), w);
    sum += poch * n_pow * coeff;
    poch *= (sw + static_cast<long>(2 * j - 1)) * (sw + static_cast<long>(2 * j));
    n_pow /= n_sq;
    fact *= (2 * j + 1) * (2 * j + 2);
  }
  return ctx.complex(sum);
}

/// Q(s) = 1 - ((s-1)/s) zeta(s); Q(1) = 0 by the removable singularity.
inline Complex q_value(const Complex& s, const PrecisionContext& ctx) {
  if (s.re.is_zero() && s.im.is_zero()) throw PoleError("Q is undefined at s = 0");
  if (s.re == 1L && s.im.is_zero()) return Complex(ctx.zero());
  const Complex z = zeta(s, ctx);
  const Complex sw = ctx.complex(s);
  return ctx.complex(1L - (sw - 1L) / sw * z);
}

/// Membership in A = { s : |Q(s)| < 1 }.
inline bool in_region_A(const Complex& s, const PrecisionContext& ctx) { return abs(q_value(s, ctx)) < 1L; }

/// Closed-form G(s) = 1 / ((s-1) zeta(s)). Throws NearZeroDivisorError when
/// |zeta(s)| < zero_tolerance.
inline Complex g_closed(const Complex& s, const PrecisionContext& ctx, double zero_tolerance = 1e-4) {
  const Complex z = zeta(s, ctx);
  const Real mag = abs(z);
  if (mag < zero_tolerance) {
    throw NearZeroDivisorError("|zeta(s)| = " + mag.str(6) + " below tolerance near s = " + detail::describe(s));
  }
  return ctx.complex(Complex(ctx.real(1L)) / ((ctx.complex(s) - 1L) * z));
}

struct SeriesValue {
  Complex value;
  Real last_term_abs;
};

/// Partial sum sum_{k<=K} (1/s) Q(s)^k, with |Q|^K/|s| as convergence indicator.
inline SeriesValue g_series(const Complex& s, unsigned order, const PrecisionContext& ctx) {
  const Complex q = q_value(s, ctx);
  const Complex sw = ctx.complex(s);
  Complex power(ctx.real(1L), ctx.zero());
  Complex sum(ctx.bits());
  for (unsigned k = 0; k <= order; ++k) {
    sum += power;
    if (k < order) power *= q;
  }
  const Real s_abs = abs(sw);
  return {sum / sw, pow(abs(q), static_cast<long>(order)) / s_abs};
}

struct RegionCell {
  Complex s;
  Real q_abs;
  bool in_A = false;
  std::string error;  // empty when the cell evaluated cleanly
};

/// Rectangular scan of |Q(s)|; cells ordered re-major, im-minor.
struct RegionGrid {
  Axis re;
  Axis im;
  std::vector<RegionCell> cells;

  [[nodiscard]] const RegionCell& cell(unsigned i_re, unsigned i_im) const { return cells.at(i_re * im.steps + i_im); }
};

inline RegionGrid region_scan(const Axis& re, const Axis& im, const PrecisionContext& ctx, unsigned threads = 0) {
  if (re.steps == 0 || im.steps == 0) throw DomainError("region axes need at least one step");
  if (re.min > re.max || im.min > im.max) throw DomainError("region axis minimum exceeds maximum");
  RegionGrid grid{re, im, {}};
  grid.cells.resize(static_cast<std::size_t>(re.steps) * im.steps);
  parallel_for(grid.cells.size(), threads, [&](std::size_t idx) {
    const auto i_re = static_cast<unsigned>(idx / im.steps);
    const auto i_im = static_cast<unsigned>(idx % im.steps);
    RegionCell& cell = grid.cells[idx];
    cell.s = Complex(ctx.real(re.at(i_re)), ctx.real(im.at(i_im)));
    try {
      cell.q_abs = abs(q_value(cell.s, ctx));
      cell.in_A = cell.q_abs < 1L;
    } catch (const Error& e) {
      cell.q_abs = Real(ctx.bits());
      mpfr_set_nan(cell.q_abs.get());
      cell.in_A = false;
      cell.error = e.what();
    }
  });
  return grid;
}

}  // namespace zetalab
