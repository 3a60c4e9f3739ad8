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

// Time-domain side of the geometric-like expansion of G(s) = 1/((s-1) zeta(s)):
//
//   f_n(t) = sum_{m<=N} d_n(m) h(t - ln m) L_n(t - ln m)
//   g_k(t) = sum_{n<=k} (-1)^n C(k,n) f_n(t)
//   g^(K)(t) = sum_{k<=K} g_k(t) = sum_{n<=K} (-1)^n C(K+1,n+1) f_n(t)
//
// valid on 0 < t < ln(N+1). The last equality is the hockey-stick identity
// and is exact; the resummed single sum is the production path.

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "zetalab/divisor.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/laguerre.hpp"
#include "zetalab/numerics.hpp"
#include "zetalab/parallel.hpp"
#include "zetalab/real.hpp"

namespace zetalab {

struct SeriesParams {
  std::uint64_t N = 1;  // m-cutoff
  unsigned K = 0;       // series order
  PrecisionContext ctx{};
};

struct ImpulseSample {
  Real t;
  Real value;
  Real error_estimate;
  double bits_lost = 0.0;
  bool precision_warning = false;
  std::string error;  // set instead of value when a scan point failed
};

enum class SummationMode { kDirect, kResummed };

struct ImpulseOptions {
  /// When false the h(t - ln m) factors are omitted; only meaningful for t > ln N.
  bool gate_steps = true;
};

/// Unit step with h(0) = 1/2.
inline Real step(const Real& t) {
  Real r(t.precision());
  if (t.sign() > 0) return Real(1L, t.precision());
  if (t.is_zero()) return ldexp(Real(1L, t.precision()), -1);
  return r;
}

/// ln(N + 1), the right end of the valid time window.
inline Real time_limit(const SeriesParams& params) {
  return log(static_cast<unsigned long>(params.N) + 1UL, params.ctx.bits());
}

namespace detail {

inline constexpr Bits kImpulseGuardBits = 16;

inline void check_time(const Real& t, const SeriesParams& params) {
  if (!t.is_finite() || t.sign() <= 0 || !(t < time_limit(params))) {
    throw DomainError("t = " + t.str(17) + " outside the valid window (0, ln(N+1)) for N = " +
                      std::to_string(params.N));
  }
}

inline void check_table(const SeriesParams& params, const DivisorTable& table, unsigned order) {
  if (params.N > table.N()) throw DomainError("divisor table is shorter than N");
  if (order > table.n_max()) throw DomainError("divisor table has fewer rows than the requested order");
}

/// sum_n weights[n] f[n] with the weights exact; error propagates |w_n| err(f_n).
inline ImpulseSample combine(const Real& t, std::span<const mpz_class> weights, std::span<const ImpulseSample> f,
                             const PrecisionContext& ctx, Real* abs_total = nullptr) {
  std::vector<Real> terms;
  terms.reserve(weights.size());
  Real propagated(ctx.bits());
  for (std::size_t n = 0; n < weights.size(); ++n) {
    if (weights[n] == 0) continue;
    const Bits exact = ctx.bits() + static_cast<Bits>(mpz_sizeinbase(weights[n].get_mpz_t(), 2)) + 1;
    terms.push_back(Real(weights[n], exact) * Real(f[n].value, exact));
    propagated += Real(mpz_class(abs(weights[n])), ctx.bits()) * f[n].error_estimate;
  }
  const SumResult s = compensated_sum(terms, ctx);
  ImpulseSample out{ctx.real(t), s.value, s.error_bound + propagated, bits_lost(s, ctx), false, {}};
  if (abs_total != nullptr) *abs_total = s.abs_total;
  return out;
}

inline void flag_precision(ImpulseSample& sample) {
  sample.precision_warning = sample.error_estimate > abs(sample.value) * Real(1e-3, 64);
}

}  // namespace detail

/// f_0(t) .. f_{n_max}(t) sharing one Laguerre row per delay ln m.
inline std::vector<ImpulseSample> f_row(unsigned n_max, const Real& t, const SeriesParams& params,
                                        const DivisorTable& table, ImpulseOptions options = {}) {
  detail::check_time(t, params);
  detail::check_table(params, table, n_max);
  const PrecisionContext& ctx = params.ctx;
  const Bits w = ctx.bits() + detail::kImpulseGuardBits;
  const Real tw(t, w);

  std::vector<std::vector<Real>> terms(n_max + 1);
  std::vector<Real> laguerre_err(n_max + 1, Real(w));
  for (std::uint64_t m = 1; m <= params.N; ++m) {
    Real x = m == 1 ? tw : tw - log(static_cast<unsigned long>(m), w);
    // t sits on the jump at ln m when it equals ln m correctly rounded to its
    // own precision; the step then contributes exactly one half at x = 0.
    const bool half = options.gate_steps && (m == 1 ? t.is_zero() : t == log(static_cast<unsigned long>(m), t.precision()));
    if (half) {
      x = Real(w);
    } else if (options.gate_steps) {
      if (x.sign() < 0) continue;
    } else if (x.sign() < 0) {
      throw DomainError("step gating can only be dropped for t > ln N");
    }
    const auto lag = detail::laguerre_recurrence(n_max, x, w);
    for (unsigned n = 0; n <= n_max; ++n) {
      const std::uint64_t d = table(n, m);
      if (d == 0) continue;
      const Real weight(static_cast<unsigned long>(d), w);
      Real term = weight * lag[n];
      Real err = weight * laguerre_error_bound(n, x, w);
      if (half) {
        term = ldexp(term, -1);
        err = ldexp(err, -1);
      }
      terms[n].push_back(std::move(term));
      laguerre_err[n] += err;
    }
  }

  std::vector<ImpulseSample> out;
  out.reserve(n_max + 1);
  for (unsigned n = 0; n <= n_max; ++n) {
    const SumResult s = compensated_sum(terms[n], ctx);
    Real err = s.error_bound + ctx.real(laguerre_err[n]) + ldexp(s.abs_total, -static_cast<long>(w));
    ImpulseSample sample{ctx.real(t), s.value, std::move(err), bits_lost(s, ctx), false, {}};
    detail::flag_precision(sample);
    out.push_back(std::move(sample));
  }
  return out;
}

inline ImpulseSample f_n(unsigned n, const Real& t, const SeriesParams& params, const DivisorTable& table,
                         ImpulseOptions options = {}) {
  return f_row(n, t, params, table, options).back();
}

/// g_k(t) = sum_{n<=k} (-1)^n C(k,n) f_n(t).
inline ImpulseSample g_k(unsigned k, const Real& t, const SeriesParams& params, const DivisorTable& table,
                         ImpulseOptions options = {}) {
  const auto f = f_row(k, t, params, table, options);
  std::vector<mpz_class> weights(k + 1);
  for (unsigned n = 0; n <= k; ++n) weights[n] = (n % 2 == 0 ? 1 : -1) * binomial(k, n);
  ImpulseSample out = detail::combine(t, weights, f, params.ctx);
  detail::flag_precision(out);
  return out;
}

/// Truncated impulse response g^(K)(t), K = params.K.
inline ImpulseSample g_partial(const Real& t, const SeriesParams& params, const DivisorTable& table,
                               SummationMode mode = SummationMode::kResummed, ImpulseOptions options = {}) {
  const unsigned order = params.K;
  const auto f = f_row(order, t, params, table, options);
  const PrecisionContext& ctx = params.ctx;

  if (mode == SummationMode::kResummed) {
    std::vector<mpz_class> weights(order + 1);
    for (unsigned n = 0; n <= order; ++n) weights[n] = (n % 2 == 0 ? 1 : -1) * binomial(order + 1, n + 1);
    ImpulseSample out = detail::combine(t, weights, f, ctx);
    detail::flag_precision(out);
    return out;
  }

  std::vector<Real> partials;
  partials.reserve(order + 1);
  Real propagated(ctx.bits());
  Real magnitude(ctx.bits());
  for (unsigned k = 0; k <= order; ++k) {
    std::vector<mpz_class> weights(k + 1);
    for (unsigned n = 0; n <= k; ++n) weights[n] = (n % 2 == 0 ? 1 : -1) * binomial(k, n);
    Real abs_total(ctx.bits());
    ImpulseSample gk = detail::combine(t, weights, std::span<const ImpulseSample>(f).first(k + 1), ctx, &abs_total);
    propagated += gk.error_estimate;
    magnitude += abs_total;
    partials.push_back(std::move(gk.value));
  }
  SumResult s = compensated_sum(partials, ctx);
  s.abs_total = magnitude;
  ImpulseSample out{ctx.real(t), s.value, s.error_bound + propagated, bits_lost(s, ctx), false, {}};
  detail::flag_precision(out);
  return out;
}

/// g^(K) over a grid. Every t must lie in (0, ln(N+1)); failures after that
/// check are recorded per sample.
inline std::vector<ImpulseSample> impulse_scan(std::span<const Real> grid, const SeriesParams& params,
                                               const DivisorTable& table,
                                               SummationMode mode = SummationMode::kResummed,
                                               ImpulseOptions options = {}, unsigned threads = 0) {
  for (const Real& t : grid) detail::check_time(t, params);
  detail::check_table(params, table, params.K);
  std::vector<ImpulseSample> out(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    try {
      out[i] = g_partial(grid[i], params, table, mode, options);
    } catch (const Error& e) {
      out[i].t = params.ctx.real(grid[i]);
      out[i].value = Real(params.ctx.bits());
      mpfr_set_nan(out[i].value.get());
      out[i].error_estimate = Real(params.ctx.bits());
      mpfr_set_nan(out[i].error_estimate.get());
      out[i].error = e.what();
    }
  });
  return out;
}

struct RationalDemo {
  Real partial;
  Real exact;
  Real gap;
};

/// Series for G(s) = 1/(s-a): partial = sum_{k<=K} (at)^k / k!, exact = e^{at}.
inline RationalDemo rational_demo(const Real& a, const Real& t, unsigned order, const PrecisionContext& ctx) {
  const Bits w = ctx.bits() + detail::kImpulseGuardBits;
  const Real at = Real(a, w) * Real(t, w);
  std::vector<Real> terms;
  terms.reserve(order + 1);
  Real term(1L, w);
  for (unsigned k = 0; k <= order; ++k) {
    if (k > 0) term = term * at / static_cast<long>(k);
    terms.push_back(term);
  }
  RationalDemo out{compensated_sum(terms, ctx).value, ctx.real(exp(at)), ctx.zero()};
  out.gap = abs(out.partial - out.exact);
  return out;
}

}  // namespace zetalab
