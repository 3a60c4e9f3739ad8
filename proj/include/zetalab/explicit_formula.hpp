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

// Classical side: Chebyshev psi from a prime sieve, critical-line zeros of
// zeta via the Hardy Z function, and the von Mangoldt explicit formula
//
//   psi(x) = x - sum_rho x^rho / rho - (1/2) ln(1 - x^-2) - ln(2 pi).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zetalab/errors.hpp"
#include "zetalab/numerics.hpp"
#include "zetalab/parallel.hpp"
#include "zetalab/real.hpp"
#include "zetalab/zeta.hpp"

namespace zetalab {

/// kInclusive sums p^n <= x (classical psi); kStrict sums p^n < x.
enum class PsiConvention { kInclusive, kStrict };

inline constexpr std::uint64_t kPsiSieveLimit = 10'000'000;

/// Prime powers up to a limit with running sums of ln p. Read-only once built.
class PrimePowerTable {
 public:
  struct Entry {
    std::uint64_t value;  // p^n
    std::uint64_t prime;  // p
    Real cumulative;      // sum of ln p over prime powers <= value
  };

  PrimePowerTable(std::uint64_t limit, const PrecisionContext& ctx) : limit_(limit), ctx_(ctx) {
    if (limit > kPsiSieveLimit) throw ScaleError("psi sieve is limited to x <= 10^7");
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> powers;
    for (std::uint64_t p = 2; p <= limit; ++p) {
      if (composite[p]) continue;
      for (std::uint64_t j = p * p; j <= limit; j += p) composite[j] = true;
      for (std::uint64_t q = p; q <= limit; q *= p) {
        powers.emplace_back(q, p);
        if (q > limit / p) break;
      }
    }
    std::sort(powers.begin(), powers.end());
    entries_.reserve(powers.size());
    const Bits w = ctx.bits() + 32;
    Real running(w);
    std::uint64_t last_prime = 0;
    Real last_log(w);
    for (const auto& [value, prime] : powers) {
      if (prime != last_prime) {
        last_log = log(static_cast<unsigned long>(prime), w);
        last_prime = prime;
      }
      running += last_log;
      entries_.push_back({value, prime, ctx.real(running)});
    }
  }

  [[nodiscard]] std::uint64_t limit() const { return limit_; }
  [[nodiscard]] std::span<const Entry> entries() const { return entries_; }

  /// psi(x) for x < limit + 1; every prime power up to floor(x) is known.
  [[nodiscard]] Real psi(const Real& x, PsiConvention convention = PsiConvention::kInclusive) const {
    if (!x.is_finite() || !(x < static_cast<long>(limit_ + 1))) {
      throw ScaleError("x = " + x.str(17) + " beyond the sieve limit " + std::to_string(limit_));
    }
    // First entry that is not counted.
    auto it = std::partition_point(entries_.begin(), entries_.end(), [&](const Entry& e) {
      const Real v(static_cast<unsigned long>(e.value), 64);
      return convention == PsiConvention::kInclusive ? !(v > x) : v < x;
    });
    if (it == entries_.begin()) return ctx_.zero();
    return std::prev(it)->cumulative;
  }

 private:
  std::uint64_t limit_;
  PrecisionContext ctx_;
  std::vector<Entry> entries_;
};

/// Sieve-based psi(x); builds a table up to floor(x).
inline Real psi_sieve(const Real& x, const PrecisionContext& ctx, PsiConvention convention = PsiConvention::kInclusive) {
  if (!x.is_finite() || x > static_cast<long>(kPsiSieveLimit)) throw ScaleError("psi_sieve is limited to x <= 10^7");
  if (x < 2L) return ctx.zero();
  Real fl(x);
  mpfr_floor(fl.get(), x.get());
  return PrimePowerTable(static_cast<std::uint64_t>(fl.to_long()), ctx).psi(x, convention);
}

/// Prime p when n = p^a for some a >= 1, otherwise 0.
inline std::uint64_t prime_power_base(std::uint64_t n) {
  if (n < 2) return 0;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    return n == 1 ? p : 0;
  }
  return n;
}

/// Riemann-Siegel theta by its asymptotic expansion
/// t/2 ln(t/2pi) - t/2 - pi/8 + 1/(48t).
inline Real riemann_siegel_theta(const Real& t, const PrecisionContext& ctx) {
  const Real tw = ctx.real(t);
  const Real half_t = ldexp(tw, -1);
  const Real two_pi = ldexp(pi(ctx.bits()), 1);
  return half_t * log(tw / two_pi) - half_t - ldexp(pi(ctx.bits()), -3) + 1L / (tw * 48L);
}

/// Hardy Z(t) = Re(e^{i theta(t)} zeta(1/2 + it)). The rotation is real up to
/// the truncation of theta, which only rescales Z and never flips its sign.
inline Real hardy_z(const Real& t, const PrecisionContext& ctx) {
  const Complex s(ctx.real(ldexp(Real(1L, 2), -1)), ctx.real(t));
  const Complex z = zeta(s, ctx);
  return (exp_i(riemann_siegel_theta(t, ctx)) * z).re;
}

struct ZeroList {
  std::vector<Real> gammas;                      // increasing ordinates
  std::vector<std::pair<Real, Real>> brackets;   // final sign-change brackets
  double tolerance = 1e-6;
  std::vector<std::string> warnings;
};

struct ZeroSearchOptions {
  double scan_start = 10.0;
  double scan_step = 0.05;
  double tolerance = 1e-6;
  unsigned threads = 0;
};

inline constexpr unsigned kMaxZeroCount = 200;

/// First `count` critical-line ordinates by scanning Z(t) for sign changes and
/// bisecting each bracket below `tolerance`.
inline ZeroList find_zeros(unsigned count, const PrecisionContext& ctx, ZeroSearchOptions options = {}) {
  if (count == 0) throw DomainError("zero count must be positive");
  if (count > kMaxZeroCount) throw ScaleError("find_zeros is limited to 200 zeros");

  ZeroList out;
  out.tolerance = options.tolerance;
  std::vector<std::pair<Real, Real>> brackets;

  const Real start = ctx.real(options.scan_start);
  const Real step = ctx.real(options.scan_step);
  auto grid_point = [&](std::uint64_t i) { return start + step * Real(static_cast<unsigned long>(i), ctx.bits()); };

  constexpr std::size_t kBatch = 64;
  constexpr std::uint64_t kMaxPoints = 400'000;
  std::uint64_t next = 0;
  Real prev_t = grid_point(0);
  Real prev_z = hardy_z(prev_t, ctx);
  next = 1;
  while (brackets.size() < count) {
    if (next > kMaxPoints) {
      throw BracketError("found only " + std::to_string(brackets.size()) + " sign changes of Z on [" +
                         start.str(8) + ", " + prev_t.str(8) + "]");
    }
    std::vector<Real> ts(kBatch);
    std::vector<Real> zs(kBatch);
    parallel_for(kBatch, options.threads, [&](std::size_t i) {
      ts[i] = grid_point(next + i);
      zs[i] = hardy_z(ts[i], ctx);
    });
    for (std::size_t i = 0; i < kBatch && brackets.size() < count; ++i) {
      if (zs[i].is_zero()) {
        // Landed on a zero: bracket it by the neighbouring grid points.
        brackets.emplace_back(prev_t, grid_point(next + i + 1));
        prev_t = grid_point(next + i + 1);
        prev_z = hardy_z(prev_t, ctx);
        ++i;
        continue;
      }
      if (prev_z.sign() * zs[i].sign() < 0) brackets.emplace_back(prev_t, ts[i]);
      prev_t = ts[i];
      prev_z = zs[i];
    }
    next += kBatch;
  }

  out.gammas.resize(count);
  out.brackets.resize(count);
  parallel_for(count, options.threads, [&](std::size_t k) {
    Real lo = brackets[k].first;
    Real hi = brackets[k].second;
    Real z_lo = hardy_z(lo, ctx);
    while ((hi - lo) > options.tolerance) {
      Real mid = ldexp(lo + hi, -1);
      Real z_mid = hardy_z(mid, ctx);
      if (z_mid.is_zero()) {
        lo = mid;
        hi = mid;
        break;
      }
      if (z_mid.sign() == z_lo.sign()) {
        lo = std::move(mid);
        z_lo = std::move(z_mid);
      } else {
        hi = std::move(mid);
      }
    }
    out.gammas[k] = ldexp(lo + hi, -1);
    out.brackets[k] = {lo, hi};
  });

  // Riemann-von Mangoldt: N(T) ~ theta(T)/pi + 1.
  const Real& top = out.brackets.back().second;
  const double expected = (riemann_siegel_theta(top, ctx) / pi(ctx.bits())).to_double() + 1.0;
  if (std::abs(expected - static_cast<double>(count)) > 1.5) {
    out.warnings.push_back("found " + std::to_string(count) + " zeros below t = " + top.str(10) +
                           " but the counting estimate is " + std::to_string(expected) + "; zeros may be missing");
  }
  return out;
}

inline constexpr double kJumpGuard = 1e-6;

/// Explicit formula with the zero sum truncated to `zeros`; each conjugate pair
/// contributes -2 Re(x^rho / rho), rho = 1/2 + i gamma.
inline Real psi_explicit(const Real& x, std::span<const Real> gammas, const PrecisionContext& ctx) {
  if (!x.is_finite() || !(x > 1L)) throw DomainError("psi_explicit needs x > 1");
  Real nearest(x);
  mpfr_round(nearest.get(), x.get());
  if (abs(x - nearest) < kJumpGuard && nearest <= 9.0e18 &&
      prime_power_base(static_cast<std::uint64_t>(nearest.to_double())) != 0) {
    throw JumpProximityError("x = " + x.str(17) + " lies within 1e-6 of the prime power " + nearest.str(20));
  }

  const Bits w = ctx.bits() + 16;
  const Real xw(x, w);
  const Real log_x = log(xw);
  const Real sqrt_x = sqrt(xw);
  const Real half(0.5, w);

  std::vector<Real> terms;
  terms.reserve(gammas.size() + 3);
  terms.push_back(xw);
  for (const Real& gamma : gammas) {
    const Complex rho(half, Real(gamma, w));
    const Complex x_rho = exp_i(rho.im * log_x) * sqrt_x;
    terms.push_back(-ldexp((x_rho / rho).re, 1));
  }
  terms.push_back(-ldexp(log1p(-(1L / (xw * xw))), -1));
  terms.push_back(-log(ldexp(pi(w), 1)));
  return compensated_sum(terms, ctx).value;
}

inline Real psi_explicit(const Real& x, const ZeroList& zeros, const PrecisionContext& ctx) {
  return psi_explicit(x, std::span<const Real>(zeros.gammas), ctx);
}

struct PsiSample {
  Real x;
  Real psi_sieve;
  Real psi_explicit;
  std::size_t zeros_used = 0;
};

struct Eq2Point {
  Real t;
  Real ratio;
};

enum class PsiSource { kSieve, kExplicit };

/// ratio(t) = |psi(e^t) - e^t| / (t^2 e^{t/2}) over the grid.
inline std::vector<Eq2Point> check_eq2(std::span<const Real> t_grid, const PrecisionContext& ctx,
                                       PsiSource source = PsiSource::kSieve, const ZeroList* zeros = nullptr,
                                       unsigned threads = 0) {
  if (t_grid.empty()) return {};
  Real t_max = t_grid.front();
  for (const Real& t : t_grid) {
    if (!(t > 0L)) throw DomainError("check_eq2 needs t > 0");
    t_max = max(t_max, t);
  }
  const Real x_max = exp(ctx.real(t_max));
  if (x_max > static_cast<long>(kPsiSieveLimit)) throw ScaleError("e^T exceeds the psi sieve scale 10^7");
  if (source == PsiSource::kExplicit && zeros == nullptr) throw DomainError("explicit source needs a zero list");

  Real fl(x_max);
  mpfr_floor(fl.get(), x_max.get());
  const PrimePowerTable table(std::max<std::uint64_t>(2, static_cast<std::uint64_t>(fl.to_long())), ctx);

  std::vector<Eq2Point> out(t_grid.size());
  parallel_for(t_grid.size(), threads, [&](std::size_t i) {
    const Real t = ctx.real(t_grid[i]);
    const Real x = exp(t);
    const Real psi = source == PsiSource::kSieve ? table.psi(x) : psi_explicit(x, *zeros, ctx);
    out[i] = {t, abs(psi - x) / (t * t * exp(ldexp(t, -1)))};
  });
  return out;
}

}  // namespace zetalab
