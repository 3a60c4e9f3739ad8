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

// Laguerre polynomials L_n(t) on t >= 0.

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <vector>

#include "zetalab/errors.hpp"
#include "zetalab/numerics.hpp"
#include "zetalab/real.hpp"

namespace zetalab {

/// L_0(t) .. L_{n_max}(t) from a single recurrence pass.
struct LaguerreRow {
  unsigned n_max = 0;
  Real t;
  std::vector<Real> values;
};

namespace detail {

inline constexpr Bits kLaguerreGuardBits = 16;

inline void require_nonnegative(const Real& t) {
  if (!t.is_finite() || t.sign() < 0) {
    throw DomainError("Laguerre argument must be finite and >= 0, got " + t.str(17));
  }
}

/// Forward three-term recurrence at `bits` working precision.
inline std::vector<Real> laguerre_recurrence(unsigned n_max, const Real& t, Bits bits) {
  std::vector<Real> out;
  out.reserve(n_max + 1);
  const Real x(t, bits);
  out.emplace_back(1L, bits);
  if (n_max == 0) return out;
  out.push_back(1L - x);
  for (unsigned k = 1; k < n_max; ++k) {
    // (k+1) L_{k+1} = (2k+1-t) L_k - k L_{k-1}
    Real next = (static_cast<long>(2 * k + 1) - x) * out[k];
    next -= out[k - 1] * static_cast<long>(k);
    next /= static_cast<long>(k + 1);
    out.push_back(std::move(next));
  }
  return out;
}

}  // namespace detail

/// Full row L_0..L_{n_max} at t; entry n equals laguerre_eval(n, t, ctx) exactly.
inline LaguerreRow laguerre_row(unsigned n_max, const Real& t, const PrecisionContext& ctx) {
  detail::require_nonnegative(t);
  auto wide = detail::laguerre_recurrence(n_max, t, ctx.bits() + detail::kLaguerreGuardBits);
  LaguerreRow row{n_max, ctx.real(t), {}};
  row.values.reserve(wide.size());
  for (const Real& v : wide) row.values.push_back(ctx.real(v));
  return row;
}

inline Real laguerre_eval(unsigned n, const Real& t, const PrecisionContext& ctx) {
  detail::require_nonnegative(t);
  auto wide = detail::laguerre_recurrence(n, t, ctx.bits() + detail::kLaguerreGuardBits);
  return ctx.real(wide.back());
}

/// Oracle: the explicit sum  sum_v C(n,v) (-t)^v / v!  evaluated exactly in
/// rationals (t is a dyadic rational) and rounded once.
inline Real laguerre_direct(unsigned n, const Real& t, const PrecisionContext& ctx) {
  detail::require_nonnegative(t);
  if (n > 100) throw ScaleError("laguerre_direct is an oracle limited to n <= 100");
  const mpq_class x = t.to_rational();
  mpq_class sum = 0;
  mpq_class power = 1;  // (-t)^v / v!
  for (unsigned v = 0; v <= n; ++v) {
    if (v > 0) {
      power *= -x;
      power /= v;
    }
    sum += mpq_class(binomial(n, v)) * power;
  }
  return Real(sum, ctx.bits());
}

/// A-posteriori error model for L_n(x) computed by laguerre_recurrence at
/// `bits`: (n+1)^2 e^{x/2} 2^{2-bits}.
inline Real laguerre_error_bound(unsigned n, const Real& x, Bits bits) {
  const Real growth = exp(ldexp(Real(x, 64), -1));
  const double scale = std::pow(static_cast<double>(n) + 1.0, 2.0);
  return ldexp(growth * Real(scale, 64), 2 - static_cast<long>(bits));
}

}  // namespace zetalab
