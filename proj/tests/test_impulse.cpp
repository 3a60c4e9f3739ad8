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

#include <gtest/gtest.h>

#include <vector>

#include "zetalab/impulse.hpp"

namespace zetalab {
namespace {

// sum_{k<=K} x^k / k! as an exact rational.
mpq_class taylor_exp(const mpq_class& x, unsigned K) {
  mpq_class term = 1;
  mpq_class sum = 1;
  for (unsigned k = 1; k <= K; ++k) {
    term *= x;
    term /= k;
    sum += term;
  }
  return sum;
}

// Value of the degree-(size-1) interpolant through (xs, ys) at x.
Real lagrange(const std::vector<Real>& xs, const std::vector<Real>& ys, const Real& x) {
  Real out(x.precision());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Real basis = ys[i];
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j != i) basis = basis * (x - xs[j]) / (xs[i] - xs[j]);
    }
    out += basis;
  }
  return out;
}

TEST(Step, Values) {
  EXPECT_EQ(step(Real(-3L, 64)), 0L);
  EXPECT_EQ(step(Real(0L, 64)), 0.5);
  EXPECT_EQ(step(Real(1e-9, 64)), 1L);
}

TEST(FN, ZeroOrderIsOne) {
  const SeriesParams p{10, 0, PrecisionContext(128)};
  const auto table = build_divisor_table(10, 3);
  for (double t : {0.05, 0.9, 1.7, 2.3}) EXPECT_EQ(f_n(0, p.ctx.real(t), p, table).value, 1L) << t;
}

TEST(FN, FirstOrderByHand) {
  const PrecisionContext ctx(192);
  const SeriesParams p{5, 1, ctx};
  const auto table = build_divisor_table(5, 2);
  const Real ln2 = log(2UL, 192);
  const Real tol = ldexp(ctx.real(1L), -170);
  for (const char* ts : {"0.1", "0.4", "0.69"}) {
    const Real t = ctx.parse(ts);
    const auto f = f_n(1, t, p, table);
    EXPECT_LE(abs(f.value - (1L - t)), tol) << ts;
    EXPECT_LE(f.error_estimate, 1e-40);
  }
  for (const char* ts : {"0.7", "0.9", "1.09"}) {
    const Real t = ctx.parse(ts);
    EXPECT_LE(abs(f_n(1, t, p, table).value - (2L - 2L * t + ln2)), tol) << ts;
  }
}

TEST(GK, LowOrdersByHand) {
  const PrecisionContext ctx(512);
  const SeriesParams p{8, 2, ctx};
  const auto table = build_divisor_table(8, 2);
  const Real t = ctx.parse("0.5");
  EXPECT_EQ(g_k(0, t, p, table).value, 1L);
  EXPECT_LE(abs(g_k(1, t, p, table).value - t), ldexp(ctx.real(1L), -490));
  const auto g2 = g_k(2, t, p, table);
  EXPECT_LE(abs(g2.value - ctx.parse("0.125")), ldexp(ctx.real(1L), -490));
  EXPECT_LE(abs(g2.value - ctx.parse("0.125")), g2.error_estimate + ldexp(ctx.real(1L), -511));
  // Term by term: f_0 - 2 f_1 + f_2 with f_n = L_n(t) below ln 2.
  const Real by_terms = 1L - 2L * (1L - t) + (1L - 2L * t + t * t / 2L);
  EXPECT_LE(abs(g2.value - by_terms), ldexp(ctx.real(1L), -490));
}

TEST(GPartial, ZeroOrderIsOne) {
  const SeriesParams p{20, 0, PrecisionContext(128)};
  const auto table = build_divisor_table(20, 0);
  for (double t : {0.01, 1.0, 2.9}) {
    EXPECT_EQ(g_partial(p.ctx.real(t), p, table, SummationMode::kDirect).value, 1L);
    EXPECT_EQ(g_partial(p.ctx.real(t), p, table, SummationMode::kResummed).value, 1L);
  }
}

TEST(GPartial, ModesAgreeAtReferencePoint) {
  const SeriesParams p{10, 24, PrecisionContext(256)};
  const auto table = build_divisor_table(10, 24);
  const Real t = p.ctx.parse("0.5");
  const auto d = g_partial(t, p, table, SummationMode::kDirect);
  const auto r = g_partial(t, p, table, SummationMode::kResummed);
  EXPECT_LT(abs(d.value - r.value), 1e-40);
}

TEST(GPartial, ModeEquivalenceMatrix) {
  const PrecisionContext ctx(256);
  for (std::uint64_t N : {5, 50}) {
    const auto table = build_divisor_table(N, 64);
    for (unsigned K : {4u, 16u, 64u}) {
      const SeriesParams p{N, K, ctx};
      const Real limit = time_limit(p);
      for (long i = 1; i <= 10; ++i) {
        const Real t = limit * i / 11L;
        const auto d = g_partial(t, p, table, SummationMode::kDirect);
        const auto r = g_partial(t, p, table, SummationMode::kResummed);
        ASSERT_LE(abs(d.value - r.value), d.error_estimate + r.error_estimate) << N << "," << K << "," << i;
      }
    }
  }
}

TEST(GPartial, ExponentialBelowLnTwo) {
  // Below ln 2 only m = 1 contributes and g_k(t) = t^k / k!, so the partial
  // sum is the Taylor polynomial of e^t.
  const PrecisionContext ctx(512);
  const auto table = build_divisor_table(4, 32);
  const SeriesParams p{4, 32, ctx};
  const Real t = ctx.parse("0.5");
  const auto g = g_partial(t, p, table);
  const Real expected(taylor_exp(mpq_class(1, 2), 32), 512);
  EXPECT_LE(abs(g.value - expected), g.error_estimate);
  EXPECT_LT(g.error_estimate, 1e-100);
  const Real remainder = abs(g.value - exp(t));
  EXPECT_GT(remainder, 1.36e-47);
  EXPECT_LT(remainder, 1.37e-47);
}

TEST(GPartial, StepDropIsBitIdentical) {
  const PrecisionContext ctx(256);
  for (std::uint64_t N : {5, 12}) {
    const auto table = build_divisor_table(N, 16);
    const SeriesParams p{N, 16, ctx};
    const Real lo = log(static_cast<unsigned long>(N), 256);
    const Real hi = time_limit(p);
    for (long i = 1; i <= 6; ++i) {
      const Real t = lo + (hi - lo) * i / 7L;
      for (auto mode : {SummationMode::kDirect, SummationMode::kResummed}) {
        const auto gated = g_partial(t, p, table, mode, {.gate_steps = true});
        const auto bare = g_partial(t, p, table, mode, {.gate_steps = false});
        ASSERT_EQ(gated.value, bare.value);
        ASSERT_EQ(gated.error_estimate, bare.error_estimate);
      }
    }
  }
  const SeriesParams p{5, 2, ctx};
  const auto table = build_divisor_table(5, 2);
  EXPECT_THROW(g_partial(ctx.real(1.0), p, table, SummationMode::kResummed, {.gate_steps = false}), DomainError);
}

TEST(GK, PiecewisePolynomialBetweenJumps) {
  const PrecisionContext ctx(256);
  const auto table = build_divisor_table(8, 6);
  for (unsigned k : {1u, 3u, 6u}) {
    const SeriesParams p{8, k, ctx};
    for (unsigned long m : {1UL, 3UL, 7UL}) {
      const Real a = log(m, 256);
      const Real b = log(m + 1, 256);
      std::vector<Real> xs;
      std::vector<Real> ys;
      for (unsigned i = 1; i <= k + 1; ++i) {
        xs.push_back(a + (b - a) * static_cast<long>(i) / static_cast<long>(k + 3));
        ys.push_back(g_k(k, xs.back(), p, table).value);
      }
      const Real probe = a + (b - a) * static_cast<long>(k + 2) / static_cast<long>(k + 3);
      const Real predicted = lagrange(xs, ys, probe);
      const Real actual = g_k(k, probe, p, table).value;
      EXPECT_LE(abs(predicted - actual), ldexp(max(abs(actual), ctx.real(1L)), -200)) << k << "," << m;
    }
  }
}

TEST(GK, JumpUsesHalfStep) {
  const PrecisionContext ctx(256);
  const auto table = build_divisor_table(4, 1);
  const SeriesParams p{4, 1, ctx};
  const Real ln2 = log(2UL, 256);
  // On the jump, f_1 is the mean of its one-sided limits.
  const Real left = 1L - ln2;
  const Real right = 2L - 2L * ln2 + ln2;
  const Real mid = f_n(1, ln2, p, table).value;
  EXPECT_LE(abs(mid - (left + right) / 2L), ldexp(ctx.real(1L), -240));
}

TEST(Impulse, DomainGuard) {
  const SeriesParams p{5, 3, PrecisionContext(128)};
  const auto table = build_divisor_table(5, 3);
  const Real limit = time_limit(p);
  EXPECT_THROW(g_partial(p.ctx.zero(), p, table), DomainError);
  EXPECT_THROW(g_partial(p.ctx.real(-0.5), p, table), DomainError);
  EXPECT_THROW(g_partial(limit, p, table), DomainError);
  EXPECT_THROW(f_n(1, limit + 1L, p, table), DomainError);
  EXPECT_NO_THROW(g_partial(limit - p.ctx.real(1e-20), p, table));

  const std::vector<Real> grid{p.ctx.real(0.5), p.ctx.real(2.0)};
  EXPECT_THROW(impulse_scan(grid, p, table), DomainError);
  const auto small = build_divisor_table(5, 2);
  EXPECT_THROW(g_partial(p.ctx.real(0.5), p, small), DomainError);
}

TEST(ImpulseScan, SinglePointMatchesGPartial) {
  const SeriesParams p{6, 5, PrecisionContext(128)};
  const auto table = build_divisor_table(6, 5);
  const std::vector<Real> grid{p.ctx.real(1.3)};
  const auto scan = impulse_scan(grid, p, table);
  ASSERT_EQ(scan.size(), 1u);
  const auto direct = g_partial(grid[0], p, table);
  EXPECT_EQ(scan[0].value, direct.value);
  EXPECT_EQ(scan[0].error_estimate, direct.error_estimate);
}

TEST(ImpulseScan, ExponentialReferenceAndThreads) {
  const PrecisionContext ctx(512);
  const SeriesParams p{2, 32, ctx};
  const auto table = build_divisor_table(2, 32);
  std::vector<Real> grid;
  for (long i = 1; i <= 20; ++i) grid.push_back(log(2UL, 512) * i / 21L);
  const auto one = impulse_scan(grid, p, table, SummationMode::kResummed, {}, 1);
  const auto many = impulse_scan(grid, p, table, SummationMode::kResummed, {}, 6);
  Real worst(512);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ASSERT_TRUE(one[i].error.empty());
    ASSERT_EQ(one[i].value, many[i].value);
    worst = max(worst, abs(one[i].value - exp(grid[i])));
  }
  // Largest Taylor remainder sits at the right end: (ln 2)^33 / 33! e^{ln 2}.
  EXPECT_GT(worst, 0L);
  EXPECT_LT(worst, 1e-38);
}

TEST(ImpulseScan, RecordsPerPointFailures) {
  const SeriesParams p{5, 2, PrecisionContext(128)};
  const auto table = build_divisor_table(5, 2);
  const std::vector<Real> grid{p.ctx.real(0.5), p.ctx.real(1.7)};
  const auto scan = impulse_scan(grid, p, table, SummationMode::kResummed, {.gate_steps = false});
  EXPECT_FALSE(scan[0].error.empty());
  EXPECT_TRUE(scan[0].value.is_nan());
  EXPECT_TRUE(scan[1].error.empty());
}

TEST(Impulse, PrecisionWarningOnHeavyCancellation) {
  const SeriesParams p{30, 60, PrecisionContext(53)};
  const auto table = build_divisor_table(30, 60);
  const auto g = g_partial(p.ctx.real(3.3), p, table);
  EXPECT_TRUE(g.precision_warning);
  EXPECT_GT(g.bits_lost, 20.0);
  const SeriesParams wide{30, 60, PrecisionContext(512)};
  const auto h = g_partial(wide.ctx.real(3.3), wide, table);
  EXPECT_FALSE(h.precision_warning);
  EXPECT_LE(abs(g.value - h.value), g.error_estimate + h.error_estimate);
}

TEST(RationalDemo, Examples) {
  const PrecisionContext ctx(256);
  const auto zero = rational_demo(ctx.zero(), ctx.real(5L), 7, ctx);
  EXPECT_EQ(zero.partial, 1L);
  EXPECT_EQ(zero.exact, 1L);

  const auto one = rational_demo(ctx.real(1L), ctx.real(1L), 20, ctx);
  EXPECT_LT(one.gap, 1e-18);
  // Taylor remainder lies between 1/21! and e/21!.
  const Real fact21(mpz_class("51090942171709440000"), 256);
  EXPECT_GE(one.gap, 1L / fact21);
  EXPECT_LE(one.gap, exp(ctx.real(1L)) / fact21);

  const auto big = rational_demo(ctx.real(2L), ctx.real(3L), 60, ctx);
  EXPECT_LT(big.gap, 1e-30);
  const Real expected(taylor_exp(mpq_class(6), 60), 256);
  EXPECT_LE(abs(big.partial - expected), ldexp(abs(expected), -250));
}

}  // namespace
}  // namespace zetalab
