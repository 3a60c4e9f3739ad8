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

#include "zetalab/laguerre.hpp"

namespace zetalab {
namespace {

const PrecisionContext kCtx(256);

TEST(Laguerre, LowOrders) {
  EXPECT_EQ(laguerre_eval(0, kCtx.real(3.7), kCtx), 1L);
  EXPECT_LT(abs(laguerre_eval(1, kCtx.parse("0.3"), kCtx) - kCtx.parse("0.7")), 1e-70);
  const Real l3 = laguerre_eval(3, kCtx.real(1L), kCtx);
  EXPECT_LT(abs(l3 + Real(mpq_class(2, 3), 256)), 1e-70);
}

TEST(Laguerre, RowExamples) {
  const auto r0 = laguerre_row(0, kCtx.real(5L), kCtx);
  ASSERT_EQ(r0.values.size(), 1u);
  EXPECT_EQ(r0.values[0], 1L);
  const auto r2 = laguerre_row(2, kCtx.real(2L), kCtx);
  ASSERT_EQ(r2.values.size(), 3u);
  EXPECT_EQ(r2.values[0], 1L);
  EXPECT_EQ(r2.values[1], -1L);
  EXPECT_EQ(r2.values[2], -1L);
}

TEST(Laguerre, RowMatchesEvalBitForBit) {
  for (double t : {0.0, 0.25, 1.0, 7.5, 19.0}) {
    const auto row = laguerre_row(60, kCtx.real(t), kCtx);
    for (unsigned n = 0; n <= 60; ++n) ASSERT_EQ(row.values[n], laguerre_eval(n, kCtx.real(t), kCtx)) << n << "," << t;
  }
}

TEST(Laguerre, DirectExamples) {
  EXPECT_EQ(laguerre_direct(0, kCtx.real(7L), kCtx), 1L);
  EXPECT_EQ(laguerre_direct(1, kCtx.real(7L), kCtx), -6L);
  const Real diff = laguerre_direct(4, kCtx.real(2L), kCtx) - laguerre_eval(4, kCtx.real(2L), kCtx);
  EXPECT_LT(abs(diff), 1e-60);
  EXPECT_THROW(laguerre_direct(101, kCtx.real(1L), kCtx), ScaleError);
}

TEST(Laguerre, RecurrenceAgreesWithDirectSum) {
  for (const char* ts : {"0.1", "0.5", "1", "2", "5", "10"}) {
    const Real t = kCtx.parse(ts);
    const Real tol = ldexp(exp(t / 2L), -(256 - 20));
    const auto row = laguerre_row(60, t, kCtx);
    for (unsigned n = 0; n <= 60; ++n) {
      ASSERT_LE(abs(row.values[n] - laguerre_direct(n, t, kCtx)), tol) << n << "," << ts;
    }
  }
}

TEST(Laguerre, HalfExponentialBound) {
  for (int i = 1; i <= 200; ++i) {
    const Real t = kCtx.real(20L) * i / 200L;
    const Real bound = exp(t / 2L);
    const auto row = laguerre_row(100, t, kCtx);
    for (unsigned n = 0; n <= 100; ++n) ASSERT_LE(abs(row.values[n]), bound) << n << "," << i;
  }
  const auto row = laguerre_row(50, kCtx.real(10L), kCtx);
  for (const auto& v : row.values) EXPECT_LE(abs(v), exp(kCtx.real(5L)));
}

TEST(Laguerre, OneAtOrigin) {
  const auto row = laguerre_row(100, kCtx.zero(), kCtx);
  for (const auto& v : row.values) EXPECT_EQ(v, 1L);
}

TEST(Laguerre, RejectsNegativeArgument) {
  EXPECT_THROW(laguerre_eval(3, kCtx.real(-1e-30), kCtx), DomainError);
  EXPECT_THROW(laguerre_row(3, kCtx.real(-1L), kCtx), DomainError);
  EXPECT_THROW(laguerre_direct(3, kCtx.real(-1L), kCtx), DomainError);
}

TEST(Laguerre, ErrorModelCoversObservedError) {
  const PrecisionContext lo(64);
  for (double t : {0.5, 3.0, 12.0}) {
    const auto row = laguerre_row(80, lo.real(t), lo);
    for (unsigned n = 0; n <= 80; ++n) {
      const Real err = abs(row.values[n] - laguerre_direct(n, lo.real(t), kCtx));
      ASSERT_LE(err, laguerre_error_bound(n, lo.real(t), lo.bits())) << n << "," << t;
    }
  }
}

}  // namespace
}  // namespace zetalab
