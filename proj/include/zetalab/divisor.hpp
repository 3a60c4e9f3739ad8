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

// Piltz divisor function d_n(m): the number of ordered n-tuples of positive
// integers whose product is m, i.e. the Dirichlet coefficients of zeta(s)^n.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "zetalab/errors.hpp"
#include "zetalab/numerics.hpp"
#include "zetalab/real.hpp"
#include "zetalab/zeta.hpp"

namespace zetalab {

/// How row n = 0 is populated. kUnit is the Dirichlet-convolution identity
/// (d_0(1) = 1, zero elsewhere), consistent with zeta^0 = 1. kAllOnes sets
/// d_0(m) = 1 for every m; rows n >= 1 are unaffected.
enum class ZeroRowConvention { kUnit, kAllOnes };

class DivisorTable {
 public:
  static constexpr std::size_t kDefaultCellBudget = 50'000'000;

  /// Builds rows 0..n_max for m = 1..N by n_max successive convolutions with
  /// the constant-one sequence.
  static DivisorTable build(std::uint64_t N, unsigned n_max, ZeroRowConvention convention = ZeroRowConvention::kUnit,
                            std::size_t cell_budget = kDefaultCellBudget) {
    if (N < 1) throw DomainError("divisor table needs N >= 1");
    if (static_cast<double>(N) * (n_max + 1.0) > static_cast<double>(cell_budget)) {
      throw ResourceError("divisor table of " + std::to_string(N) + " x " + std::to_string(n_max) +
                          " exceeds the cell budget of " + std::to_string(cell_budget));
    }
    DivisorTable table(N, n_max, convention);
    auto row0 = table.mutable_row(0);
    for (std::uint64_t m = 1; m <= N; ++m) row0[m - 1] = (m == 1 || convention == ZeroRowConvention::kAllOnes) ? 1 : 0;
    if (n_max == 0) return table;

    auto row1 = table.mutable_row(1);
    for (auto& v : row1) v = 1;  // unit * 1 = 1
    for (unsigned n = 2; n <= n_max; ++n) {
      auto prev = table.row(n - 1);
      auto cur = table.mutable_row(n);
      for (std::uint64_t d = 1; d <= N; ++d) {
        const std::uint64_t v = prev[d - 1];
        for (std::uint64_t j = d; j <= N; j += d) {
          if (__builtin_add_overflow(cur[j - 1], v, &cur[j - 1])) {
            throw ResourceError("d_" + std::to_string(n) + "(" + std::to_string(j) + ") overflows 64 bits");
          }
        }
      }
    }
    return table;
  }

  [[nodiscard]] std::uint64_t N() const { return n_; }
  [[nodiscard]] unsigned n_max() const { return n_max_; }
  [[nodiscard]] ZeroRowConvention convention() const { return convention_; }

  /// d_n(1..N), indexed from m = 1 at position 0.
  [[nodiscard]] std::span<const std::uint64_t> row(unsigned n) const {
    return {values_.data() + static_cast<std::size_t>(n) * n_, static_cast<std::size_t>(n_)};
  }

  /// d_n(m), unchecked.
  [[nodiscard]] std::uint64_t operator()(unsigned n, std::uint64_t m) const {
    return values_[static_cast<std::size_t>(n) * n_ + (m - 1)];
  }

  [[nodiscard]] std::uint64_t at(unsigned n, std::uint64_t m) const {
    if (n > n_max_ || m < 1 || m > n_) {
      throw DomainError("divisor index (n=" + std::to_string(n) + ", m=" + std::to_string(m) + ") outside table " +
                        std::to_string(n_max_) + " x " + std::to_string(n_));
    }
    return (*this)(n, m);
  }

 private:
  DivisorTable(std::uint64_t N, unsigned n_max, ZeroRowConvention convention)
      : n_(N), n_max_(n_max), convention_(convention), values_(static_cast<std::size_t>(N) * (n_max + 1), 0) {}

  std::span<std::uint64_t> mutable_row(unsigned n) {
    return {values_.data() + static_cast<std::size_t>(n) * n_, static_cast<std::size_t>(n_)};
  }

  std::uint64_t n_;
  unsigned n_max_;
  ZeroRowConvention convention_;
  std::vector<std::uint64_t> values_;
};

inline DivisorTable build_divisor_table(std::uint64_t N, unsigned n_max,
                                        ZeroRowConvention convention = ZeroRowConvention::kUnit) {
  return DivisorTable::build(N, n_max, convention);
}

inline std::uint64_t divisor_value(const DivisorTable& table, unsigned n, std::uint64_t m) { return table.at(n, m); }

namespace detail {
inline std::uint64_t count_factorizations(unsigned n, std::uint64_t m) {
  if (n == 0) return m == 1 ? 1 : 0;
  if (n == 1) return 1;
  std::uint64_t total = 0;
  for (std::uint64_t first = 1; first <= m; ++first) {
    if (m % first == 0) total += count_factorizations(n - 1, m / first);
  }
  return total;
}
}  // namespace detail

/// Oracle: enumerates ordered factorizations m = k_1 ... k_n directly.
inline std::uint64_t brute_force_divisor(unsigned n, std::uint64_t m) {
  if (n > 8 || m < 1 || m > 10'000) {
    throw ScaleError("brute_force_divisor is limited to n <= 8 and 1 <= m <= 10^4");
  }
  return detail::count_factorizations(n, m);
}

struct DirichletCheck {
  Real partial_sum;
  Real reference;
  Real gap;
};

/// Compares sum_{m<=M} d_n(m) m^{-sigma} with zeta(sigma)^n.
inline DirichletCheck dirichlet_series_check(const DivisorTable& table, unsigned n, const Real& sigma,
                                             std::uint64_t cutoff, const PrecisionContext& ctx) {
  if (!(sigma > 1L)) throw DomainError("Dirichlet series check needs sigma > 1");
  if (n > table.n_max() || cutoff < 1 || cutoff > table.N()) {
    throw DomainError("Dirichlet series check outside the divisor table");
  }
  const Bits w = ctx.bits() + 16;
  const Real sw(sigma, w);
  std::vector<Real> terms;
  terms.reserve(cutoff);
  for (std::uint64_t m = 1; m <= cutoff; ++m) {
    const std::uint64_t d = table(n, m);
    if (d == 0) continue;
    terms.push_back(Real(static_cast<unsigned long>(d), w) * exp(-(sw * log(static_cast<unsigned long>(m), w))));
  }
  DirichletCheck out{compensated_sum(terms, ctx).value, ctx.real(1L), ctx.zero()};
  if (n > 0) out.reference = pow(zeta(sigma, ctx).re, static_cast<long>(n));
  out.gap = abs(out.partial_sum - out.reference);
  return out;
}

}  // namespace zetalab
