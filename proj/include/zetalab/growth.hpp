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

// Measurements for the growth bound g(t) = O(t^k e^{t/2}), k in {0, 1, 2}:
// observed ratios on a finite window, and a trapezoid Laplace transform of the
// sampled response compared against the closed-form transfer function.
// Nothing here asserts the bound; reports state what was observed.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zetalab/errors.hpp"
#include "zetalab/impulse.hpp"
#include "zetalab/io.hpp"
#include "zetalab/numerics.hpp"
#include "zetalab/real.hpp"
#include "zetalab/zeta.hpp"

namespace zetalab {

struct RatioSample {
  Real t;
  Real ratio;
};

struct GrowthReport {
  int k = 0;
  std::vector<RatioSample> samples;
  Real sup_ratio;
  Real argmax_t;
};

/// ratio(t) = |g(t)| / (t^k e^{t/2}) per sample, with the observed supremum.
inline GrowthReport growth_ratio(std::span<const ImpulseSample> samples, int k) {
  if (k < 0 || k > 2) throw DomainError("growth exponent k must be 0, 1 or 2");
  GrowthReport report;
  report.k = k;
  report.samples.reserve(samples.size());
  for (const ImpulseSample& s : samples) {
    if (!(s.t > 0L)) throw DomainError("growth ratios need t > 0");
    if (!s.value.is_finite()) throw DomainError("sample at t = " + s.t.str(17) + " has no value");
    const Bits bits = std::max(s.t.precision(), s.value.precision());
    const Real t(s.t, bits);
    const Real scale = pow(t, static_cast<long>(k)) * exp(ldexp(t, -1));
    report.samples.push_back({s.t, abs(s.value) / scale});
  }
  if (report.samples.empty()) {
    report.sup_ratio = Real(0L, 64);
    report.argmax_t = Real(0L, 64);
    return report;
  }
  const auto best = std::max_element(report.samples.begin(), report.samples.end(),
                                     [](const RatioSample& a, const RatioSample& b) { return a.ratio < b.ratio; });
  report.sup_ratio = best->ratio;
  report.argmax_t = best->t;
  return report;
}

/// Delays ln m, 2 <= m <= N, that fall inside (0, T]. g jumps at each of them.
inline std::vector<Real> impulse_breakpoints(std::uint64_t N, const Real& t_max, const PrecisionContext& ctx) {
  std::vector<Real> out;
  for (std::uint64_t m = 2; m <= N; ++m) {
    Real b = log(static_cast<unsigned long>(m), ctx.bits());
    if (b > t_max) break;
    out.push_back(std::move(b));
  }
  return out;
}

struct LaplaceOptions {
  /// Jump locations of the signal; panels are split there.
  std::vector<Real> breakpoints;
  /// Closed-form transform at real sigma. Defaults to Re G(sigma).
  std::function<Real(const Real&)> closed_form;
  /// Relative change of the integrand between neighbours that triggers a
  /// grid-too-coarse warning.
  double variation_tolerance = 0.25;
};

struct LaplaceResult {
  Real numeric;
  Real closed;
  Real truncation_estimate;  // conditional on the observed k = 2 growth constant
  Real growth_constant;
  std::vector<std::string> warnings;
};

/// int_T^inf t^2 e^{-beta t} dt, beta > 0.
inline Real tail_integral_t2(const Real& T, const Real& beta) {
  const Real b2 = beta * beta;
  return exp(-(beta * T)) * (T * T / beta + ldexp(T, 1) / b2 + ldexp(Real(1L, T.precision()), 1) / (b2 * beta));
}

/// Trapezoid approximation of int_0^T e^{-sigma t} g(t) dt from samples on the
/// uniform grid t_i = i T / n, i = 1..n. The integrand at t = 0 and the
/// one-sided limits at breakpoints are quadratic extrapolations from the
/// neighbouring smooth panels, so the rule stays cleanly second order.
inline LaplaceResult laplace_check(std::span<const ImpulseSample> samples, const Real& sigma,
                                   const PrecisionContext& ctx, LaplaceOptions options = {}) {
  if (!(sigma > 1L)) throw DomainError("laplace_check needs sigma > 1");
  const Bits w = ctx.bits() + 16;
  const Real sw(sigma, w);

  LaplaceResult out{ctx.zero(), ctx.zero(), ctx.zero(), ctx.zero(), {}};
  out.closed = options.closed_form ? ctx.real(options.closed_form(ctx.real(sigma)))
                                   : g_closed(Complex(ctx.real(sigma)), ctx).re;
  const std::size_t n = samples.size();
  if (n == 0) return out;

  const Real h(samples.front().t, w);
  if (!(h > 0L)) throw DomainError("laplace_check samples must start at t > 0");
  const Real spacing_tol = h * Real(1e-6, 64);
  for (std::size_t i = 0; i < n; ++i) {
    if (abs(Real(samples[i].t, w) - h * Real(static_cast<unsigned long>(i + 1), w)) > spacing_tol) {
      throw DomainError("laplace_check needs samples on the uniform grid t_i = i T / n");
    }
  }
  const Real T(samples.back().t, w);

  // Nodes 0..n; node 0 is t = 0.
  std::vector<Real> node_t(n + 1, Real(w));
  std::vector<Real> node_f(n + 1, Real(w));
  for (std::size_t i = 0; i < n; ++i) {
    node_t[i + 1] = Real(samples[i].t, w);
    node_f[i + 1] = exp(-(sw * node_t[i + 1])) * Real(samples[i].value, w);
  }

  std::vector<Real> breaks;
  for (const Real& b : options.breakpoints) {
    if (b > 0L && !(b > T)) breaks.emplace_back(b, w);
  }
  std::sort(breaks.begin(), breaks.end(), [](const Real& a, const Real& b) { return a < b; });

  // Classify breakpoints: on a node (sample value is the h(0) = 1/2 midpoint)
  // or interior to a panel [t_p, t_{p+1}].
  const Real node_tol = h * Real(1e-9, 64);
  std::vector<bool> jump_node(n + 1, false);
  std::vector<std::vector<Real>> interior(n);
  for (const Real& b : breaks) {
    Real pos = b / h;
    Real nearest(pos);
    mpfr_round(nearest.get(), pos.get());
    const long j = nearest.to_long();
    if (abs(b - h * Real(j, w)) < node_tol && j >= 0 && static_cast<std::size_t>(j) <= n) {
      jump_node[static_cast<std::size_t>(j)] = true;
      continue;
    }
    Real fl(pos);
    mpfr_floor(fl.get(), pos.get());
    const auto p = static_cast<std::size_t>(std::clamp<long>(fl.to_long(), 0, static_cast<long>(n) - 1));
    interior[p].push_back(b);
  }

  auto smooth_panel = [&](long p) {
    return p >= 0 && static_cast<std::size_t>(p) < n && interior[static_cast<std::size_t>(p)].empty() &&
           !jump_node[static_cast<std::size_t>(p)] && !jump_node[static_cast<std::size_t>(p) + 1];
  };
  bool coarse_near_jump = false;
  // Extrapolates from nodes a, a -/+ 1, a -/+ 2 (f0, f1, f2) to distance u*h
  // beyond node a: quadratic through three nodes, linear through two.
  auto quadratic = [](const Real& f0, const Real& f1, const Real& f2, const Real& u) {
    return f0 * (u + 1L) * (u + 2L) / 2L - f1 * u * (u + 2L) + f2 * u * (u + 1L) / 2L;
  };
  auto linear = [](const Real& f0, const Real& f1, const Real& u) { return f0 + (f0 - f1) * u; };
  // Value at x from the smooth panels ending at node p (left side).
  auto from_left = [&](std::size_t p, const Real& x, const Real& fallback) {
    const Real u = (x - node_t[p]) / h;
    if (p >= 2 && smooth_panel(static_cast<long>(p) - 1) && smooth_panel(static_cast<long>(p) - 2)) {
      return quadratic(node_f[p], node_f[p - 1], node_f[p - 2], u);
    }
    if (p >= 1 && smooth_panel(static_cast<long>(p) - 1)) return linear(node_f[p], node_f[p - 1], u);
    coarse_near_jump = true;
    return fallback;
  };
  // Value at x from the smooth panels starting at node q (right side).
  auto from_right = [&](std::size_t q, const Real& x, const Real& fallback) {
    const Real u = (node_t[q] - x) / h;
    if (smooth_panel(static_cast<long>(q)) && smooth_panel(static_cast<long>(q) + 1)) {
      return quadratic(node_f[q], node_f[q + 1], node_f[q + 2], u);
    }
    if (smooth_panel(static_cast<long>(q))) return linear(node_f[q], node_f[q + 1], u);
    coarse_near_jump = true;
    return fallback;
  };

  // t = 0 is never sampled; node 0 is extrapolated from the right.
  if (interior[0].empty() && n >= 2 && smooth_panel(1)) {
    const bool is_coarse = coarse_near_jump;
    node_f[0] = from_right(1, node_t[0], node_f[1]);
    coarse_near_jump = is_coarse;
  } else {
    node_f[0] = node_f[1];
    out.warnings.push_back("not enough smooth samples near t = 0; integrand there taken as constant");
  }

  auto trapezoid = [](const Real& a, const Real& fa, const Real& b, const Real& fb) {
    return (b - a) * ldexp(fa + fb, -1);
  };

  Real max_abs(w);
  for (const Real& f : node_f) max_abs = max(max_abs, abs(f));
  const Real variation_limit = max_abs * Real(options.variation_tolerance, 64);
  std::size_t coarse_panels = 0;
  bool crowded = false;

  std::vector<Real> pieces;
  pieces.reserve(n + 2 * breaks.size());
  for (std::size_t p = 0; p < n; ++p) {
    const Real& a = node_t[p];
    const Real& c = node_t[p + 1];
    const Real fa = jump_node[p] ? from_right(p + 1, a, node_f[p + 1]) : node_f[p];
    const Real fc = jump_node[p + 1] ? from_left(p, c, node_f[p]) : node_f[p + 1];
    const auto& inner = interior[p];
    if (inner.empty()) {
      if (!jump_node[p] && !jump_node[p + 1] && abs(fc - fa) > variation_limit) ++coarse_panels;
      pieces.push_back(trapezoid(a, fa, c, fc));
      continue;
    }
    const Real left = from_left(p, inner.front(), fa);
    const Real right = from_right(p + 1, inner.back(), fc);
    pieces.push_back(trapezoid(a, fa, inner.front(), left));
    if (inner.size() > 1) {
      crowded = true;
      pieces.push_back(trapezoid(inner.front(), left, inner.back(), right));
    }
    pieces.push_back(trapezoid(inner.back(), right, c, fc));
  }
  out.numeric = compensated_sum(pieces, ctx).value;

  if (coarse_panels > 0) {
    out.warnings.push_back("grid too coarse: integrand changes by more than " +
                           std::to_string(options.variation_tolerance) + " of its maximum on " +
                           std::to_string(coarse_panels) + " panel(s)");
  }
  if (coarse_near_jump) out.warnings.push_back("grid too coarse near a breakpoint; one-sided limits taken as constant");
  if (crowded) out.warnings.push_back("several breakpoints share one panel; refine the grid");

  const GrowthReport k2 = growth_ratio(samples, 2);
  out.growth_constant = ctx.real(k2.sup_ratio);
  const Real beta = sw - Real(0.5, w);
  out.truncation_estimate = ctx.real(Real(k2.sup_ratio, w) * tail_integral_t2(T, beta));
  return out;
}

/// Writes `t,ratio` rows to `csv_path` and {k, sup_ratio, argmax_t, params} to
/// `json_path` (skipped when empty). Numbers use `digits` significant digits.
inline void growth_report_emit(const GrowthReport& report, const std::filesystem::path& csv_path,
                               const std::filesystem::path& json_path, int digits,
                               const std::vector<std::pair<std::string, Cell>>& params = {}) {
  Table table({"t", "ratio"});
  for (const auto& s : report.samples) table.add_row({number_cell(s.t, digits), number_cell(s.ratio, digits)});
  {
    std::ofstream csv(csv_path);
    if (!csv) throw Error("cannot open " + csv_path.string() + " for writing");
    table.write_csv(csv);
    if (!csv) throw Error("failed writing " + csv_path.string());
  }
  if (json_path.empty()) return;
  std::ofstream json(json_path);
  if (!json) throw Error("cannot open " + json_path.string() + " for writing");
  write_json_object(json,
                    {{"k", integer_cell(static_cast<std::uint64_t>(report.k))},
                     {"sup_ratio", number_cell(report.sup_ratio, digits)},
                     {"argmax_t", number_cell(report.argmax_t, digits)}},
                    "params", params);
  if (!json) throw Error("failed writing " + json_path.string());
}

/// Reads a `t,ratio` CSV back; sup/argmax are recomputed from the rows.
inline GrowthReport read_growth_csv(const std::filesystem::path& csv_path, int k, const PrecisionContext& ctx) {
  std::ifstream in(csv_path);
  if (!in) throw Error("cannot open " + csv_path.string());
  const auto rows = read_csv(in);
  if (rows.empty() || rows.front() != std::vector<std::string>{"t", "ratio"}) {
    throw Error(csv_path.string() + " is not a growth report");
  }
  GrowthReport report;
  report.k = k;
  report.sup_ratio = ctx.zero();
  report.argmax_t = ctx.zero();
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != 2) throw Error("malformed growth report row " + std::to_string(i));
    RatioSample s{ctx.parse(rows[i][0]), ctx.parse(rows[i][1])};
    if (i == 1 || s.ratio > report.sup_ratio) {
      report.sup_ratio = s.ratio;
      report.argmax_t = s.t;
    }
    report.samples.push_back(std::move(s));
  }
  return report;
}

}  // namespace zetalab
