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

// Command-line front end. Exit status: 0 success, 2 invalid flags, 1 when a
// computation fails. Diagnostics go to `err`, data only to `out` or --output.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zetalab/zetalab.hpp"

namespace zetalab::cli {

/// Bad flag values detected before any computation.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  Bits prec_bits = PrecisionContext::kDefaultBits;
  std::string format = "csv";
  std::string output;
  unsigned threads = 0;
};

struct Flags {
  CommonFlags common;
  // divisor-table, impulse, growth-report, transform-check
  std::uint64_t N = 0;
  unsigned n_max = 0;
  bool d0_all_ones = false;
  unsigned K = 0;
  // laguerre-eval
  unsigned n = 0;
  std::string t;
  // region-scan
  std::string re_min, re_max, im_min, im_max;
  unsigned re_steps = 1, im_steps = 1;
  // impulse / growth-report / transform-check
  std::string t_min, t_max;
  unsigned t_steps = 1;
  std::string mode = "resummed";
  int k = 2;
  std::string summary;
  std::string sigma;
  std::string signal = "impulse";
  // psi-compare / find-zeros
  std::string x_min, x_max;
  unsigned x_steps = 1;
  unsigned zeros = 0;
  bool strict = false;
  unsigned count = 0;
  // rational-demo
  std::string a;
};

namespace detail {

inline Real parse_real(const std::string& flag, const std::string& text, const PrecisionContext& ctx) {
  try {
    return ctx.parse(text);
  } catch (const DomainError&) {
    throw ValidationError("--" + flag + ": '" + text + "' is not a number");
  }
}

inline PrecisionContext make_context(const CommonFlags& c) {
  try {
    return PrecisionContext(c.prec_bits);
  } catch (const DomainError& e) {
    throw ValidationError(std::string("--prec-bits: ") + e.what());
  }
}

inline void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

/// Uniform grid t_i = i T / n, i = 1..n.
inline std::vector<Real> open_grid(const Real& t_max, unsigned steps) {
  std::vector<Real> out;
  out.reserve(steps);
  for (unsigned i = 1; i <= steps; ++i) out.push_back(t_max * Real(static_cast<long>(i), t_max.precision()) / static_cast<long>(steps));
  return out;
}

using Command = std::function<Table(const Flags&, const PrecisionContext&, std::ostream& err)>;

inline Table divisor_table_cmd(const Flags& f, const PrecisionContext&, std::ostream&) {
  require(f.N >= 1, "--N must be >= 1");
  const auto table =
      build_divisor_table(f.N, f.n_max, f.d0_all_ones ? ZeroRowConvention::kAllOnes : ZeroRowConvention::kUnit);
  Table out({"n", "m", "d"});
  for (unsigned n = 0; n <= table.n_max(); ++n) {
    for (std::uint64_t m = 1; m <= table.N(); ++m) out.add_row({integer_cell(n), integer_cell(m), integer_cell(table(n, m))});
  }
  return out;
}

inline Table laguerre_cmd(const Flags& f, const PrecisionContext& ctx, std::ostream&) {
  const Real t = parse_real("t", f.t, ctx);
  require(t.sign() >= 0, "--t must be >= 0");
  const Real value = laguerre_eval(f.n, t, ctx);
  const Real margin = exp(ldexp(t, -1)) - abs(value);
  const int digits = ctx.decimal_digits();
  Table out({"n", "t", "value", "bound_margin"});
  out.add_row({integer_cell(f.n), number_cell(t, digits), number_cell(value, digits), number_cell(margin, digits)});
  return out;
}

inline Table region_cmd(const Flags& f, const PrecisionContext& ctx, std::ostream& err) {
  const Axis re{parse_real("re-min", f.re_min, ctx), parse_real("re-max", f.re_max, ctx), f.re_steps};
  const Axis im{parse_real("im-min", f.im_min, ctx), parse_real("im-max", f.im_max, ctx), f.im_steps};
  require(re.steps >= 1 && im.steps >= 1, "--re-steps and --im-steps must be >= 1");
  require(!(re.min > re.max) && !(im.min > im.max), "axis minimum exceeds maximum");
  const RegionGrid grid = region_scan(re, im, ctx, f.common.threads);
  const int digits = ctx.decimal_digits();
  Table out({"re", "im", "q_abs", "in_A"});
  for (const auto& cell : grid.cells) {
    if (!cell.error.empty()) err << "warning: s = " << cell.s.re.str(12) << " + " << cell.s.im.str(12) << "i: " << cell.error << "\n";
    out.add_row({number_cell(cell.s.re, digits), number_cell(cell.s.im, digits), number_cell(cell.q_abs, digits),
                 bool_cell(cell.in_A)});
  }
  return out;
}

inline SummationMode parse_mode(const std::string& mode) {
  return mode == "direct" ? SummationMode::kDirect : SummationMode::kResummed;
}

inline Table impulse_cmd(const Flags& f, const PrecisionContext& ctx, std::ostream& err) {
  require(f.N >= 1, "--N must be >= 1");
  const SeriesParams params{f.N, f.K, ctx};
  const Axis axis{parse_real("t-min", f.t_min, ctx), parse_real("t-max", f.t_max, ctx), f.t_steps};
  require(axis.steps >= 1, "--t-steps must be >= 1");
  const auto grid = axis.values();
  const Real limit = time_limit(params);
  for (const Real& t : grid) require(t > 0L && t < limit, "t grid must lie inside (0, ln(N+1))");
  const auto table = build_divisor_table(f.N, f.K, f.d0_all_ones ? ZeroRowConvention::kAllOnes : ZeroRowConvention::kUnit);
  const auto samples = impulse_scan(grid, params, table, parse_mode(f.mode), {}, f.common.threads);
  const int digits = ctx.decimal_digits();
  Table out({"t", "value", "error_estimate", "bits_lost"});
  for (const auto& s : samples) {
    if (!s.error.empty()) err << "warning: t = " << s.t.str(12) << ": " << s.error << "\n";
    if (s.precision_warning) err << "warning: t = " << s.t.str(12) << ": error estimate exceeds 1e-3 of |value|; raise --prec-bits\n";
    out.add_row({number_cell(s.t, digits), number_cell(s.value, digits), number_cell(s.error_estimate, digits),
                 number_cell(Real(s.bits_lost, 53), 6)});
  }
  return out;
}

inline Table psi_compare_cmd(const Flags& f, const PrecisionContext& ctx, std::ostream& err) {
  const Axis axis{parse_real("x-min", f.x_min, ctx), parse_real("x-max", f.x_max, ctx), f.x_steps};
  require(axis.steps >= 1, "--x-steps must be >= 1");
  require(axis.min > 1L && !(axis.min > axis.max), "--x-min must exceed 1 and not exceed --x-max");
  require(!(axis.max > static_cast<long>(kPsiSieveLimit)), "--x-max must not exceed 10^7");
  require(f.zeros <= kMaxZeroCount, "--zeros must not exceed 200");
  ZeroList zeros;
  if (f.zeros > 0) {
    zeros = find_zeros(f.zeros, ctx, {.threads = f.common.threads});
    for (const auto& w : zeros.warnings) err << "warning: " << w << "\n";
  }
  Real top(axis.max);
  mpfr_floor(top.get(), axis.max.get());
  const PrimePowerTable table(std::max<std::uint64_t>(2, static_cast<std::uint64_t>(top.to_long())), ctx);
  const auto convention = f.strict ? PsiConvention::kStrict : PsiConvention::kInclusive;
  const auto xs = axis.values();
  std::vector<PsiSample> rows(xs.size());
  parallel_for(xs.size(), f.common.threads, [&](std::size_t i) {
    rows[i] = {xs[i], table.psi(xs[i], convention), psi_explicit(xs[i], zeros, ctx), zeros.gammas.size()};
  });
  const int digits = ctx.decimal_digits();
  Table out({"x", "psi_sieve", "psi_explicit", "zeros_used", "abs_diff"});
  for (const auto& r : rows) {
    out.add_row({number_cell(r.x, digits), number_cell(r.psi_sieve, digits), number_cell(r.psi_explicit, digits),
                 integer_cell(r.zeros_used), number_cell(abs(r.psi_explicit - r.psi_sieve), digits)});
  }
  return out;
}

inline Table find_zeros_cmd(const Flags& f, const PrecisionContext& ctx, std::ostream& err) {
  require(f.count >= 1 && f.count <= kMaxZeroCount, "--count must lie in [1, 200]");
  const ZeroList zeros = find_zeros(f.count, ctx, {.threads = f.common.threads});
  for (const auto& w : zeros.warnings) err << "warning: " << w << "\n";
  Table out({"k", "gamma"});
  // Ordinates are bracketed to 1e-6, so more digits would be noise.
  for (std::size_t k = 0; k < zeros.gammas.size(); ++k) out.add_row({integer_cell(k + 1), number_cell(zeros.gammas[k], 12)});
  return out;
}

inline std::vector<ImpulseSample> growth_samples(const Flags& f, const PrecisionContext& ctx, const Real& t_max) {
  require(f.N >= 1, "--N must be >= 1");
  require(f.t_steps >= 1, "--t-steps must be >= 1");
  const SeriesParams params{f.N, f.K, ctx};
  require(t_max > 0L && t_max < time_limit(params), "--t-max must lie inside (0, ln(N+1))");
  const auto grid = open_grid(t_max, f.t_steps);
  const auto table = build_divisor_table(f.N, f.K, f.d0_all_ones ? ZeroRowConvention::kAllOnes : ZeroRowConvention::kUnit);
  auto samples = impulse_scan(grid, params, table, parse_mode(f.mode), {}, f.common.threads);
  for (const auto& s : samples) {
    if (!s.error.empty()) throw Error("t = " + s.t.str(12) + ": " + s.error);
  }
  return samples;
}

inline Table growth_cmd(const Flags& f, const PrecisionContext& ctx, std::ostream& err) {
  require(f.k >= 0 && f.k <= 2, "--k must be 0, 1 or 2");
  const Real t_max = parse_real("t-max", f.t_max, ctx);
  const auto samples = growth_samples(f, ctx, t_max);
  for (const auto& s : samples) {
    if (s.precision_warning) err << "warning: t = " << s.t.str(12) << ": error estimate exceeds 1e-3 of |value|\n";
  }
  const GrowthReport report = growth_ratio(samples, f.k);
  const int digits = ctx.decimal_digits();
  if (!f.summary.empty()) {
    std::ofstream json(f.summary);
    if (!json) throw Error("cannot open " + f.summary + " for writing");
    write_json_object(json,
                      {{"k", integer_cell(static_cast<std::uint64_t>(report.k))},
                       {"sup_ratio", number_cell(report.sup_ratio, digits)},
                       {"argmax_t", number_cell(report.argmax_t, digits)}},
                      "params",
                      {{"N", integer_cell(f.N)},
                       {"K", integer_cell(f.K)},
                       {"t_max", number_cell(t_max, digits)},
                       {"t_steps", integer_cell(f.t_steps)},
                       {"prec_bits", integer_cell(static_cast<std::uint64_t>(ctx.bits()))}});
  }
  Table out({"t", "ratio"});
  for (const auto& s : report.samples) out.add_row({number_cell(s.t, digits), number_cell(s.ratio, digits)});
  return out;
}

inline Table transform_cmd(const Flags& f, const PrecisionContext& ctx, std::ostream& err) {
  const Real sigma = parse_real("sigma", f.sigma, ctx);
  require(sigma > 1L, "--sigma must exceed 1");
  require(f.t_steps >= 1, "--t-steps must be >= 1");
  require(f.signal == "impulse" || f.signal == "rational", "--signal must be impulse or rational");

  std::vector<ImpulseSample> samples;
  LaplaceOptions options;
  Real t_max(ctx.bits());
  if (f.signal == "rational") {
    const Real a = parse_real("a", f.a.empty() ? "1" : f.a, ctx);
    require(sigma > a, "--sigma must exceed --a for the rational signal");
    require(!f.t_max.empty(), "--t-max is required for the rational signal");
    t_max = parse_real("t-max", f.t_max, ctx);
    require(t_max > 0L, "--t-max must be positive");
    for (const Real& t : open_grid(t_max, f.t_steps)) samples.push_back({t, exp(a * t), ctx.zero(), 0.0, false, {}});
    options.closed_form = [a](const Real& s) { return 1L / (s - a); };
  } else {
    require(f.N >= 1, "--N must be >= 1");
    const SeriesParams params{f.N, f.K, ctx};
    t_max = f.t_max.empty() ? time_limit(params) * Real(1.0 - 1e-9, 64) : parse_real("t-max", f.t_max, ctx);
    samples = growth_samples(f, ctx, t_max);
    options.breakpoints = impulse_breakpoints(f.N, t_max, ctx);
  }
  const LaplaceResult r = laplace_check(samples, sigma, ctx, options);
  for (const auto& w : r.warnings) err << "warning: " << w << "\n";
  const int digits = ctx.decimal_digits();
  Table out({"sigma", "T", "numeric", "closed", "truncation_estimate", "abs_diff"});
  out.add_row({number_cell(sigma, digits), number_cell(t_max, digits), number_cell(r.numeric, digits),
               number_cell(r.closed, digits), number_cell(r.truncation_estimate, digits),
               number_cell(abs(r.numeric - r.closed), digits)});
  return out;
}

inline Table rational_cmd(const Flags& f, const PrecisionContext& ctx, std::ostream&) {
  const Real a = parse_real("a", f.a, ctx);
  const Real t = parse_real("t", f.t, ctx);
  const RationalDemo r = rational_demo(a, t, f.K, ctx);
  const int digits = ctx.decimal_digits();
  Table out({"a", "t", "K", "partial", "exact", "gap"});
  out.add_row({number_cell(a, digits), number_cell(t, digits), integer_cell(f.K), number_cell(r.partial, digits),
               number_cell(r.exact, digits), number_cell(r.gap, digits)});
  return out;
}

inline void add_common(CLI::App* sub, CommonFlags& c) {
  sub->add_option("--prec-bits", c.prec_bits, "working precision in bits (>= 53)")->capture_default_str();
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sub->add_option("--output", c.output, "write data here instead of standard output");
  sub->add_option("--threads", c.threads, "worker threads (0 = all cores)")->capture_default_str();
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"zetalab: impulse response of 1/((s-1) zeta(s)) and companion checks"};
  app.require_subcommand(1, 1);
  Flags f;
  std::vector<std::pair<CLI::App*, detail::Command>> commands;

  auto* divisor = app.add_subcommand("divisor-table", "Piltz divisor values d_n(m) as n,m,d");
  divisor->add_option("--N", f.N, "largest m")->required();
  divisor->add_option("--n-max", f.n_max, "largest n")->required();
  divisor->add_flag("--d0-all-ones", f.d0_all_ones, "use d_0(m) = 1 for every m");
  commands.emplace_back(divisor, detail::divisor_table_cmd);

  auto* laguerre = app.add_subcommand("laguerre-eval", "L_n(t) and the margin e^{t/2} - |L_n(t)|");
  laguerre->add_option("--n", f.n, "degree")->required();
  laguerre->add_option("--t", f.t, "argument, t >= 0")->required();
  commands.emplace_back(laguerre, detail::laguerre_cmd);

  auto* region = app.add_subcommand("region-scan", "|Q(s)| on a grid and membership in {|Q| < 1}");
  region->add_option("--re-min", f.re_min)->required();
  region->add_option("--re-max", f.re_max)->required();
  region->add_option("--re-steps", f.re_steps)->required();
  region->add_option("--im-min", f.im_min)->required();
  region->add_option("--im-max", f.im_max)->required();
  region->add_option("--im-steps", f.im_steps)->required();
  commands.emplace_back(region, detail::region_cmd);

  auto* impulse = app.add_subcommand("impulse", "truncated impulse response g^(K)(t) on a grid");
  impulse->add_option("--N", f.N, "m cutoff")->required();
  impulse->add_option("--K", f.K, "series order")->required();
  impulse->add_option("--t-min", f.t_min)->required();
  impulse->add_option("--t-max", f.t_max)->required();
  impulse->add_option("--t-steps", f.t_steps)->required();
  impulse->add_option("--mode", f.mode)->check(CLI::IsMember({"direct", "resummed"}))->capture_default_str();
  impulse->add_flag("--d0-all-ones", f.d0_all_ones, "use d_0(m) = 1 for every m");
  commands.emplace_back(impulse, detail::impulse_cmd);

  auto* psi = app.add_subcommand("psi-compare", "sieve psi(x) against the truncated explicit formula");
  psi->add_option("--x-min", f.x_min)->required();
  psi->add_option("--x-max", f.x_max)->required();
  psi->add_option("--x-steps", f.x_steps)->required();
  psi->add_option("--zeros", f.zeros, "number of zero pairs in the sum")->required();
  psi->add_flag("--strict", f.strict, "count prime powers p^n < x instead of <= x");
  commands.emplace_back(psi, detail::psi_compare_cmd);

  auto* zeros = app.add_subcommand("find-zeros", "ordinates of the first zeros on the critical line");
  zeros->add_option("--count", f.count)->required();
  commands.emplace_back(zeros, detail::find_zeros_cmd);

  auto* growth = app.add_subcommand("growth-report", "ratios |g(t)| / (t^k e^{t/2}) on t_i = i T / n");
  growth->add_option("--k", f.k)->capture_default_str();
  growth->add_option("--N", f.N)->required();
  growth->add_option("--K", f.K)->required();
  growth->add_option("--t-max", f.t_max)->required();
  growth->add_option("--t-steps", f.t_steps)->required();
  growth->add_option("--mode", f.mode)->check(CLI::IsMember({"direct", "resummed"}))->capture_default_str();
  growth->add_option("--summary", f.summary, "also write the JSON summary here");
  growth->add_flag("--d0-all-ones", f.d0_all_ones);
  commands.emplace_back(growth, detail::growth_cmd);

  auto* transform = app.add_subcommand("transform-check", "trapezoid Laplace transform of g against G(sigma)");
  transform->add_option("--sigma", f.sigma)->required();
  transform->add_option("--N", f.N);
  transform->add_option("--K", f.K);
  transform->add_option("--t-steps", f.t_steps)->required();
  transform->add_option("--t-max", f.t_max, "defaults to just below ln(N+1)");
  transform->add_option("--signal", f.signal)->check(CLI::IsMember({"impulse", "rational"}))->capture_default_str();
  transform->add_option("--a", f.a, "exponent of the rational signal e^{at}");
  commands.emplace_back(transform, detail::transform_cmd);

  auto* rational = app.add_subcommand("rational-demo", "series for 1/(s-a) against e^{at}");
  rational->add_option("--a", f.a)->required();
  rational->add_option("--t", f.t)->required();
  rational->add_option("--K", f.K)->required();
  commands.emplace_back(rational, detail::rational_cmd);

  for (auto& [sub, _] : commands) detail::add_common(sub, f.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    const PrecisionContext ctx = detail::make_context(f.common);
    Table table({});
    for (auto& [sub, cmd] : commands) {
      if (sub->parsed()) table = cmd(f, ctx, err);
    }
    std::ostringstream buffer;
    table.write(buffer, f.common.format == "json" ? Format::kJson : Format::kCsv);
    if (f.common.output.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(f.common.output, std::ios::binary);
      file << buffer.str();
      if (!file) throw Error("cannot write " + f.common.output);
    }
    return 0;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace zetalab::cli
