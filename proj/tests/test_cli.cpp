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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

namespace zetalab {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "zetalab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in);
}

// Raw scalar tokens of a JSON array of flat objects, keyed in document order.
struct TokenCollector : nlohmann::json_sax<nlohmann::json> {
  std::vector<std::vector<std::pair<std::string, std::string>>> rows;
  std::string key_;

  void put(std::string v) { rows.back().emplace_back(key_, std::move(v)); }
  bool null() override { put("null"); return true; }
  bool boolean(bool b) override { put(b ? "true" : "false"); return true; }
  bool number_integer(number_integer_t v) override { put(std::to_string(v)); return true; }
  bool number_unsigned(number_unsigned_t v) override { put(std::to_string(v)); return true; }
  bool number_float(number_float_t, const string_t& s) override { put(s); return true; }
  bool string(string_t& s) override { put(s); return true; }
  bool binary(binary_t&) override { return false; }
  bool start_object(std::size_t) override { rows.emplace_back(); return true; }
  bool key(string_t& k) override { key_ = k; return true; }
  bool end_object() override { return true; }
  bool start_array(std::size_t) override { return true; }
  bool end_array() override { return true; }
  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override { return false; }
};

// CSV and JSON renderings of one invocation carry identical tokens.
void expect_same_content(const std::vector<std::string>& args) {
  auto csv_args = args;
  csv_args.insert(csv_args.end(), {"--format", "csv"});
  auto json_args = args;
  json_args.insert(json_args.end(), {"--format", "json"});
  const Outcome c = run_cli(csv_args);
  const Outcome j = run_cli(json_args);
  ASSERT_EQ(c.code, 0) << c.err;
  ASSERT_EQ(j.code, 0) << j.err;
  const auto rows = csv_rows(c.out);
  TokenCollector sax;
  ASSERT_TRUE(nlohmann::json::sax_parse(j.out, &sax)) << j.out;
  ASSERT_EQ(sax.rows.size() + 1, rows.size()) << args[0];
  for (std::size_t r = 0; r < sax.rows.size(); ++r) {
    ASSERT_EQ(sax.rows[r].size(), rows[0].size());
    for (std::size_t i = 0; i < rows[0].size(); ++i) {
      EXPECT_EQ(sax.rows[r][i].first, rows[0][i]);
      const std::string& csv_token = rows[r + 1][i];
      const bool non_finite = csv_token == "nan" || csv_token == "inf" || csv_token == "-inf";
      EXPECT_EQ(sax.rows[r][i].second, non_finite ? "null" : csv_token) << args[0] << " row " << r;
    }
  }
}

TEST(Cli, DivisorTableShape) {
  const Outcome o = run_cli({"divisor-table", "--N", "10", "--n-max", "2"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rows = csv_rows(o.out);
  ASSERT_EQ(rows.size(), 31u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"n", "m", "d"}));
  EXPECT_EQ(rows[1], (std::vector<std::string>{"0", "1", "1"}));
  EXPECT_EQ(rows[2], (std::vector<std::string>{"0", "2", "0"}));
  EXPECT_EQ(rows[30], (std::vector<std::string>{"2", "10", "4"}));
  const auto ones = csv_rows(run_cli({"divisor-table", "--N", "10", "--n-max", "2", "--d0-all-ones"}).out);
  EXPECT_EQ(ones[2], (std::vector<std::string>{"0", "2", "1"}));
}

TEST(Cli, RationalDemoGap) {
  const Outcome o = run_cli({"rational-demo", "--a", "1", "--t", "1", "--K", "20"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rows = csv_rows(o.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].back(), "gap");
  EXPECT_LT(std::stod(rows[1].back()), 1e-18);
  EXPECT_GT(std::stod(rows[1].back()), 0.0);
}

TEST(Cli, ImpulseRows) {
  const Outcome o =
      run_cli({"impulse", "--N", "5", "--K", "8", "--t-min", "0.1", "--t-max", "1.6", "--t-steps", "16"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rows = csv_rows(o.out);
  ASSERT_EQ(rows.size(), 17u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"t", "value", "error_estimate", "bits_lost"}));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_TRUE(std::isfinite(std::stod(rows[i][2]))) << i;
    EXPECT_GE(std::stod(rows[i][2]), 0.0);
  }
}

TEST(Cli, LaguerreEval) {
  const Outcome o = run_cli({"laguerre-eval", "--n", "3", "--t", "1"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rows = csv_rows(o.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(std::stod(rows[1][2]), -2.0 / 3.0, 1e-15);
  EXPECT_NEAR(std::stod(rows[1][3]), std::exp(0.5) - 2.0 / 3.0, 1e-15);
}

TEST(Cli, FindZeros) {
  const Outcome o = run_cli({"find-zeros", "--count", "3", "--prec-bits", "64"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rows = csv_rows(o.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_NEAR(std::stod(rows[1][1]), 14.134725, 1e-4);
  EXPECT_NEAR(std::stod(rows[3][1]), 25.010858, 1e-4);
}

TEST(Cli, PsiCompare) {
  const Outcome o = run_cli({"psi-compare", "--x-min", "10.5", "--x-max", "100.5", "--x-steps", "4", "--zeros",
                             "10", "--prec-bits", "64"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rows = csv_rows(o.out);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[1][3], "10");
}

TEST(Cli, RegionScan) {
  const Outcome o = run_cli({"region-scan", "--re-min", "0.1", "--re-max", "2", "--re-steps", "3", "--im-min", "0",
                             "--im-max", "0", "--im-steps", "1", "--prec-bits", "64"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rows = csv_rows(o.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[1][3], "false");
  EXPECT_EQ(rows[3][3], "true");
}

TEST(Cli, GrowthReportAndSummary) {
  const auto summary = std::filesystem::temp_directory_path() / "zetalab_cli_summary.json";
  const Outcome o = run_cli({"growth-report", "--N", "5", "--K", "6", "--t-max", "1.7", "--t-steps", "10",
                             "--summary", summary.string(), "--prec-bits", "128"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rows = csv_rows(o.out);
  ASSERT_EQ(rows.size(), 11u);
  double best = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) best = std::max(best, std::stod(rows[i][1]));
  std::ifstream in(summary);
  const auto json = nlohmann::json::parse(in);
  EXPECT_EQ(json["k"], 2);
  EXPECT_DOUBLE_EQ(json["sup_ratio"].get<double>(), best);
}

TEST(Cli, TransformCheckRational) {
  const Outcome o = run_cli({"transform-check", "--sigma", "3", "--signal", "rational", "--a", "1", "--t-max", "20",
                             "--t-steps", "2000", "--prec-bits", "96"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rows = csv_rows(o.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_LT(std::stod(rows[1][5]), 1e-4);
}

TEST(Cli, ValidationErrorsExitTwo) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"no-such-command"}).code, 2);
  EXPECT_EQ(run_cli({"divisor-table", "--N", "10"}).code, 2);
  EXPECT_EQ(run_cli({"divisor-table", "--N", "10", "--n-max", "2", "--bogus"}).code, 2);
  EXPECT_EQ(run_cli({"divisor-table", "--N", "10", "--n-max", "2", "--format", "xml"}).code, 2);
  EXPECT_EQ(run_cli({"laguerre-eval", "--n", "3", "--t", "abc"}).code, 2);
  EXPECT_EQ(run_cli({"laguerre-eval", "--n", "3", "--t", "1", "--prec-bits", "20"}).code, 2);
  const Outcome o = run_cli({"impulse", "--N", "5", "--K", "2", "--t-min", "0.1", "--t-max", "2", "--t-steps", "4"});
  EXPECT_EQ(o.code, 2);
  EXPECT_TRUE(o.out.empty());
  EXPECT_FALSE(o.err.empty());
}

TEST(Cli, ComputationErrorsExitOne) {
  const Outcome o = run_cli({"psi-compare", "--x-min", "7", "--x-max", "7", "--x-steps", "1", "--zeros", "0"});
  EXPECT_EQ(o.code, 1);
  EXPECT_TRUE(o.out.empty());
  EXPECT_NE(o.err.find("prime power"), std::string::npos);
}

TEST(Cli, FailureLeavesNoOutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "zetalab_cli_fail.csv";
  std::filesystem::remove(path);
  const Outcome o = run_cli({"psi-compare", "--x-min", "7", "--x-max", "7", "--x-steps", "1", "--zeros", "0",
                             "--output", path.string()});
  EXPECT_EQ(o.code, 1);
  EXPECT_FALSE(std::filesystem::exists(path));
}

TEST(Cli, OutputFileMatchesStdout) {
  const auto path = std::filesystem::temp_directory_path() / "zetalab_cli_out.csv";
  const std::vector<std::string> args{"divisor-table", "--N", "12", "--n-max", "3"};
  auto with_file = args;
  with_file.insert(with_file.end(), {"--output", path.string()});
  const Outcome a = run_cli(args);
  const Outcome b = run_cli(with_file);
  ASSERT_EQ(b.code, 0);
  EXPECT_TRUE(b.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), a.out);
}

TEST(Cli, JsonAndCsvCarrySameNumbers) {
  expect_same_content({"divisor-table", "--N", "6", "--n-max", "2"});
  expect_same_content({"laguerre-eval", "--n", "5", "--t", "2.5", "--prec-bits", "96"});
  expect_same_content({"region-scan", "--re-min", "-1", "--re-max", "2", "--re-steps", "4", "--im-min", "0",
                       "--im-max", "1", "--im-steps", "2", "--prec-bits", "64"});
  expect_same_content({"impulse", "--N", "5", "--K", "4", "--t-min", "0.2", "--t-max", "1.7", "--t-steps", "5"});
  expect_same_content({"psi-compare", "--x-min", "10.5", "--x-max", "30.5", "--x-steps", "3", "--zeros", "3",
                       "--prec-bits", "64"});
  expect_same_content({"find-zeros", "--count", "2", "--prec-bits", "64"});
  expect_same_content({"growth-report", "--k", "1", "--N", "4", "--K", "3", "--t-max", "1.5", "--t-steps", "6"});
  expect_same_content({"transform-check", "--sigma", "2.5", "--N", "4", "--K", "4", "--t-steps", "40",
                       "--prec-bits", "64"});
  expect_same_content({"rational-demo", "--a", "2", "--t", "3", "--K", "60"});
}

TEST(Cli, OutputIndependentOfThreadCount) {
  const std::vector<std::vector<std::string>> cases{
      {"impulse", "--N", "8", "--K", "12", "--t-min", "0.05", "--t-max", "2.1", "--t-steps", "24"},
      {"region-scan", "--re-min", "0.2", "--re-max", "2", "--re-steps", "5", "--im-min", "-2", "--im-max", "2",
       "--im-steps", "5", "--prec-bits", "80"},
      {"find-zeros", "--count", "4", "--prec-bits", "64"}};
  for (const auto& args : cases) {
    auto one = args;
    one.insert(one.end(), {"--threads", "1"});
    auto many = args;
    many.insert(many.end(), {"--threads", "7"});
    const Outcome a = run_cli(one);
    const Outcome b = run_cli(many);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out) << args[0];
    EXPECT_EQ(a.out, run_cli(one).out) << args[0];
  }
}

}  // namespace
}  // namespace zetalab
