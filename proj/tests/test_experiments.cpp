// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rwg/experiments.hpp"
#include "rwg/instance.hpp"
#include "rwg/kernels.hpp"
#include "rwg/ratefn.hpp"

using rwg::Distribution;
using rwg::ExperimentReport;
using rwg::FamilyKind;
using rwg::GraphPattern;
using rwg::StructureFamily;

namespace {

std::string csv_of(const ExperimentReport& r) {
  std::ostringstream ss;
  rwg::write_report_csv(r, ss);
  return ss.str();
}

std::string json_of(const ExperimentReport& r) {
  std::ostringstream ss;
  rwg::write_report_json(r, ss);
  return ss.str();
}

}  // namespace

TEST_CASE("gen_instance: reproducible, per-edge isolated, independent across trials") {
  const auto f = StructureFamily::matching(50);
  const Distribution d = Distribution::gaussian();
  const auto a = rwg::gen_instance(f, d, 42, 3);
  const auto b = rwg::gen_instance(f, d, 42, 3);
  CHECK(a.w == b.w);

  // any single edge regenerates in isolation from its counter
  for (const std::size_t e : {std::size_t{0}, std::size_t{17}, std::size_t{2499}}) {
    double one = 0.0;
    d.fill(std::span<double>(&one, 1), 42, 3, e);
    CHECK(one == a.w[e]);
  }

  // neighbouring trials share (almost surely) no values
  const auto c = rwg::gen_instance(f, d, 42, 4);
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.w.size(); ++i) same += a.w[i] == c.w[i];
  CHECK(static_cast<double>(same) < 0.01 * static_cast<double>(a.w.size()));

  // CLT window for the 2500 gaussian weights
  double mean = 0.0;
  for (const double x : a.w) mean += x;
  mean /= static_cast<double>(a.w.size());
  CHECK(std::fabs(mean) <= 4.0 / std::sqrt(2500.0));
}

TEST_CASE("run_trials determinism across worker counts and backends") {
  const auto f = StructureFamily::matching(30);
  const Distribution d = Distribution::gaussian();
  const ExperimentReport r1 = rwg::run_trials(f, d, 40, 7, 1);
  const ExperimentReport r2 = rwg::run_trials(f, d, 40, 7, 2);
  const ExperimentReport r8 = rwg::run_trials(f, d, 40, 7, 8);
  CHECK(csv_of(r1) == csv_of(r2));
  CHECK(csv_of(r1) == csv_of(r8));
  CHECK(json_of(r1) == json_of(r8));

  // backend switch must not change a single byte either
  const char* current = rwg::kernels::active().name;
  if (rwg::kernels::set_active("scalar")) {
    const ExperimentReport rs = rwg::run_trials(f, d, 40, 7, 2);
    CHECK(json_of(rs) == json_of(r1));
    rwg::kernels::set_active(current);
  }
}

TEST_CASE("degenerate law: every trial weight is zero") {
  const auto f = StructureFamily::spanning_tree(12);
  const ExperimentReport r = rwg::run_trials(f, Distribution::degenerate(), 25, 1, 1);
  CHECK(r.prediction == 0.0);
  for (const auto& row : r.rows) {
    CHECK(row.weight == 0.0);
    CHECK(row.ratio == 0.0);
  }
  CHECK(r.clean());
}

TEST_CASE("finite-n upper bound and variance at modest scale") {
  const auto f = StructureFamily::matching(50);
  const ExperimentReport r = rwg::run_trials(f, Distribution::gaussian(), 200, 11, 2);
  CHECK(r.violations_finite_n_upper == 0);
  CHECK(r.violations_ewn == 0);
  CHECK(r.variance <= 4.0 * 50.0 * 1.5);
  // every trial under (1 + 1/n) * prediction
  const double bound = (1.0 + 1.0 / 50.0) * r.prediction;
  for (const auto& row : r.rows) CHECK(row.weight <= bound);
}

TEST_CASE("finite-n upper bound over ten thousand cumulative trials") {
  // gaussian matchings at several scales; zero trials may ever exceed
  // (1 + 1/n) * n * sqrt(2 log n)
  const std::vector<std::pair<int, int>> plan = {{10, 3000}, {20, 3000}, {50, 2000}, {100, 2000}};
  for (const auto& [n, trials] : plan) {
    const ExperimentReport r =
        rwg::run_trials(StructureFamily::matching(n), Distribution::gaussian(), trials, 31, 2);
    CHECK(r.violations_finite_n_upper == 0);
  }
}

TEST_CASE("rademacher matching ratios never exceed one") {
  const auto f = StructureFamily::matching(40);
  const ExperimentReport r = rwg::run_trials(f, Distribution::rademacher(), 50, 13, 2);
  CHECK(r.prediction == 40.0);  // inverse rate is 1 for log n >= log 2
  for (const auto& row : r.rows) CHECK(row.ratio <= 1.0);
}

TEST_CASE("ratio table trends upward for gaussian matchings") {
  const auto rows = rwg::ratio_table(FamilyKind::Matching, GraphPattern{},
                                     Distribution::gaussian(), {25, 50, 100}, 60, 3, 2);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].ratio_mean <= rows[1].ratio_mean);
  CHECK(rows[1].ratio_mean <= rows[2].ratio_mean);
  for (const auto& row : rows) {
    CHECK(row.mean_weight <= row.ewn_bound + 3.0 * row.ratio_stderr * row.prediction);
    CHECK(row.max_weight <= row.finite_n_bound);
  }
}

TEST_CASE("concentration check") {
  const auto f = StructureFamily::matching(100);
  const ExperimentReport r = rwg::run_trials(f, Distribution::gaussian(), 200, 5, 2);
  const auto diag = rwg::concentration_check(r, 100);
  REQUIRE(diag.rows.size() == 3);
  CHECK(diag.rows[0].t == 10.0);
  CHECK(diag.rows[0].bound == doctest::Approx(2.0 * std::exp(-0.5)).epsilon(1e-12));
  CHECK_FALSE(diag.any_flagged);

  const ExperimentReport ru = rwg::run_trials(f, Distribution::uniform(), 10, 5, 1);
  CHECK_THROWS_AS(rwg::concentration_check(ru, 100), std::invalid_argument);
  const ExperimentReport rd =
      rwg::run_trials(StructureFamily::spanning_tree(10), Distribution::degenerate(), 5, 5, 1);
  CHECK_THROWS_AS(rwg::concentration_check(rd, 9), std::invalid_argument);
}

TEST_CASE("report round trips") {
  const auto f = StructureFamily::spanning_tree(20);
  const ExperimentReport r = rwg::run_trials(f, Distribution::uniform(), 3, 21, 1);

  const std::string csv_path = "roundtrip_test.csv";
  const std::string json_path = "roundtrip_test.json";
  rwg::write_report(r, csv_path, rwg::ReportFormat::Csv);
  rwg::write_report(r, json_path, rwg::ReportFormat::Json);

  // csv: header + exactly one data row per trial
  {
    std::ifstream in(csv_path);
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 4);
  }

  const ExperimentReport rc = rwg::read_report(csv_path, rwg::ReportFormat::Csv);
  REQUIRE(rc.rows.size() == 3);
  for (int t = 0; t < 3; ++t) {
    CHECK(rc.rows[t].weight == r.rows[t].weight);
    CHECK(rc.rows[t].ratio == r.rows[t].ratio);
  }

  const ExperimentReport rj = rwg::read_report(json_path, rwg::ReportFormat::Json);
  CHECK(rj.family == r.family);
  CHECK(rj.dist == r.dist);
  CHECK(rj.n == r.n);
  CHECK(rj.seed == r.seed);
  CHECK(rj.mean == r.mean);
  CHECK(rj.variance == r.variance);
  CHECK(rj.prediction == r.prediction);
  for (int t = 0; t < 3; ++t) CHECK(rj.rows[t].weight == r.rows[t].weight);

  // a tampered summary is caught on load
  {
    std::ifstream in(json_path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    const auto pos = text.find("\"mean\":");
    text.replace(pos, 8, "\"mean\":9");
    std::ofstream out(json_path, std::ios::binary);
    out << text;
  }
  CHECK_THROWS_AS(rwg::read_report(json_path, rwg::ReportFormat::Json), std::runtime_error);

  std::remove(csv_path.c_str());
  std::remove(json_path.c_str());
}

TEST_CASE("caps rejected before any work") {
  CHECK_THROWS_AS(
      rwg::run_trials(StructureFamily::hamilton_cycle(64), Distribution::gaussian(), 2, 1, 1),
      std::invalid_argument);
  CHECK_THROWS_AS(rwg::run_trials(StructureFamily::matching(10), Distribution::gaussian(), 0, 1, 1),
                  std::invalid_argument);
}
