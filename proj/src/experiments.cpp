// SPDX-License-Identifier: Apache-2.0

#include "rwg/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "rwg/instance.hpp"
#include "rwg/ratefn.hpp"
#include "rwg/solvers.hpp"

namespace rwg {

namespace {

[[noreturn]] void reject(const std::string& what) { throw std::invalid_argument(what); }

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void precheck_caps(const StructureFamily& f) {
  if ((f.kind == FamilyKind::HamiltonCycle || f.kind == FamilyKind::PathOneTwo) &&
      f.n > kSubsetDpCap) {
    reject("family " + f.display_name() + " at n = " + std::to_string(f.n) +
           " exceeds the exact solver cap " + std::to_string(kSubsetDpCap));
  }
  if (f.kind == FamilyKind::CopyOf && (f.pattern.v > 6 || f.n > 64)) {
    reject("copy family exceeds the exact solver caps (v <= 6, n <= 64)");
  }
}

void summarize(ExperimentReport& r) {
  const int t = r.trials;
  double sum = 0.0;
  r.min = r.rows.empty() ? 0.0 : r.rows.front().weight;
  r.max = r.min;
  for (const auto& row : r.rows) {
    sum += row.weight;
    r.min = std::min(r.min, row.weight);
    r.max = std::max(r.max, row.weight);
  }
  r.mean = sum / t;
  double ss = 0.0;
  for (const auto& row : r.rows) {
    const double d = row.weight - r.mean;
    ss += d * d;
  }
  r.variance = (t > 1) ? ss / (t - 1) : 0.0;

  double rsum = 0.0;
  for (const auto& row : r.rows) rsum += row.ratio;
  r.ratio_mean = rsum / t;
  double rss = 0.0;
  for (const auto& row : r.rows) {
    const double d = row.ratio - r.ratio_mean;
    rss += d * d;
  }
  const double rvar = (t > 1) ? rss / (t - 1) : 0.0;
  r.ratio_stderr = std::sqrt(rvar / t);

  const double finite_bound = (1.0 + 1.0 / r.n) * r.prediction;
  r.violations_finite_n_upper = 0;
  for (const auto& row : r.rows) {
    if (row.weight > finite_bound) ++r.violations_finite_n_upper;
  }
  const double weight_stderr = std::sqrt(r.variance / t);
  r.violations_ewn = (r.mean > r.ewn_bound + 3.0 * weight_stderr) ? 1 : 0;
}

}  // namespace

ExperimentReport run_trials(const StructureFamily& f, const Distribution& d, int trials,
                            std::uint64_t seed, int workers) {
  if (trials < 1) reject("run_trials needs at least one trial");
  precheck_caps(f);

  ExperimentReport report;
  report.family = f.display_name();
  report.dist = d.spec_string();
  report.n = f.n;
  report.trials = trials;
  report.seed = seed;
  report.rows.resize(trials);

  const RateFunction rate(d);
  report.prediction = predict(f, rate);
  report.ewn_bound = expectation_bound(f, rate);
  const double prediction = report.prediction;

  const auto solve_range = [&](int lo, int hi) {
    for (int t = lo; t < hi; ++t) {
      const WeightedInstance inst = gen_instance(f, d, seed, static_cast<std::uint64_t>(t));
      const Solution sol = solve_family(f, inst);
      validate_solution(f, inst, sol);
      report.rows[t].weight = sol.weight;
      report.rows[t].ratio = prediction > 0.0 ? sol.weight / prediction : 0.0;
    }
  };

  workers = std::max(1, workers);
  if (workers == 1 || trials == 1) {
    solve_range(0, trials);
  } else {
    // static block partition; rows are indexed by trial so the outcome is
    // identical for every worker count
    const int used = std::min(workers, trials);
    std::vector<std::thread> pool;
    pool.reserve(used);
    const int chunk = (trials + used - 1) / used;
    for (int w = 0; w < used; ++w) {
      const int lo = w * chunk;
      const int hi = std::min(trials, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(solve_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  summarize(report);
  return report;
}

std::vector<RatioRow> ratio_table(FamilyKind kind, const GraphPattern& pattern,
                                  const Distribution& d, const std::vector<int>& n_list,
                                  int trials, std::uint64_t seed, int workers) {
  std::vector<RatioRow> rows;
  for (const int n : n_list) {
    const StructureFamily f = [&] {
      switch (kind) {
        case FamilyKind::Matching:
          return StructureFamily::matching(n);
        case FamilyKind::SpanningTree:
          return StructureFamily::spanning_tree(n);
        case FamilyKind::HamiltonCycle:
          return StructureFamily::hamilton_cycle(n);
        case FamilyKind::PathOneTwo:
          return StructureFamily::path_one_two(n);
        case FamilyKind::CopyOf:
          return StructureFamily::copy_of(pattern, n);
      }
      reject("unknown family kind");
    }();
    const ExperimentReport r = run_trials(f, d, trials, seed, workers);
    RatioRow row;
    row.n = n;
    row.mean_weight = r.mean;
    row.prediction = r.prediction;
    row.ratio_mean = r.ratio_mean;
    row.ratio_stderr = r.ratio_stderr;
    row.ewn_bound = r.ewn_bound;
    row.max_weight = r.max;
    row.finite_n_bound = (1.0 + 1.0 / n) * r.prediction;
    rows.push_back(row);
  }
  return rows;
}

ConcentrationDiagnostic concentration_check(const ExperimentReport& report, long long l) {
  const Distribution d = Distribution::parse(report.dist);
  if (d.kind() != DistKind::Gaussian) {
    reject("concentration_check applies to Gaussian reports only");
  }
  if (l < 1) reject("concentration_check needs l >= 1");

  ConcentrationDiagnostic diag;
  diag.l = l;
  const double sqrt_l = std::sqrt(static_cast<double>(l));
  for (int mult = 1; mult <= 3; ++mult) {
    ConcentrationRow row;
    row.t = mult * sqrt_l;
    row.bound = 2.0 * std::exp(-row.t * row.t / (2.0 * static_cast<double>(l)));
    int hits = 0;
    for (const auto& trial : report.rows) {
      if (std::fabs(trial.weight - report.mean) >= row.t) ++hits;
    }
    row.frequency = static_cast<double>(hits) / report.trials;
    const double p = std::min(row.bound, 1.0);
    row.stderr_3 = 3.0 * std::sqrt(std::max(0.0, p * (1.0 - p)) / report.trials);
    row.flagged = row.frequency > row.bound + row.stderr_3;
    diag.any_flagged = diag.any_flagged || row.flagged;
    diag.rows.push_back(row);
  }
  return diag;
}

void write_report_csv(const ExperimentReport& report, std::ostream& out) {
  out << "trial,weight,ratio,found_certificate,certified_bound\n";
  for (int t = 0; t < report.trials; ++t) {
    const auto& row = report.rows[t];
    out << t << ',' << fmt17(row.weight) << ',' << fmt17(row.ratio) << ',';
    if (row.found_certificate.has_value()) out << (*row.found_certificate ? 1 : 0);
    out << ',';
    if (row.certified_bound.has_value()) out << fmt17(*row.certified_bound);
    out << '\n';
  }
}

void write_report_json(const ExperimentReport& report, std::ostream& out) {
  out << "{\"family\":\"" << report.family << "\",\"dist\":\"" << report.dist << "\""
      << ",\"n\":" << report.n << ",\"trials\":" << report.trials << ",\"seed\":" << report.seed
      << ",\"mean\":" << fmt17(report.mean) << ",\"variance\":" << fmt17(report.variance)
      << ",\"min\":" << fmt17(report.min) << ",\"max\":" << fmt17(report.max)
      << ",\"prediction\":" << fmt17(report.prediction)
      << ",\"ewn_bound\":" << fmt17(report.ewn_bound)
      << ",\"ratio_mean\":" << fmt17(report.ratio_mean)
      << ",\"ratio_stderr\":" << fmt17(report.ratio_stderr) << ",\"violations\":{"
      << "\"finite_n_upper\":" << report.violations_finite_n_upper
      << ",\"ewn\":" << report.violations_ewn << "}"
      << ",\"weights\":[";
  for (int t = 0; t < report.trials; ++t) {
    if (t) out << ',';
    out << fmt17(report.rows[t].weight);
  }
  out << "]}\n";
}

void write_report(const ExperimentReport& report, const std::string& path, ReportFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) reject("cannot open '" + path + "' for writing");
  if (format == ReportFormat::Csv) {
    write_report_csv(report, out);
  } else {
    write_report_json(report, out);
  }
  out.flush();
  if (!out) reject("write to '" + path + "' failed");
}

namespace {

// Rebuild the derived statistics from the rows and require an exact match
// with the embedded summary; %.17g round-trips doubles, so equality here is
// bitwise.
void recheck_summary(ExperimentReport& loaded, const ExperimentReport& embedded) {
  loaded.prediction = embedded.prediction;
  loaded.ewn_bound = embedded.ewn_bound;
  summarize(loaded);
  const auto same = [](double a, double b) {
    return a == b || (std::isnan(a) && std::isnan(b));
  };
  if (!same(loaded.mean, embedded.mean) || !same(loaded.variance, embedded.variance) ||
      !same(loaded.min, embedded.min) || !same(loaded.max, embedded.max) ||
      !same(loaded.ratio_mean, embedded.ratio_mean) ||
      !same(loaded.ratio_stderr, embedded.ratio_stderr) ||
      loaded.violations_finite_n_upper != embedded.violations_finite_n_upper ||
      loaded.violations_ewn != embedded.violations_ewn) {
    throw std::runtime_error("report summary does not recompute from its rows");
  }
}

}  // namespace

ExperimentReport read_report(const std::string& path, ReportFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) reject("cannot open '" + path + "' for reading");
  if (format == ReportFormat::Csv) {
    // the CSV carries rows only; callers get rows without summary context
    ExperimentReport report;
    std::string line;
    if (!std::getline(in, line) || line != "trial,weight,ratio,found_certificate,certified_bound") {
      throw std::runtime_error("unexpected CSV header in '" + path + "'");
    }
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::stringstream ss(line);
      std::string field;
      TrialRecord row;
      std::getline(ss, field, ',');  // trial index; rows are kept in order
      std::getline(ss, field, ',');
      row.weight = std::strtod(field.c_str(), nullptr);
      std::getline(ss, field, ',');
      row.ratio = std::strtod(field.c_str(), nullptr);
      std::getline(ss, field, ',');
      if (!field.empty()) row.found_certificate = (field != "0");
      std::getline(ss, field, ',');
      if (!field.empty()) row.certified_bound = std::strtod(field.c_str(), nullptr);
      report.rows.push_back(row);
    }
    report.trials = static_cast<int>(report.rows.size());
    return report;
  }

  nlohmann::json j;
  in >> j;
  ExperimentReport report;
  report.family = j.at("family").get<std::string>();
  report.dist = j.at("dist").get<std::string>();
  report.n = j.at("n").get<int>();
  report.trials = j.at("trials").get<int>();
  report.seed = j.at("seed").get<std::uint64_t>();
  report.prediction = j.at("prediction").get<double>();
  report.ewn_bound = j.at("ewn_bound").get<double>();
  if (j.at("weights").size() != static_cast<std::size_t>(report.trials)) {
    throw std::runtime_error("report row count differs from its trial count");
  }
  for (const auto& w : j.at("weights")) {
    TrialRecord row;
    row.weight = w.get<double>();
    row.ratio = report.prediction > 0.0 ? row.weight / report.prediction : 0.0;
    report.rows.push_back(row);
  }
  ExperimentReport embedded;
  embedded.mean = j.at("mean").get<double>();
  embedded.variance = j.at("variance").get<double>();
  embedded.min = j.at("min").get<double>();
  embedded.max = j.at("max").get<double>();
  embedded.prediction = report.prediction;
  embedded.ewn_bound = report.ewn_bound;
  embedded.ratio_mean = j.at("ratio_mean").get<double>();
  embedded.ratio_stderr = j.at("ratio_stderr").get<double>();
  embedded.violations_finite_n_upper = j.at("violations").at("finite_n_upper").get<int>();
  embedded.violations_ewn = j.at("violations").at("ewn").get<int>();
  recheck_summary(report, embedded);
  return report;
}

}  // namespace rwg
