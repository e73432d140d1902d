// SPDX-License-Identifier: Apache-2.0
//
// rwg: extremal weights of random weighted graphs.
//
// Subcommands: ratefn, check-tails, predict, solve, certify, simulate,
// table. All randomness flows from the explicit --seed; there is no
// wall-clock seeding anywhere. Exit codes: 0 success / no violations,
// 1 usage error, 2 domain error, 3 bound violations.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rwg/experiments.hpp"
#include "rwg/instance.hpp"
#include "rwg/kernels.hpp"
#include "rwg/pruning.hpp"
#include "rwg/ratefn.hpp"
#include "rwg/solvers.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitViolation = 3;

std::string fmt(double v, int digits = 15) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

rwg::FamilyKind parse_family_kind(const std::string& name) {
  if (name == "matching") return rwg::FamilyKind::Matching;
  if (name == "tree") return rwg::FamilyKind::SpanningTree;
  if (name == "hamcycle") return rwg::FamilyKind::HamiltonCycle;
  if (name == "path") return rwg::FamilyKind::PathOneTwo;
  if (name == "copy") return rwg::FamilyKind::CopyOf;
  throw std::invalid_argument("unknown family '" + name +
                              "' (matching|tree|hamcycle|path|copy)");
}

rwg::GraphPattern parse_pattern_arg(const std::string& name, const std::string& pattern) {
  if (name != "copy") return {};
  if (pattern.empty()) throw std::invalid_argument("family 'copy' needs --pattern");
  return rwg::GraphPattern::parse(pattern);
}

rwg::StructureFamily make_family(const std::string& name, int n, const std::string& pattern) {
  using rwg::StructureFamily;
  switch (parse_family_kind(name)) {
    case rwg::FamilyKind::Matching:
      return StructureFamily::matching(n);
    case rwg::FamilyKind::SpanningTree:
      return StructureFamily::spanning_tree(n);
    case rwg::FamilyKind::HamiltonCycle:
      return StructureFamily::hamilton_cycle(n);
    case rwg::FamilyKind::PathOneTwo:
      return StructureFamily::path_one_two(n);
    case rwg::FamilyKind::CopyOf:
      return StructureFamily::copy_of(parse_pattern_arg(name, pattern), n);
  }
  throw std::invalid_argument("unreachable");
}

struct GridSpec {
  double lo = 0.0, hi = 0.0, step = 0.0;
};

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  char c1 = 0, c2 = 0;
  std::stringstream ss(text);
  if (!(ss >> g.lo >> c1 >> g.hi >> c2 >> g.step) || c1 != ':' || c2 != ':' || g.step <= 0.0) {
    throw std::invalid_argument("grid must be a:b:step with step > 0");
  }
  return g;
}

std::ostream& open_sink(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open '" + path + "' for writing");
  return file;
}

std::string edges_json(const std::vector<std::pair<int, int>>& edges) {
  std::string out = "[";
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i) out += ',';
    out += '[' + std::to_string(edges[i].first + 1) + ',' +
           std::to_string(edges[i].second + 1) + ']';
  }
  return out + ']';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extremal weights of random weighted graphs"};
  app.require_subcommand(1);

  std::string kernels_backend;
  app.add_option("--kernels", kernels_backend, "kernel backend override (scalar|avx2)");

  // shared option storage
  std::string dist_spec = "gaussian";
  std::string family_name;
  std::string pattern_text;
  std::string grid_text;
  std::string out_path;
  std::string json_path;
  std::string n_list_text;
  int n = 0;
  int trials = 100;
  int workers = 1;
  std::uint64_t seed = 0;
  double eval_t = 0.0, inverse_y = 0.0, delta = 0.0;
  std::uint64_t trial_index = 0;

  auto* c_ratefn = app.add_subcommand("ratefn", "evaluate the rate function or its inverse");
  c_ratefn->add_option("--dist", dist_spec, "distribution spec")->required();
  auto* opt_eval = c_ratefn->add_option("--eval", eval_t, "evaluate Lambda* at t");
  auto* opt_inv = c_ratefn->add_option("--inverse", inverse_y, "generalized inverse at y");
  opt_eval->excludes(opt_inv);

  auto* c_tails = app.add_subcommand("check-tails", "tail-regularity profile r(t) as CSV");
  c_tails->add_option("--dist", dist_spec, "distribution spec")->required();
  c_tails->add_option("--grid", grid_text, "evaluation grid a:b:step")->required();
  c_tails->add_option("--out", out_path, "write CSV here instead of stdout");

  auto* c_predict = app.add_subcommand("predict", "leading-order optimal weight");
  c_predict->add_option("--family", family_name)->required();
  c_predict->add_option("--dist", dist_spec)->required();
  c_predict->add_option("--n", n)->required();
  c_predict->add_option("--pattern", pattern_text, "pattern for family 'copy'");

  auto* c_solve = app.add_subcommand("solve", "solve one seeded instance exactly");
  c_solve->add_option("--family", family_name)->required();
  c_solve->add_option("--dist", dist_spec)->required();
  c_solve->add_option("--n", n)->required();
  c_solve->add_option("--seed", seed)->required();
  c_solve->add_option("--trial", trial_index, "trial index within the seed (default 0)");
  c_solve->add_option("--pattern", pattern_text);

  auto* c_certify = app.add_subcommand("certify", "threshold-pruning lower-bound certificates");
  c_certify->add_option("--family", family_name)->required();
  c_certify->add_option("--dist", dist_spec)->required();
  c_certify->add_option("--n", n)->required();
  c_certify->add_option("--delta", delta)->required();
  c_certify->add_option("--seed", seed)->required();
  c_certify->add_option("--trials", trials)->required();
  c_certify->add_option("--pattern", pattern_text);
  c_certify->add_option("--workers", workers);
  c_certify->add_option("--out", out_path, "write CSV here instead of stdout");

  auto* c_sim = app.add_subcommand("simulate", "Monte Carlo trials against the predictions");
  c_sim->add_option("--family", family_name)->required();
  c_sim->add_option("--dist", dist_spec)->required();
  c_sim->add_option("--n", n)->required();
  c_sim->add_option("--trials", trials)->required();
  c_sim->add_option("--seed", seed)->required();
  c_sim->add_option("--pattern", pattern_text);
  c_sim->add_option("--workers", workers);
  c_sim->add_option("--out", out_path, "per-trial CSV path");
  c_sim->add_option("--json", json_path, "summary JSON path");

  auto* c_table = app.add_subcommand("table", "ratio table over a list of n");
  c_table->add_option("--family", family_name)->required();
  c_table->add_option("--dist", dist_spec)->required();
  c_table->add_option("--n-list", n_list_text, "comma separated, e.g. 25,50,100")->required();
  c_table->add_option("--trials", trials)->required();
  c_table->add_option("--seed", seed)->required();
  c_table->add_option("--pattern", pattern_text);
  c_table->add_option("--workers", workers);
  c_table->add_option("--out", out_path, "write CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!kernels_backend.empty() && !rwg::kernels::set_active(kernels_backend)) {
      throw std::invalid_argument("kernel backend '" + kernels_backend + "' is unavailable");
    }

    if (c_ratefn->parsed()) {
      const rwg::RateFunction rate(rwg::Distribution::parse(dist_spec));
      if (opt_eval->count()) {
        std::cout << fmt(rate.legendre(eval_t)) << "\n";
      } else if (opt_inv->count()) {
        std::cout << fmt(rate.rate_inverse(inverse_y)) << "\n";
      } else {
        throw std::invalid_argument("ratefn needs --eval or --inverse");
      }
      return kExitOk;
    }

    if (c_tails->parsed()) {
      const rwg::Distribution d = rwg::Distribution::parse(dist_spec);
      const GridSpec g = parse_grid(grid_text);
      std::vector<double> grid;
      for (double t = g.lo; t <= g.hi + 1e-12; t += g.step) grid.push_back(t);
      const auto profile = rwg::regularity_profile(d, grid);
      std::ofstream file;
      std::ostream& out = open_sink(file, out_path);
      out << "t,r\n";
      for (const auto& pt : profile) out << fmt(pt.t, 17) << ',' << fmt(pt.r, 17) << '\n';
      return kExitOk;
    }

    if (c_predict->parsed()) {
      const auto family = make_family(family_name, n, pattern_text);
      const rwg::RateFunction rate(rwg::Distribution::parse(dist_spec));
      std::cout << fmt(rwg::predict(family, rate)) << "\n";
      return kExitOk;
    }

    if (c_solve->parsed()) {
      const auto family = make_family(family_name, n, pattern_text);
      const rwg::Distribution d = rwg::Distribution::parse(dist_spec);
      const rwg::WeightedInstance inst = rwg::gen_instance(family, d, seed, trial_index);
      const rwg::Solution sol = rwg::solve_family(family, inst);
      rwg::validate_solution(family, inst, sol);
      std::cout << "{\"family\":\"" << family.display_name() << "\",\"dist\":\""
                << d.spec_string() << "\",\"n\":" << n << ",\"seed\":" << seed
                << ",\"trial\":" << trial_index << ",\"weight\":" << fmt(sol.weight, 17)
                << ",\"edges\":" << edges_json(sol.edges) << "}\n";
      return kExitOk;
    }

    if (c_certify->parsed()) {
      const auto family = make_family(family_name, n, pattern_text);
      const rwg::Distribution d = rwg::Distribution::parse(dist_spec);
      const rwg::CertifyRun run = rwg::certify_trials(family, d, delta, trials, seed, workers);
      std::ofstream file;
      std::ostream& out = open_sink(file, out_path);
      out << "trial,level,found,certified_bound,exact_optimum,ratio_to_prediction\n";
      for (const auto& row : run.rows) {
        out << row.trial << ',' << fmt(row.level, 17) << ',' << (row.found ? 1 : 0) << ',';
        if (row.certified_bound) out << fmt(*row.certified_bound, 17);
        out << ',';
        if (row.exact_optimum) out << fmt(*row.exact_optimum, 17);
        out << ',';
        if (row.ratio_to_prediction) out << fmt(*row.ratio_to_prediction, 17);
        out << '\n';
      }
      return kExitOk;
    }

    if (c_sim->parsed()) {
      const auto family = make_family(family_name, n, pattern_text);
      const rwg::Distribution d = rwg::Distribution::parse(dist_spec);
      const rwg::ExperimentReport report = rwg::run_trials(family, d, trials, seed, workers);
      if (!out_path.empty()) rwg::write_report(report, out_path, rwg::ReportFormat::Csv);
      if (!json_path.empty()) rwg::write_report(report, json_path, rwg::ReportFormat::Json);
      rwg::write_report_json(report, std::cout);
      return report.clean() ? kExitOk : kExitViolation;
    }

    if (c_table->parsed()) {
      const rwg::FamilyKind kind = parse_family_kind(family_name);
      const rwg::GraphPattern pattern = parse_pattern_arg(family_name, pattern_text);
      std::vector<int> n_list;
      std::stringstream ss(n_list_text);
      std::string item;
      while (std::getline(ss, item, ',')) n_list.push_back(std::stoi(item));
      if (n_list.empty()) throw std::invalid_argument("--n-list is empty");
      const rwg::Distribution d = rwg::Distribution::parse(dist_spec);
      const auto rows = rwg::ratio_table(kind, pattern, d, n_list, trials, seed, workers);
      std::ofstream file;
      std::ostream& out = open_sink(file, out_path);
      out << "n,mean_weight,prediction,ratio_mean,ratio_stderr,ewn_bound,max_weight,"
             "finite_n_bound\n";
      bool violated = false;
      for (const auto& row : rows) {
        out << row.n << ',' << fmt(row.mean_weight, 17) << ',' << fmt(row.prediction, 17) << ','
            << fmt(row.ratio_mean, 17) << ',' << fmt(row.ratio_stderr, 17) << ','
            << fmt(row.ewn_bound, 17) << ',' << fmt(row.max_weight, 17) << ','
            << fmt(row.finite_n_bound, 17) << '\n';
        violated = violated || row.max_weight > row.finite_n_bound;
      }
      return violated ? kExitViolation : kExitOk;
    }

    throw std::invalid_argument("no subcommand selected");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}
