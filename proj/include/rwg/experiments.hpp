// SPDX-License-Identifier: Apache-2.0
//
// Seeded Monte Carlo harness: generate instances, solve exactly, compare
// against the closed-form prediction, the expectation bound, and the
// concentration claims. Per-trial values are a pure function of
// (seed, trial); aggregation runs in ascending trial order, so reports are
// byte-identical for any worker count.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rwg/dist.hpp"
#include "rwg/structures.hpp"

namespace rwg {

struct TrialRecord {
  double weight = 0.0;
  double ratio = 0.0;  // weight / prediction (0 for the degenerate law)
  std::optional<bool> found_certificate;
  std::optional<double> certified_bound;
};

struct ExperimentReport {
  std::string family;
  std::string dist;
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;

  std::vector<TrialRecord> rows;

  double mean = 0.0;
  double variance = 0.0;  // sample variance (n-1 denominator)
  double min = 0.0;
  double max = 0.0;
  double prediction = 0.0;
  double ewn_bound = 0.0;
  double ratio_mean = 0.0;
  double ratio_stderr = 0.0;
  int violations_finite_n_upper = 0;  // trials above (1 + 1/n) * prediction
  int violations_ewn = 0;             // 1 when mean > ewn_bound + 3 stderr

  bool clean() const { return violations_finite_n_upper == 0 && violations_ewn == 0; }
};

// Solve `trials` independent instances of the family and aggregate.
// Rejects up front when n is beyond the exact solver's cap.
ExperimentReport run_trials(const StructureFamily& f, const Distribution& d, int trials,
                            std::uint64_t seed, int workers = 1);

struct RatioRow {
  int n = 0;
  double mean_weight = 0.0;
  double prediction = 0.0;
  double ratio_mean = 0.0;
  double ratio_stderr = 0.0;
  double ewn_bound = 0.0;
  double max_weight = 0.0;
  double finite_n_bound = 0.0;  // (1 + 1/n) * prediction
};

// One run_trials row per n; the family is rebuilt at each scale.
std::vector<RatioRow> ratio_table(FamilyKind kind, const GraphPattern& pattern,
                                  const Distribution& d, const std::vector<int>& n_list,
                                  int trials, std::uint64_t seed, int workers = 1);

struct ConcentrationRow {
  double t = 0.0;
  double bound = 0.0;      // 2 e^{-t^2 / (2 l)}
  double frequency = 0.0;  // empirical P(|W - mean| >= t)
  double stderr_3 = 0.0;   // 3 binomial standard errors at the bound
  bool flagged = false;
};

struct ConcentrationDiagnostic {
  long long l = 0;
  std::vector<ConcentrationRow> rows;
  bool any_flagged = false;
};

// Gaussian-only check of the maximum-of-Gaussian-process concentration at
// t in {sqrt(l), 2 sqrt(l), 3 sqrt(l)}.
ConcentrationDiagnostic concentration_check(const ExperimentReport& report, long long l);

enum class ReportFormat { Csv, Json };

// 17-significant-digit decimal formatting throughout; write/read round-trips
// reproduce the report exactly and re-derive the summary from the rows.
void write_report(const ExperimentReport& report, const std::string& path, ReportFormat format);
ExperimentReport read_report(const std::string& path, ReportFormat format);

void write_report_csv(const ExperimentReport& report, std::ostream& out);
void write_report_json(const ExperimentReport& report, std::ostream& out);

}  // namespace rwg
