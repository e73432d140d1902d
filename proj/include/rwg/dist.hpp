// SPDX-License-Identifier: Apache-2.0
//
// Catalog of symmetric edge-weight laws: samplers, exact upper tails,
// log-moment generating functions. The catalog is closed; each kind has
// closed-form tails so everything downstream stays exactly testable.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rwg {

enum class DistKind {
  Gaussian,    // N(0, sigma^2)
  Laplace,     // density e^{-|x|/b}/(2b)
  Uniform,     // uniform on [-a, a]
  Rademacher,  // +-1 with probability 1/2
  StepTail,    // discrete counterexample without regular upper tails
  Degenerate,  // point mass at 0; supported in the API, not in the CLI grammar
};

// Atom data for the step-tail law: values +-x[k] carry one-sided mass
// e^{-y[k-1]} - e^{-y[k]}; the last atom absorbs the remaining tail so the
// total mass is exactly 1. All y arithmetic stays in log space: e^{-y[k]}
// underflows from k = 4 on (y_k = 2^{k^2} by default) and the y values
// themselves are never exponentiated with a positive sign.
struct StepTailSpec {
  std::vector<double> x;  // strictly increasing, positive, size K >= 3
  std::vector<double> y;  // strictly increasing, y[0] = log 2, size K + 1

  static StepTailSpec defaults(int truncation = 12);
};

// Counter-based sampling stream. Values drawn through a stream never
// collide with instance edge weights: stream ids carry a high tag bit.
struct RngStream {
  std::uint64_t seed;
  std::uint64_t stream;
  std::uint64_t next = 0;

  explicit RngStream(std::uint64_t seed_, std::uint64_t stream_id = 0)
      : seed(seed_), stream(stream_id | (std::uint64_t{1} << 63)) {}
};

// Immutable after construction and safely shareable across workers;
// streams are per-worker values and are never shared.
class Distribution {
 public:
  static Distribution gaussian(double sigma = 1.0);
  static Distribution laplace(double scale = 1.0);
  static Distribution uniform(double half_width = 1.0);
  static Distribution rademacher();
  static Distribution step_tail(StepTailSpec spec);
  static Distribution step_tail(int truncation = 12);
  static Distribution degenerate();

  // CLI grammar: gaussian[:sigma] | laplace[:scale] | uniform[:a] |
  // rademacher | steptail[:K], case-insensitive.
  static Distribution parse(std::string_view spec);

  DistKind kind() const noexcept { return kind_; }
  double param() const noexcept { return param_; }
  const StepTailSpec& step_spec() const { return step_; }

  // P(X > t) for t >= 0; exact per kind.
  double tail(double t) const;
  // log P(X > t); -infinity where the tail vanishes. Exact in log space
  // for the step-tail law (returns -y_k directly).
  double log_tail(double t) const;
  // Lambda(s) = log E e^{sX}; +infinity outside the finiteness domain.
  double log_mgf(double s) const;
  double ess_sup() const;

  bool is_atomic() const noexcept {
    return kind_ == DistKind::Rademacher || kind_ == DistKind::StepTail;
  }
  // Positive atom locations in increasing order (atomic kinds only).
  std::span<const double> atoms() const { return atoms_; }

  // One variate; a pure function of the stream state.
  double sample(RngStream& stream) const;
  // out[i] = variate at (seed, stream, index0 + i); bit-reproducible.
  void fill(std::span<double> out, std::uint64_t seed, std::uint64_t stream,
            std::uint64_t index0) const;

  // Canonical spec string, parseable by parse().
  std::string spec_string() const;

 private:
  Distribution(DistKind kind, double param) : kind_(kind), param_(param) {}

  DistKind kind_;
  double param_ = 0.0;
  StepTailSpec step_;
  std::vector<double> atoms_;          // positive atom locations
  std::vector<double> atom_log_mass_;  // one-sided log-probabilities
  std::vector<double> atom_cum_mass_;  // one-sided cumulative masses (for sampling)
};

}  // namespace rwg
