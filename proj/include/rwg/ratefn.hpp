// SPDX-License-Identifier: Apache-2.0
//
// Numeric Legendre-transform engine: Lambda*, its generalized inverse,
// Chernoff bounds and the threshold sequence x_n. Evaluation is pure;
// RateFunction objects are freely shareable across workers.

#pragma once

#include <span>
#include <vector>

#include "rwg/dist.hpp"

namespace rwg {

class RateFunction {
 public:
  explicit RateFunction(Distribution source, double tolerance = 1e-10);

  const Distribution& source() const noexcept { return source_; }
  // ess sup of the law; Lambda*(t) = +infinity for every t beyond it.
  double domain_cap() const noexcept { return domain_cap_; }

  // Lambda*(t) = sup_s { st - Lambda(s) }. Uses the closed form where the
  // kind admits one (Gaussian, Rademacher), the numeric engine otherwise.
  // Negative t is folded by evenness.
  double legendre(double t) const;

  // The numeric conjugation engine, regardless of kind. The closed forms
  // are cross-checked against this path in the tests; this is the contract.
  double legendre_generic(double t) const;

  // Generalized inverse inf{ s >= 0 : Lambda*(s) >= y }; returns
  // min(result, domain_cap), and 0 at y = 0.
  double rate_inverse(double y) const;

  // exp(-Lambda*(t)), the Chernoff upper bound on P(X > t).
  double chernoff_bound(double t) const;

  // exp(-k Lambda*(t)), the bound on P(X_1 + ... + X_k > k t).
  double sum_bound(long long k, double t) const;

 private:
  double conjugate(double t) const;

  Distribution source_;
  double tolerance_;
  double domain_cap_;
};

// x_n = inf{ t > 0 : P(X > t) <= omega * n^{-alpha} }. Exact jump handling
// for atomic laws (returns the atom location); bisection on the closed-form
// tail otherwise. Rejects the degenerate probability omega * n^{-alpha} >= 1/2.
double threshold_xn(const Distribution& d, double alpha, double omega, long long n);

// Tail-regularity diagnostic r(t) = -log P(X > t) / Lambda*(t), evaluated in
// log space. Grid points must lie strictly inside (0, ess sup).
struct RegularityPoint {
  double t;
  double r;
};
std::vector<RegularityPoint> regularity_profile(const Distribution& d,
                                                std::span<const double> grid);

}  // namespace rwg
