// SPDX-License-Identifier: Apache-2.0

#include "rwg/ratefn.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rwg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kTernaryIters = 200;
constexpr int kBisectIters = 120;

// Binary-entropy form of the Rademacher rate function on [0, 1].
double rademacher_rate(double t) {
  if (t > 1.0) return kInf;
  if (t == 1.0) return std::log(2.0);
  if (t == 0.0) return 0.0;
  return 0.5 * (1.0 + t) * std::log1p(t) + 0.5 * (1.0 - t) * std::log1p(-t);
}

}  // namespace

RateFunction::RateFunction(Distribution source, double tolerance)
    : source_(std::move(source)), tolerance_(tolerance), domain_cap_(source_.ess_sup()) {}

double RateFunction::conjugate(double t) const {
  // Concave objective g(s) = s t - Lambda(s) on s >= 0. Expand a bracket by
  // doubling until the objective stops improving or Lambda turns infinite,
  // then ternary-search the bracket.
  const auto g = [&](double s) { return s * t - source_.log_mgf(s); };

  const double s_cap = 1e280 / std::max(t, 1.0);  // keeps s*t clear of overflow
  double lo = 0.0;
  double hi = 1.0;
  double ghi = g(hi);
  if (std::isinf(ghi)) {
    // Lambda already infinite at s = 1: bisect the finiteness boundary and
    // search just inside it.
    double flo = 0.0, fhi = 1.0;
    for (int i = 0; i < kBisectIters; ++i) {
      const double mid = 0.5 * (flo + fhi);
      if (std::isinf(source_.log_mgf(mid))) {
        fhi = mid;
      } else {
        flo = mid;
      }
    }
    hi = flo * (1.0 - 1e-12);
  } else {
    while (hi < s_cap) {
      const double next = 2.0 * hi;
      const double gnext = g(next);
      if (std::isinf(gnext)) {
        // boundary between hi and next
        double flo = hi, fhi = next;
        for (int i = 0; i < kBisectIters; ++i) {
          const double mid = 0.5 * (flo + fhi);
          if (std::isinf(source_.log_mgf(mid))) {
            fhi = mid;
          } else {
            flo = mid;
          }
        }
        hi = flo * (1.0 - 1e-12);
        break;
      }
      if (gnext <= ghi) {
        hi = next;  // slope changed sign inside (hi/2, next); bracket closed
        break;
      }
      hi = next;
      ghi = gnext;
    }
  }

  for (int i = 0; i < kTernaryIters && hi - lo > tolerance_ * (1.0 + hi); ++i) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (g(m1) < g(m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  const double best = g(0.5 * (lo + hi));
  return best > 0.0 ? best : 0.0;  // Lambda*(t) >= 0 since g(0) = 0
}

double RateFunction::legendre_generic(double t) const {
  t = std::fabs(t);
  if (t == 0.0) return 0.0;
  if (t > domain_cap_) return kInf;
  if (source_.kind() == DistKind::Degenerate) return kInf;  // off 0
  return conjugate(t);
}

double RateFunction::legendre(double t) const {
  t = std::fabs(t);
  if (t == 0.0) return 0.0;
  if (t > domain_cap_) return kInf;
  switch (source_.kind()) {
    case DistKind::Gaussian: {
      const double z = t / source_.param();
      return 0.5 * z * z;
    }
    case DistKind::Rademacher:
      return rademacher_rate(t);
    case DistKind::Degenerate:
      return kInf;
    default:
      return conjugate(t);
  }
}

double RateFunction::rate_inverse(double y) const {
  if (!(y >= 0.0)) throw std::invalid_argument("rate_inverse requires y >= 0");
  if (y == 0.0) return 0.0;
  if (source_.kind() == DistKind::Degenerate) return 0.0;

  double hi = 1.0;
  while (hi < domain_cap_ && legendre(hi) < y) hi *= 2.0;
  hi = std::min(hi, domain_cap_);
  if (legendre(hi) < y) {
    // bounded law with sup Lambda* below y: the inverse is the domain cap
    return domain_cap_;
  }
  double lo = 0.0;
  for (int i = 0; i < kBisectIters; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (legendre(mid) >= y) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double RateFunction::chernoff_bound(double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("chernoff_bound requires t > 0");
  const double rate = legendre(t);
  return std::isinf(rate) ? 0.0 : std::exp(-rate);
}

double RateFunction::sum_bound(long long k, double t) const {
  if (k < 1) throw std::invalid_argument("sum_bound requires k >= 1");
  if (!(t > 0.0)) throw std::invalid_argument("sum_bound requires t > 0");
  const double rate = legendre(t);
  return std::isinf(rate) ? 0.0 : std::exp(-static_cast<double>(k) * rate);
}

double threshold_xn(const Distribution& d, double alpha, double omega, long long n) {
  if (!(alpha > 0.0)) throw std::invalid_argument("threshold_xn requires alpha > 0");
  if (!(omega >= 1.0)) throw std::invalid_argument("threshold_xn requires omega >= 1");
  if (n < 2) throw std::invalid_argument("threshold_xn requires n >= 2");
  const double p = omega * std::pow(static_cast<double>(n), -alpha);
  if (!(p < 0.5)) {
    throw std::invalid_argument("degenerate probability: omega * n^-alpha must be below 1/2");
  }

  double x;
  if (d.kind() == DistKind::Degenerate) {
    x = 0.0;
  } else if (d.is_atomic()) {
    // tail is a step function; the infimum is the first atom whose tail
    // value drops to p or below
    x = d.atoms().back();
    for (const double a : d.atoms()) {
      if (d.tail(a) <= p) {
        x = a;
        break;
      }
    }
  } else {
    double hi = d.ess_sup();
    if (std::isinf(hi)) {
      hi = 1.0;
      while (d.tail(hi) > p) hi *= 2.0;
    }
    double lo = 0.0;
    for (int i = 0; i < kBisectIters; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (d.tail(mid) <= p) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    x = hi;
  }

  // Chernoff forces x_n <= rate_inverse(alpha log n); kept as a live
  // postcondition so numeric drift cannot pass silently.
  const double inv = RateFunction(d).rate_inverse(alpha * std::log(static_cast<double>(n)));
  if (x > inv * (1.0 + 1e-9) + 1e-12) {
    throw std::logic_error("threshold_xn postcondition violated: x_n exceeds rate_inverse");
  }
  return x;
}

std::vector<RegularityPoint> regularity_profile(const Distribution& d,
                                                std::span<const double> grid) {
  const RateFunction rate(d);
  std::vector<RegularityPoint> out;
  out.reserve(grid.size());
  for (const double t : grid) {
    if (!(t > 0.0) || t >= d.ess_sup()) {
      throw std::invalid_argument("regularity grid points must lie inside (0, ess sup)");
    }
    const double rate_t = rate.legendre(t);
    if (!(rate_t > 0.0)) {
      throw std::invalid_argument("regularity profile undefined where the rate vanishes");
    }
    out.push_back({t, -d.log_tail(t) / rate_t});
  }
  return out;
}

}  // namespace rwg
