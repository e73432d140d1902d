// SPDX-License-Identifier: Apache-2.0
//
// Scalar reference backend. This is the contract implementation: the SIMD
// backends must reproduce these results bit for bit. Compiled with
// -ffp-contract=off so the written operation order is the executed one.

#include "rwg/kernels.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "kernel_constants.hpp"

namespace rwg::kernels {

using namespace detail;

PhiloxBlock philox4x32(std::uint32_t c0, std::uint32_t c1, std::uint32_t c2,
                       std::uint32_t c3, std::uint32_t k0, std::uint32_t k1) noexcept {
  std::uint32_t x0 = c0, x1 = c1, x2 = c2, x3 = c3;
  for (int r = 0; r < kPhiloxRounds; ++r) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * x0;
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * x2;
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    const std::uint32_t n0 = hi1 ^ x1 ^ k0;
    const std::uint32_t n1 = lo1;
    const std::uint32_t n2 = hi0 ^ x3 ^ k1;
    const std::uint32_t n3 = lo0;
    x0 = n0;
    x1 = n1;
    x2 = n2;
    x3 = n3;
    k0 += kPhiloxW0;
    k1 += kPhiloxW1;
  }
  return PhiloxBlock{{x0, x1, x2, x3}};
}

std::uint64_t raw64(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept {
  const PhiloxBlock b = philox4x32(static_cast<std::uint32_t>(index),
                                   static_cast<std::uint32_t>(index >> 32),
                                   static_cast<std::uint32_t>(stream),
                                   static_cast<std::uint32_t>(stream >> 32),
                                   static_cast<std::uint32_t>(seed),
                                   static_cast<std::uint32_t>(seed >> 32));
  return static_cast<std::uint64_t>(b.x[0]) | (static_cast<std::uint64_t>(b.x[1]) << 32);
}

double u01(std::uint64_t bits) noexcept {
  // (k + 0.5) * 2^-52 with k < 2^52; every step is exact.
  const double k = static_cast<double>(bits >> 12);
  return (k + 0.5) * kTwoPowNeg52;
}

double det_log(double x) noexcept {
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  if (std::isnan(x) || x < 0.0) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(x)) return x;

  int e = 0;
  std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
  if (bits < (std::uint64_t{1} << 52)) {  // subnormal
    x *= 0x1.0p54;
    e = -54;
    bits = std::bit_cast<std::uint64_t>(x);
  }
  e += static_cast<int>(bits >> 52) - 1023;
  bits = (bits & 0x000FFFFFFFFFFFFFull) | 0x3FF0000000000000ull;
  double m = std::bit_cast<double>(bits);  // [1,2)
  if (m > kSqrt2) {
    m = m * 0.5;
    e += 1;
  }

  const double f = m - 1.0;
  const double s = f / (2.0 + f);
  const double z = s * s;
  const double w = z * z;
  const double t1 = w * (kLg2 + w * (kLg4 + w * kLg6));
  const double t2 = z * (kLg1 + w * (kLg3 + w * (kLg5 + w * kLg7)));
  const double r = t1 + t2;
  const double hfsq = 0.5 * f * f;
  const double k = static_cast<double>(e);
  return k * kLn2Hi - ((hfsq - (s * (hfsq + r) + k * kLn2Lo)) - f);
}

namespace {

inline double horner8(const double (&c)[8], double r) noexcept {
  return ((((((c[7] * r + c[6]) * r + c[5]) * r + c[4]) * r + c[3]) * r + c[2]) * r + c[1]) * r +
         c[0];
}

}  // namespace

double normal_icdf(double p) noexcept {
  const double q = p - 0.5;
  if (q >= -kPndCentral && q <= kPndCentral) {
    const double r = kPndCentralR - q * q;
    return q * (horner8(kPndA, r) / horner8(kPndB, r));
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-det_log(r));
  double val;
  if (r <= 5.0) {
    r = r - 1.6;
    val = horner8(kPndC, r) / horner8(kPndD, r);
  } else {
    r = r - 5.0;
    val = horner8(kPndE, r) / horner8(kPndF, r);
  }
  return (q < 0.0) ? -val : val;
}

namespace {

void fill_raw_scalar(std::uint64_t seed, std::uint64_t stream, std::uint64_t index0,
                     std::size_t count, std::uint64_t* out) {
  for (std::size_t i = 0; i < count; ++i) out[i] = raw64(seed, stream, index0 + i);
}

void fill_gaussian_scalar(std::uint64_t seed, std::uint64_t stream, std::uint64_t index0,
                          std::size_t count, double sigma, double* out) {
  for (std::size_t i = 0; i < count; ++i) {
    const double u = u01(raw64(seed, stream, index0 + i));
    out[i] = sigma * normal_icdf(u);
  }
}

void fill_uniform_scalar(std::uint64_t seed, std::uint64_t stream, std::uint64_t index0,
                         std::size_t count, double half_width, double* out) {
  for (std::size_t i = 0; i < count; ++i) {
    const double u = u01(raw64(seed, stream, index0 + i));
    out[i] = half_width * (2.0 * u - 1.0);
  }
}

void fill_laplace_scalar(std::uint64_t seed, std::uint64_t stream, std::uint64_t index0,
                         std::size_t count, double scale, double* out) {
  for (std::size_t i = 0; i < count; ++i) {
    const double u = u01(raw64(seed, stream, index0 + i));
    const double q = u - 0.5;
    const double aq = (q < 0.0) ? -q : q;
    const double body = 1.0 - 2.0 * aq;  // exact, in (0,1]
    const double mag = scale * det_log(body);  // <= 0
    out[i] = (q < 0.0) ? mag : -mag;
  }
}

void fill_rademacher_scalar(std::uint64_t seed, std::uint64_t stream, std::uint64_t index0,
                            std::size_t count, double* out) {
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = (raw64(seed, stream, index0 + i) >> 63) ? 1.0 : -1.0;
  }
}

std::size_t matching_relax_scan_scalar(const double* w_row, double add, const double* v,
                                       const double* used_mask, double* minv, double* way,
                                       double origin, std::size_t n, double* delta_out) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_j = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double cand = ((add - w_row[j]) - v[j]) + used_mask[j];
    if (cand < minv[j]) {
      minv[j] = cand;
      way[j] = origin;
    }
    const double masked = minv[j] + used_mask[j];
    if (masked < best) {
      best = masked;
      best_j = j;
    }
  }
  *delta_out = best;
  return best_j;
}

}  // namespace

const Backend& scalar_backend() noexcept {
  static const Backend backend{
      "scalar",           fill_raw_scalar,        fill_gaussian_scalar,
      fill_uniform_scalar, fill_laplace_scalar,   fill_rademacher_scalar,
      matching_relax_scan_scalar,
  };
  return backend;
}

}  // namespace rwg::kernels
