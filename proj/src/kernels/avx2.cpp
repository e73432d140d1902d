// SPDX-License-Identifier: Apache-2.0
//
// AVX2 backend. Mirrors the scalar reference operation-for-operation:
// only mul/add/sub/div/sqrt/compare/blend intrinsics (never FMA), so every
// lane computes exactly the scalar IEEE-754 sequence and results are
// bit-identical. Remainder elements fall through to the scalar helpers.

#include "rwg/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

#include <cstring>
#include <limits>

#include "kernel_constants.hpp"

namespace rwg::kernels {
namespace {

using namespace detail;

constexpr std::uint64_t kLo32 = 0x00000000FFFFFFFFull;

struct Philox4 {
  __m256i x0, x1, x2, x3;  // u32 values in the low half of each 64-bit lane
};

// Four independent blocks; counters (index0+i, stream), key = seed.
inline Philox4 philox4(std::uint64_t seed, std::uint64_t stream, std::uint64_t index0) {
  const __m256i idx = _mm256_set_epi64x(
      static_cast<long long>(index0 + 3), static_cast<long long>(index0 + 2),
      static_cast<long long>(index0 + 1), static_cast<long long>(index0));
  const __m256i lomask = _mm256_set1_epi64x(static_cast<long long>(kLo32));
  __m256i x0 = _mm256_and_si256(idx, lomask);
  __m256i x1 = _mm256_srli_epi64(idx, 32);
  __m256i x2 = _mm256_set1_epi64x(static_cast<long long>(stream & kLo32));
  __m256i x3 = _mm256_set1_epi64x(static_cast<long long>(stream >> 32));
  __m256i k0 = _mm256_set1_epi64x(static_cast<long long>(seed & kLo32));
  __m256i k1 = _mm256_set1_epi64x(static_cast<long long>(seed >> 32));
  const __m256i m0 = _mm256_set1_epi64x(static_cast<long long>(kPhiloxM0));
  const __m256i m1 = _mm256_set1_epi64x(static_cast<long long>(kPhiloxM1));
  const __m256i w0 = _mm256_set1_epi64x(static_cast<long long>(kPhiloxW0));
  const __m256i w1 = _mm256_set1_epi64x(static_cast<long long>(kPhiloxW1));
  for (int r = 0; r < kPhiloxRounds; ++r) {
    const __m256i p0 = _mm256_mul_epu32(x0, m0);
    const __m256i p1 = _mm256_mul_epu32(x2, m1);
    const __m256i hi0 = _mm256_srli_epi64(p0, 32);
    const __m256i lo0 = _mm256_and_si256(p0, lomask);
    const __m256i hi1 = _mm256_srli_epi64(p1, 32);
    const __m256i lo1 = _mm256_and_si256(p1, lomask);
    const __m256i n0 = _mm256_xor_si256(_mm256_xor_si256(hi1, x1), k0);
    const __m256i n2 = _mm256_xor_si256(_mm256_xor_si256(hi0, x3), k1);
    x0 = n0;
    x1 = lo1;
    x2 = n2;
    x3 = lo0;
    k0 = _mm256_and_si256(_mm256_add_epi64(k0, w0), lomask);
    k1 = _mm256_and_si256(_mm256_add_epi64(k1, w1), lomask);
  }
  return Philox4{x0, x1, x2, x3};
}

inline __m256i raw64x4(std::uint64_t seed, std::uint64_t stream, std::uint64_t index0) {
  const Philox4 b = philox4(seed, stream, index0);
  return _mm256_or_si256(b.x0, _mm256_slli_epi64(b.x1, 32));
}

// Exact u64(<2^52) -> double conversion via the 2^52 bias trick.
inline __m256d to_double_52(__m256i k) {
  const __m256i bias = _mm256_set1_epi64x(0x4330000000000000ll);
  const __m256d biased = _mm256_castsi256_pd(_mm256_or_si256(k, bias));
  return _mm256_sub_pd(biased, _mm256_set1_pd(0x1.0p52));
}

inline __m256d u01x4(__m256i bits) {
  const __m256d k = to_double_52(_mm256_srli_epi64(bits, 12));
  return _mm256_mul_pd(_mm256_add_pd(k, _mm256_set1_pd(0.5)),
                       _mm256_set1_pd(kTwoPowNeg52));
}

// int64 lanes in [-2^51, 2^51) -> double, exact.
inline __m256d i64_to_double_small(__m256i v) {
  const __m256i bias = _mm256_set1_epi64x(0x4338000000000000ll);  // 1.5 * 2^52
  const __m256d biased = _mm256_castsi256_pd(_mm256_add_epi64(v, bias));
  return _mm256_sub_pd(biased, _mm256_set1_pd(0x1.8p52));
}

// Deterministic log; lanes must hold positive, finite, normal doubles.
inline __m256d vlog(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  __m256i e = _mm256_sub_epi64(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(1023));
  const __m256i frac = _mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFll));
  __m256d m = _mm256_castsi256_pd(
      _mm256_or_si256(frac, _mm256_set1_epi64x(0x3FF0000000000000ll)));
  const __m256d gt = _mm256_cmp_pd(m, _mm256_set1_pd(kSqrt2), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), gt);
  // mask lanes are all-ones == -1: subtracting adds 1 where m was halved
  e = _mm256_sub_epi64(e, _mm256_castpd_si256(gt));

  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d f = _mm256_sub_pd(m, one);
  const __m256d s = _mm256_div_pd(f, _mm256_add_pd(_mm256_set1_pd(2.0), f));
  const __m256d z = _mm256_mul_pd(s, s);
  const __m256d w = _mm256_mul_pd(z, z);
  const __m256d t1 = _mm256_mul_pd(
      w, _mm256_add_pd(_mm256_set1_pd(kLg2),
                       _mm256_mul_pd(w, _mm256_add_pd(_mm256_set1_pd(kLg4),
                                                      _mm256_mul_pd(w, _mm256_set1_pd(kLg6))))));
  const __m256d t2 = _mm256_mul_pd(
      z, _mm256_add_pd(
             _mm256_set1_pd(kLg1),
             _mm256_mul_pd(w, _mm256_add_pd(_mm256_set1_pd(kLg3),
                                            _mm256_mul_pd(w, _mm256_add_pd(_mm256_set1_pd(kLg5),
                                                                           _mm256_mul_pd(
                                                                               w, _mm256_set1_pd(
                                                                                      kLg7))))))));
  const __m256d r = _mm256_add_pd(t1, t2);
  const __m256d hfsq = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(0.5), f), f);
  const __m256d k = i64_to_double_small(e);
  // k*Ln2Hi - ((hfsq - (s*(hfsq+r) + k*Ln2Lo)) - f)
  const __m256d inner = _mm256_add_pd(_mm256_mul_pd(s, _mm256_add_pd(hfsq, r)),
                                      _mm256_mul_pd(k, _mm256_set1_pd(kLn2Lo)));
  return _mm256_sub_pd(_mm256_mul_pd(k, _mm256_set1_pd(kLn2Hi)),
                       _mm256_sub_pd(_mm256_sub_pd(hfsq, inner), f));
}

inline __m256d horner8v(const double (&c)[8], __m256d r) {
  __m256d v = _mm256_set1_pd(c[7]);
  v = _mm256_add_pd(_mm256_mul_pd(v, r), _mm256_set1_pd(c[6]));
  v = _mm256_add_pd(_mm256_mul_pd(v, r), _mm256_set1_pd(c[5]));
  v = _mm256_add_pd(_mm256_mul_pd(v, r), _mm256_set1_pd(c[4]));
  v = _mm256_add_pd(_mm256_mul_pd(v, r), _mm256_set1_pd(c[3]));
  v = _mm256_add_pd(_mm256_mul_pd(v, r), _mm256_set1_pd(c[2]));
  v = _mm256_add_pd(_mm256_mul_pd(v, r), _mm256_set1_pd(c[1]));
  v = _mm256_add_pd(_mm256_mul_pd(v, r), _mm256_set1_pd(c[0]));
  return v;
}

inline __m256d vppnd(__m256d p) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d q = _mm256_sub_pd(p, half);
  const __m256d aq = _mm256_andnot_pd(sign, q);
  const __m256d central = _mm256_cmp_pd(aq, _mm256_set1_pd(kPndCentral), _CMP_LE_OQ);

  // central branch
  const __m256d rc = _mm256_sub_pd(_mm256_set1_pd(kPndCentralR), _mm256_mul_pd(q, q));
  const __m256d zc =
      _mm256_mul_pd(q, _mm256_div_pd(horner8v(kPndA, rc), horner8v(kPndB, rc)));

  // tail branch
  const __m256d qneg = _mm256_cmp_pd(q, _mm256_setzero_pd(), _CMP_LT_OQ);
  const __m256d rt0 = _mm256_blendv_pd(_mm256_sub_pd(one, p), p, qneg);
  const __m256d rt = _mm256_sqrt_pd(_mm256_xor_pd(vlog(rt0), sign));
  const __m256d mid = _mm256_cmp_pd(rt, _mm256_set1_pd(5.0), _CMP_LE_OQ);
  const __m256d rmid = _mm256_sub_pd(rt, _mm256_set1_pd(1.6));
  const __m256d rfar = _mm256_sub_pd(rt, _mm256_set1_pd(5.0));
  const __m256d vmid = _mm256_div_pd(horner8v(kPndC, rmid), horner8v(kPndD, rmid));
  const __m256d vfar = _mm256_div_pd(horner8v(kPndE, rfar), horner8v(kPndF, rfar));
  __m256d vt = _mm256_blendv_pd(vfar, vmid, mid);
  vt = _mm256_blendv_pd(vt, _mm256_xor_pd(vt, sign), qneg);

  return _mm256_blendv_pd(vt, zc, central);
}

void fill_raw_avx2(std::uint64_t seed, std::uint64_t stream, std::uint64_t index0,
                   std::size_t count, std::uint64_t* out) {
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256i r = raw64x4(seed, stream, index0 + i);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), r);
  }
  for (; i < count; ++i) out[i] = raw64(seed, stream, index0 + i);
}

void fill_gaussian_avx2(std::uint64_t seed, std::uint64_t stream, std::uint64_t index0,
                        std::size_t count, double sigma, double* out) {
  const __m256d vs = _mm256_set1_pd(sigma);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d u = u01x4(raw64x4(seed, stream, index0 + i));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(vs, vppnd(u)));
  }
  for (; i < count; ++i) {
    out[i] = sigma * normal_icdf(u01(raw64(seed, stream, index0 + i)));
  }
}

void fill_uniform_avx2(std::uint64_t seed, std::uint64_t stream, std::uint64_t index0,
                       std::size_t count, double half_width, double* out) {
  const __m256d hw = _mm256_set1_pd(half_width);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d u = u01x4(raw64x4(seed, stream, index0 + i));
    const __m256d t = _mm256_sub_pd(_mm256_mul_pd(two, u), one);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(hw, t));
  }
  for (; i < count; ++i) {
    const double u = u01(raw64(seed, stream, index0 + i));
    out[i] = half_width * (2.0 * u - 1.0);
  }
}

void fill_laplace_avx2(std::uint64_t seed, std::uint64_t stream, std::uint64_t index0,
                       std::size_t count, double scale, double* out) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d vsc = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d u = u01x4(raw64x4(seed, stream, index0 + i));
    const __m256d q = _mm256_sub_pd(u, half);
    const __m256d aq = _mm256_andnot_pd(sign, q);
    const __m256d body = _mm256_sub_pd(one, _mm256_mul_pd(two, aq));
    const __m256d mag = _mm256_mul_pd(vsc, vlog(body));
    const __m256d qneg = _mm256_cmp_pd(q, _mm256_setzero_pd(), _CMP_LT_OQ);
    _mm256_storeu_pd(out + i, _mm256_blendv_pd(_mm256_xor_pd(mag, sign), mag, qneg));
  }
  for (; i < count; ++i) {
    const double u = u01(raw64(seed, stream, index0 + i));
    const double q = u - 0.5;
    const double aq = (q < 0.0) ? -q : q;
    const double body = 1.0 - 2.0 * aq;
    const double mag = scale * det_log(body);
    out[i] = (q < 0.0) ? mag : -mag;
  }
}

void fill_rademacher_avx2(std::uint64_t seed, std::uint64_t stream, std::uint64_t index0,
                          std::size_t count, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256i top = _mm256_srli_epi64(raw64x4(seed, stream, index0 + i), 63);
    const __m256i is_one = _mm256_cmpeq_epi64(top, _mm256_set1_epi64x(1));
    const __m256d res = _mm256_blendv_pd(_mm256_set1_pd(-1.0), _mm256_set1_pd(1.0),
                                         _mm256_castsi256_pd(is_one));
    _mm256_storeu_pd(out + i, res);
  }
  for (; i < count; ++i) out[i] = (raw64(seed, stream, index0 + i) >> 63) ? 1.0 : -1.0;
}

std::size_t matching_relax_scan_avx2(const double* w_row, double add, const double* v,
                                     const double* used_mask, double* minv, double* way,
                                     double origin, std::size_t n, double* delta_out) {
  const __m256d vadd = _mm256_set1_pd(add);
  const __m256d vorigin = _mm256_set1_pd(origin);
  __m256d vbest = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  __m256d vbidx = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  __m256d vidx = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  const __m256d vfour = _mm256_set1_pd(4.0);

  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d w = _mm256_loadu_pd(w_row + j);
    const __m256d vv = _mm256_loadu_pd(v + j);
    const __m256d um = _mm256_loadu_pd(used_mask + j);
    const __m256d mv = _mm256_loadu_pd(minv + j);
    const __m256d cand = _mm256_add_pd(_mm256_sub_pd(_mm256_sub_pd(vadd, w), vv), um);
    const __m256d lt = _mm256_cmp_pd(cand, mv, _CMP_LT_OQ);
    const __m256d mv2 = _mm256_blendv_pd(mv, cand, lt);
    _mm256_storeu_pd(minv + j, mv2);
    const __m256d wy = _mm256_loadu_pd(way + j);
    _mm256_storeu_pd(way + j, _mm256_blendv_pd(wy, vorigin, lt));
    const __m256d masked = _mm256_add_pd(mv2, um);
    const __m256d lt2 = _mm256_cmp_pd(masked, vbest, _CMP_LT_OQ);
    vbest = _mm256_blendv_pd(vbest, masked, lt2);
    vbidx = _mm256_blendv_pd(vbidx, vidx, lt2);
    vidx = _mm256_add_pd(vidx, vfour);
  }

  alignas(32) double bests[4];
  alignas(32) double idxs[4];
  _mm256_store_pd(bests, vbest);
  _mm256_store_pd(idxs, vbidx);
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_j = 0;
  for (int lane = 0; lane < 4; ++lane) {
    const std::size_t lj = static_cast<std::size_t>(idxs[lane]);
    if (bests[lane] < best || (bests[lane] == best && lj < best_j)) {
      best = bests[lane];
      best_j = lj;
    }
  }
  for (; j < n; ++j) {
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

const Backend* avx2_backend_impl() noexcept {
  static const Backend backend{
      "avx2",           fill_raw_avx2,      fill_gaussian_avx2,
      fill_uniform_avx2, fill_laplace_avx2, fill_rademacher_avx2,
      matching_relax_scan_avx2,
  };
  return &backend;
}

}  // namespace rwg::kernels

#else  // !__AVX2__

namespace rwg::kernels {
const Backend* avx2_backend_impl() noexcept { return nullptr; }
}  // namespace rwg::kernels

#endif
