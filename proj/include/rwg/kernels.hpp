// SPDX-License-Identifier: Apache-2.0
//
// Data-parallel inner-loop kernels with runtime backend selection.
//
// Every kernel exists in a scalar reference form and, on x86-64 with AVX2,
// a vectorized form. The two are required to be bit-identical: the scalar
// code is the contract, the SIMD code is an equivalent evaluation of the
// same IEEE-754 operation sequence per element (no FMA contraction, no
// reassociation). Equivalence is enforced by tests/test_kernels.cpp.
//
// Randomness is counter-based (Philox4x32-10): the value at (seed, stream,
// index) is a pure function of the key, so any element of a sample can be
// regenerated in isolation and trials can run in any order on any number
// of workers without changing a single bit of output.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace rwg::kernels {

struct Backend {
  const char* name;

  // Raw 64-bit counter output at indices index0..index0+count-1.
  void (*fill_raw)(std::uint64_t seed, std::uint64_t stream, std::uint64_t index0,
                   std::size_t count, std::uint64_t* out);

  // Variate fills: out[i] = transform(u01(raw(seed, stream, index0 + i))).
  void (*fill_gaussian)(std::uint64_t seed, std::uint64_t stream, std::uint64_t index0,
                        std::size_t count, double sigma, double* out);
  void (*fill_uniform)(std::uint64_t seed, std::uint64_t stream, std::uint64_t index0,
                       std::size_t count, double half_width, double* out);
  void (*fill_laplace)(std::uint64_t seed, std::uint64_t stream, std::uint64_t index0,
                       std::size_t count, double scale, double* out);
  void (*fill_rademacher)(std::uint64_t seed, std::uint64_t stream, std::uint64_t index0,
                          std::size_t count, double* out);

  // Fused relax-and-argmin pass of the assignment solver's Dijkstra stage.
  // For each column j:
  //   cand = ((add - w_row[j]) - v[j]) + used_mask[j]
  //   if (cand < minv[j]) { minv[j] = cand; way[j] = origin; }
  // returns argmin_j (minv[j] + used_mask[j]) with first-index tie-break,
  // and writes that minimum to *delta_out. used_mask holds 0.0 for open
  // columns and +inf for columns already in the alternating tree.
  std::size_t (*matching_relax_scan)(const double* w_row, double add, const double* v,
                                     const double* used_mask, double* minv, double* way,
                                     double origin, std::size_t n, double* delta_out);
};

// Always-available reference backend.
const Backend& scalar_backend() noexcept;

// AVX2 backend, or nullptr when the binary or the CPU lacks support.
const Backend* avx2_backend() noexcept;

// Currently selected backend. Defaults to the fastest supported one;
// the RWG_KERNELS environment variable ("scalar"/"avx2") overrides.
const Backend& active() noexcept;

// Select a backend by name; returns false (and keeps the current one)
// when the requested backend is unavailable.
bool set_active(std::string_view name) noexcept;

// ---- scalar building blocks (shared with atomic-law sampling) ----

struct PhiloxBlock {
  std::uint32_t x[4];
};

// One Philox4x32-10 block. Counter (c0,c1,c2,c3), key (k0,k1).
PhiloxBlock philox4x32(std::uint32_t c0, std::uint32_t c1, std::uint32_t c2,
                       std::uint32_t c3, std::uint32_t k0, std::uint32_t k1) noexcept;

// First 64 output bits of the block at (seed, stream, index).
std::uint64_t raw64(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept;

// Map 64 random bits to the open interval (0,1): u = ((bits >> 12) + 0.5) * 2^-52.
double u01(std::uint64_t bits) noexcept;

// Deterministic natural log (same bits on every platform/backend).
// Requires a positive finite argument for the vector paths; the scalar
// form also handles 0 (-inf), negatives (NaN) and +inf.
double det_log(double x) noexcept;

// Inverse standard normal CDF (Wichura's PPND16), built on det_log/sqrt
// only, so its output is a platform-independent function of the input.
double normal_icdf(double p) noexcept;

}  // namespace rwg::kernels
