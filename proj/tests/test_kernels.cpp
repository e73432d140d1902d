// SPDX-License-Identifier: Apache-2.0
//
// Kernel backend suite: known-answer vectors for the counter-based
// generator, accuracy checks for the deterministic log and inverse normal
// CDF against independent references, and bit-equivalence between the
// scalar contract and every SIMD backend.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <vector>

#include "rwg/kernels.hpp"

using namespace rwg::kernels;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

}  // namespace

TEST_CASE("philox4x32-10 known-answer vectors") {
  // Random123 kat_vectors, cross-checked against two independent
  // implementations of the published algorithm.
  auto b = philox4x32(0, 0, 0, 0, 0, 0);
  CHECK(b.x[0] == 0x6627e8d5u);
  CHECK(b.x[1] == 0xe169c58du);
  CHECK(b.x[2] == 0xbc57ac4cu);
  CHECK(b.x[3] == 0x9b00dbd8u);

  b = philox4x32(0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu);
  CHECK(b.x[0] == 0x408f276du);
  CHECK(b.x[1] == 0x41c83b0eu);
  CHECK(b.x[2] == 0xa20bc7c6u);
  CHECK(b.x[3] == 0x6d5451fdu);

  b = philox4x32(0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u, 0xa4093822u, 0x299f31d0u);
  CHECK(b.x[0] == 0xd16cfe09u);
  CHECK(b.x[1] == 0x94fdccebu);
  CHECK(b.x[2] == 0x5001e420u);
  CHECK(b.x[3] == 0x24126ea1u);
}

TEST_CASE("raw64 stream layout") {
  CHECK(raw64(0x2a, 0x7, 0) == 0xe55410cc67ee6f2cULL);
  CHECK(raw64(0x2a, 0x7, 1) == 0x600f6196e5dde940ULL);
  CHECK(raw64(0x2a, 0x7, 2) == 0xf000aacd24ecfc6eULL);
  CHECK(raw64(0x2a, 0x7, 3) == 0x7e42d578945bcadaULL);
  CHECK(raw64(0, 0, 0) == 0xe169c58d6627e8d5ULL);
  CHECK(raw64(0xDEADBEEFCAFEF00DULL, 0x8000000000000001ULL, 12345678901234ULL) ==
        0x9309be845eead5b4ULL);
}

TEST_CASE("u01 maps into the open unit interval") {
  CHECK(u01(0) == 0x1.0p-53);
  CHECK(u01(~std::uint64_t{0}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(u01(~std::uint64_t{0}) < 1.0);
  std::mt19937_64 gen(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = u01(gen());
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("det_log agrees with std::log") {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> mag(-300.0, 300.0);
  double worst = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double x = std::exp2(mag(gen));
    const double ours = det_log(x);
    const double ref = std::log(x);
    worst = std::max(worst, std::fabs(ours - ref) / std::max(1e-300, std::fabs(ref)));
  }
  CHECK(worst < 5e-15);
  CHECK(det_log(1.0) == 0.0);
  CHECK(det_log(0.0) == -kInf);
  CHECK(std::isnan(det_log(-1.0)));
  CHECK(det_log(kInf) == kInf);
  // subnormal inputs
  CHECK(det_log(5e-324) == doctest::Approx(std::log(5e-324)).epsilon(1e-14));
}

TEST_CASE("normal_icdf matches an independent reference") {
  // scipy.special.ndtri values
  const struct {
    double p, z;
  } cases[] = {
      {1e-300, -37.047096299361201}, {1e-12, -7.0344838253011313},
      {1e-5, -4.2648907939228247},   {0.025, -1.9599639845400545},
      {0.3, -0.52440051270804089},   {0.5, 0.0},
      {0.6, 0.25334710313579972},    {0.975, 1.959963984540054},
      {1.0 - 1e-5, 4.2648907939238407},
  };
  for (const auto& c : cases) {
    CHECK(normal_icdf(c.p) ==
          doctest::Approx(c.z).epsilon(1e-13));
  }
  // odd symmetry is exact by construction
  std::mt19937_64 gen(3);
  for (int i = 0; i < 1000; ++i) {
    const double u = u01(gen());
    const double lo = std::min(u, 1.0 - u);
    CHECK(normal_icdf(lo) == -normal_icdf(1.0 - lo));
  }
}

namespace {

void check_fill_equivalence(const Backend& a, const Backend& b) {
  std::mt19937_64 gen(4);
  const std::size_t counts[] = {0, 1, 2, 3, 4, 5, 7, 8, 63, 64, 1000, 1001, 1002, 1003};
  for (const std::size_t count : counts) {
    const std::uint64_t seed = gen();
    const std::uint64_t stream = gen();
    const std::uint64_t index0 = gen() >> 20;

    std::vector<std::uint64_t> rawa(count), rawb(count);
    a.fill_raw(seed, stream, index0, count, rawa.data());
    b.fill_raw(seed, stream, index0, count, rawb.data());
    CHECK(rawa == rawb);

    std::vector<double> xa(count), xb(count);
    a.fill_gaussian(seed, stream, index0, count, 1.7, xa.data());
    b.fill_gaussian(seed, stream, index0, count, 1.7, xb.data());
    CHECK(bits_equal(xa, xb));

    a.fill_uniform(seed, stream, index0, count, 2.5, xa.data());
    b.fill_uniform(seed, stream, index0, count, 2.5, xb.data());
    CHECK(bits_equal(xa, xb));

    a.fill_laplace(seed, stream, index0, count, 0.8, xa.data());
    b.fill_laplace(seed, stream, index0, count, 0.8, xb.data());
    CHECK(bits_equal(xa, xb));

    a.fill_rademacher(seed, stream, index0, count, xa.data());
    b.fill_rademacher(seed, stream, index0, count, xb.data());
    CHECK(bits_equal(xa, xb));
  }
}

void check_scan_equivalence(const Backend& a, const Backend& b) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> unif(-4.0, 4.0);
  std::uniform_int_distribution<int> coarse(-3, 3);
  const std::size_t sizes[] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 15, 16, 17, 64, 255, 1000};
  for (const std::size_t n : sizes) {
    for (int rep = 0; rep < 8; ++rep) {
      std::vector<double> w(n), v(n), used(n), minv_a(n), way_a(n), minv_b(n), way_b(n);
      for (std::size_t j = 0; j < n; ++j) {
        // half the reps use tie-heavy integer weights
        w[j] = (rep % 2) ? static_cast<double>(coarse(gen)) : unif(gen);
        v[j] = (rep % 2) ? 0.0 : unif(gen);
        used[j] = (gen() & 3) == 0 ? kInf : 0.0;
        minv_a[j] = (gen() & 1) ? kInf : unif(gen) + 1.0;
        way_a[j] = -1.0;
      }
      minv_b = minv_a;
      way_b = way_a;
      const double add = unif(gen);
      double da = 0.0, db = 0.0;
      const std::size_t ja =
          a.matching_relax_scan(w.data(), add, v.data(), used.data(), minv_a.data(),
                                way_a.data(), 42.0, n, &da);
      const std::size_t jb =
          b.matching_relax_scan(w.data(), add, v.data(), used.data(), minv_b.data(),
                                way_b.data(), 42.0, n, &db);
      CHECK(ja == jb);
      CHECK((da == db || (std::isinf(da) && std::isinf(db))));
      CHECK(bits_equal(minv_a, minv_b));
      CHECK(bits_equal(way_a, way_b));
    }
  }
}

}  // namespace

TEST_CASE("avx2 backend is bit-identical to the scalar contract") {
  const Backend* simd = avx2_backend();
  if (simd == nullptr) {
    MESSAGE("AVX2 unavailable on this machine; equivalence suite skipped");
    return;
  }
  check_fill_equivalence(scalar_backend(), *simd);
  check_scan_equivalence(scalar_backend(), *simd);
}

TEST_CASE("backend selection") {
  const Backend& before = active();
  CHECK(set_active("scalar"));
  CHECK(std::string(active().name) == "scalar");
  CHECK_FALSE(set_active("neon"));
  if (avx2_backend()) {
    CHECK(set_active("avx2"));
    CHECK(std::string(active().name) == "avx2");
  }
  set_active(before.name);
}

TEST_CASE("fill transforms have the right gross statistics") {
  const std::size_t n = 200000;
  std::vector<double> x(n);
  const Backend& k = active();

  k.fill_gaussian(11, 0, 0, n, 1.0, x.data());
  double mean = 0.0, var = 0.0;
  for (const double v : x) mean += v;
  mean /= n;
  for (const double v : x) var += (v - mean) * (v - mean);
  var /= n - 1;
  CHECK(std::fabs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(var == doctest::Approx(1.0).epsilon(0.02));

  k.fill_uniform(11, 1, 0, n, 1.0, x.data());
  for (const double v : x) {
    CHECK(v > -1.0);
    CHECK(v < 1.0);
  }

  k.fill_rademacher(11, 2, 0, n, x.data());
  std::size_t plus = 0;
  for (const double v : x) {
    CHECK((v == 1.0 || v == -1.0));
    plus += v > 0.0;
  }
  CHECK(std::fabs(static_cast<double>(plus) / n - 0.5) < 0.01);

  k.fill_laplace(11, 3, 0, n, 1.0, x.data());
  mean = 0.0;
  var = 0.0;
  for (const double v : x) mean += v;
  mean /= n;
  for (const double v : x) var += (v - mean) * (v - mean);
  var /= n - 1;
  CHECK(std::fabs(mean) < 4.0 * std::sqrt(2.0 / static_cast<double>(n)));
  CHECK(var == doctest::Approx(2.0).epsilon(0.05));
}
