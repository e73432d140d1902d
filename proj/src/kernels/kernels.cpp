// SPDX-License-Identifier: Apache-2.0

#include "rwg/kernels.hpp"

#include <cstdlib>

namespace rwg::kernels {

const Backend* avx2_backend_impl() noexcept;  // defined in avx2.cpp

const Backend* avx2_backend() noexcept {
#if defined(__x86_64__) || defined(_M_X64)
  if (!__builtin_cpu_supports("avx2")) return nullptr;
  return avx2_backend_impl();
#else
  return nullptr;
#endif
}

namespace {

const Backend* pick_default() noexcept {
  if (const char* env = std::getenv("RWG_KERNELS")) {
    const std::string_view want{env};
    if (want == "scalar") return &scalar_backend();
    if (want == "avx2" && avx2_backend()) return avx2_backend();
  }
  if (const Backend* b = avx2_backend()) return b;
  return &scalar_backend();
}

const Backend*& active_slot() noexcept {
  static const Backend* slot = pick_default();
  return slot;
}

}  // namespace

const Backend& active() noexcept { return *active_slot(); }

bool set_active(std::string_view name) noexcept {
  if (name == "scalar") {
    active_slot() = &scalar_backend();
    return true;
  }
  if (name == "avx2") {
    if (const Backend* b = avx2_backend()) {
      active_slot() = b;
      return true;
    }
    return false;
  }
  return false;
}

}  // namespace rwg::kernels
