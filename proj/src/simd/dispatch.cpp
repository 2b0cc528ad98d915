#include "agc/error.hpp"
#include "agc/simd/bitvec.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace agc::simd {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(AGC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend best_backend() noexcept {
  if (backend_supported(Backend::Avx2)) return Backend::Avx2;
  if (backend_supported(Backend::Neon)) return Backend::Neon;
  return Backend::Scalar;
}

Backend initial_backend() {
  if (const char *env = std::getenv("AGC_SIMD")) {
    const std::string v = env;
    if (v == "scalar") return Backend::Scalar;
    if (v == "avx2" && backend_supported(Backend::Avx2)) return Backend::Avx2;
    if (v == "neon" && backend_supported(Backend::Neon)) return Backend::Neon;
  }
  return best_backend();
}

std::atomic<Backend> &current() {
  static std::atomic<Backend> b{initial_backend()};
  return b;
}

} // namespace

bool backend_supported(Backend b) noexcept {
  switch (b) {
  case Backend::Scalar:
    return true;
  case Backend::Avx2:
    return cpu_has_avx2();
  case Backend::Neon:
#if defined(AGC_HAVE_NEON)
    return true;
#else
    return false;
#endif
  }
  return false;
}

const KernelTable &kernels_for(Backend b) {
  if (!backend_supported(b)) {
    throw Error(std::string("SIMD backend '") +
                std::string(backend_name(b)) + "' is not available");
  }
  switch (b) {
#if defined(AGC_HAVE_AVX2)
  case Backend::Avx2:
    return detail::avx2_table;
#endif
#if defined(AGC_HAVE_NEON)
  case Backend::Neon:
    return detail::neon_table;
#endif
  default:
    return detail::scalar_table;
  }
}

const KernelTable &active_kernels() { return kernels_for(current().load()); }

Backend active_backend() { return current().load(); }

void force_backend(Backend b) {
  if (!backend_supported(b)) {
    throw Error(std::string("SIMD backend '") +
                std::string(backend_name(b)) + "' is not available");
  }
  current().store(b);
}

std::string_view backend_name(Backend b) noexcept {
  switch (b) {
  case Backend::Scalar:
    return "scalar";
  case Backend::Avx2:
    return "avx2";
  case Backend::Neon:
    return "neon";
  }
  return "unknown";
}

} // namespace agc::simd
