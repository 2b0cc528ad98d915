#pragma once

// Word-parallel boolean kernels used by the brute-force lasso oracle. Each
// bit of a word vector is one candidate assignment, so one kernel call
// evaluates a connective for thousands of traces at once.
//
// Every kernel has a scalar reference version; AVX2 (x86-64) and NEON
// (AArch64) versions are selected at runtime and must agree bit for bit.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace agc::simd {

using Word = std::uint64_t;

enum class Backend { Scalar, Avx2, Neon };

struct KernelTable {
  std::string_view name;
  // dst = a & b
  void (*and_words)(Word *dst, const Word *a, const Word *b, std::size_t n);
  // dst = a | b
  void (*or_words)(Word *dst, const Word *a, const Word *b, std::size_t n);
  // dst = ~(a ^ b)
  void (*xnor_words)(Word *dst, const Word *a, const Word *b, std::size_t n);
  // dst = ~a | b
  void (*implies_words)(Word *dst, const Word *a, const Word *b,
                        std::size_t n);
  // dst = ~a
  void (*not_words)(Word *dst, const Word *a, std::size_t n);
  // dst = b | (a & nxt)
  void (*until_step)(Word *dst, const Word *a, const Word *b, const Word *nxt,
                     std::size_t n);
  // dst = b & (a | nxt)
  void (*release_step)(Word *dst, const Word *a, const Word *b,
                       const Word *nxt, std::size_t n);
  // true iff any bit of a is set
  bool (*any_words)(const Word *a, std::size_t n);
};

bool backend_supported(Backend b) noexcept;
/// Throws agc::Error when the backend is not available on this machine.
const KernelTable &kernels_for(Backend b);
/// The widest supported backend, unless overridden with force_backend or the
/// AGC_SIMD environment variable ("scalar", "avx2", "neon").
const KernelTable &active_kernels();
Backend active_backend();
void force_backend(Backend b);
std::string_view backend_name(Backend b) noexcept;

// Span front-ends over the active table. Sizes must match.
inline void and_into(std::span<Word> dst, std::span<const Word> a,
                     std::span<const Word> b) {
  active_kernels().and_words(dst.data(), a.data(), b.data(), dst.size());
}
inline void or_into(std::span<Word> dst, std::span<const Word> a,
                    std::span<const Word> b) {
  active_kernels().or_words(dst.data(), a.data(), b.data(), dst.size());
}
inline bool any(std::span<const Word> a) {
  return active_kernels().any_words(a.data(), a.size());
}

namespace detail {
extern const KernelTable scalar_table;
#if defined(AGC_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif
#if defined(AGC_HAVE_NEON)
extern const KernelTable neon_table;
#endif
} // namespace detail

} // namespace agc::simd
