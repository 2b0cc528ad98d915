// Built with -mavx2; only reached after a runtime CPU check.
#include "agc/simd/bitvec.hpp"

#include <immintrin.h>

namespace agc::simd::detail {

namespace {

constexpr std::size_t kLanes = 4;

inline __m256i load(const Word *p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i *>(p));
}
inline void store(Word *p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i *>(p), v);
}
inline __m256i ones() { return _mm256_set1_epi64x(-1); }

void and_words(Word *dst, const Word *a, const Word *b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    store(dst + i, _mm256_and_si256(load(a + i), load(b + i)));
  }
  for (; i < n; ++i) dst[i] = a[i] & b[i];
}

void or_words(Word *dst, const Word *a, const Word *b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    store(dst + i, _mm256_or_si256(load(a + i), load(b + i)));
  }
  for (; i < n; ++i) dst[i] = a[i] | b[i];
}

void xnor_words(Word *dst, const Word *a, const Word *b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    store(dst + i,
          _mm256_xor_si256(_mm256_xor_si256(load(a + i), load(b + i)), ones()));
  }
  for (; i < n; ++i) dst[i] = ~(a[i] ^ b[i]);
}

void implies_words(Word *dst, const Word *a, const Word *b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    store(dst + i,
          _mm256_or_si256(_mm256_xor_si256(load(a + i), ones()), load(b + i)));
  }
  for (; i < n; ++i) dst[i] = ~a[i] | b[i];
}

void not_words(Word *dst, const Word *a, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    store(dst + i, _mm256_xor_si256(load(a + i), ones()));
  }
  for (; i < n; ++i) dst[i] = ~a[i];
}

void until_step(Word *dst, const Word *a, const Word *b, const Word *nxt,
                std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    store(dst + i, _mm256_or_si256(load(b + i),
                                   _mm256_and_si256(load(a + i), load(nxt + i))));
  }
  for (; i < n; ++i) dst[i] = b[i] | (a[i] & nxt[i]);
}

void release_step(Word *dst, const Word *a, const Word *b, const Word *nxt,
                  std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    store(dst + i, _mm256_and_si256(load(b + i),
                                    _mm256_or_si256(load(a + i), load(nxt + i))));
  }
  for (; i < n; ++i) dst[i] = b[i] & (a[i] | nxt[i]);
}

bool any_words(const Word *a, std::size_t n) {
  std::size_t i = 0;
  __m256i acc = _mm256_setzero_si256();
  for (; i + kLanes <= n; i += kLanes) {
    acc = _mm256_or_si256(acc, load(a + i));
  }
  Word tail = 0;
  for (; i < n; ++i) tail |= a[i];
  return !_mm256_testz_si256(acc, acc) || tail != 0;
}

} // namespace

const KernelTable avx2_table{
    "avx2",     and_words,  or_words,     xnor_words, implies_words,
    not_words,  until_step, release_step, any_words,
};

} // namespace agc::simd::detail
