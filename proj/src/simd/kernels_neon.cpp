#include "agc/simd/bitvec.hpp"

#if defined(AGC_HAVE_NEON)

#include <arm_neon.h>

namespace agc::simd::detail {

namespace {

constexpr std::size_t kLanes = 2;

inline uint64x2_t load(const Word *p) { return vld1q_u64(p); }
inline void store(Word *p, uint64x2_t v) { vst1q_u64(p, v); }

void and_words(Word *dst, const Word *a, const Word *b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    store(dst + i, vandq_u64(load(a + i), load(b + i)));
  }
  for (; i < n; ++i) dst[i] = a[i] & b[i];
}

void or_words(Word *dst, const Word *a, const Word *b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    store(dst + i, vorrq_u64(load(a + i), load(b + i)));
  }
  for (; i < n; ++i) dst[i] = a[i] | b[i];
}

void xnor_words(Word *dst, const Word *a, const Word *b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const uint64x2_t x = veorq_u64(load(a + i), load(b + i));
    store(dst + i, vreinterpretq_u64_u32(vmvnq_u32(vreinterpretq_u32_u64(x))));
  }
  for (; i < n; ++i) dst[i] = ~(a[i] ^ b[i]);
}

void implies_words(Word *dst, const Word *a, const Word *b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    // vornq(b, a) = b | ~a
    store(dst + i, vornq_u64(load(b + i), load(a + i)));
  }
  for (; i < n; ++i) dst[i] = ~a[i] | b[i];
}

void not_words(Word *dst, const Word *a, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    store(dst + i,
          vreinterpretq_u64_u32(vmvnq_u32(vreinterpretq_u32_u64(load(a + i)))));
  }
  for (; i < n; ++i) dst[i] = ~a[i];
}

void until_step(Word *dst, const Word *a, const Word *b, const Word *nxt,
                std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    store(dst + i,
          vorrq_u64(load(b + i), vandq_u64(load(a + i), load(nxt + i))));
  }
  for (; i < n; ++i) dst[i] = b[i] | (a[i] & nxt[i]);
}

void release_step(Word *dst, const Word *a, const Word *b, const Word *nxt,
                  std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    store(dst + i,
          vandq_u64(load(b + i), vorrq_u64(load(a + i), load(nxt + i))));
  }
  for (; i < n; ++i) dst[i] = b[i] & (a[i] | nxt[i]);
}

bool any_words(const Word *a, std::size_t n) {
  std::size_t i = 0;
  uint64x2_t acc = vdupq_n_u64(0);
  for (; i + kLanes <= n; i += kLanes) {
    acc = vorrq_u64(acc, load(a + i));
  }
  Word tail = vgetq_lane_u64(acc, 0) | vgetq_lane_u64(acc, 1);
  for (; i < n; ++i) tail |= a[i];
  return tail != 0;
}

} // namespace

const KernelTable neon_table{
    "neon",     and_words,  or_words,     xnor_words, implies_words,
    not_words,  until_step, release_step, any_words,
};

} // namespace agc::simd::detail

#endif
