#include "agc/simd/bitvec.hpp"

namespace agc::simd::detail {

namespace {

void and_words(Word *dst, const Word *a, const Word *b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] & b[i];
}

void or_words(Word *dst, const Word *a, const Word *b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] | b[i];
}

void xnor_words(Word *dst, const Word *a, const Word *b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = ~(a[i] ^ b[i]);
}

void implies_words(Word *dst, const Word *a, const Word *b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = ~a[i] | b[i];
}

void not_words(Word *dst, const Word *a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = ~a[i];
}

void until_step(Word *dst, const Word *a, const Word *b, const Word *nxt,
                std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = b[i] | (a[i] & nxt[i]);
}

void release_step(Word *dst, const Word *a, const Word *b, const Word *nxt,
                  std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = b[i] & (a[i] | nxt[i]);
}

bool any_words(const Word *a, std::size_t n) {
  Word acc = 0;
  for (std::size_t i = 0; i < n; ++i) acc |= a[i];
  return acc != 0;
}

} // namespace

const KernelTable scalar_table{
    "scalar",   and_words,  or_words,     xnor_words, implies_words,
    not_words,  until_step, release_step, any_words,
};

} // namespace agc::simd::detail
