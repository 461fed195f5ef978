// Compiled with -mavx2; only reached through avx2() after a CPU check.
#include <immintrin.h>

#include <bit>

#include "omrel/kernels.hpp"

namespace omrel::kernels::detail {

namespace {

// Single-word rows: four output rows per iteration. For every column j the
// row b[j] is broadcast and masked by bit j of each of the four a-rows.
void compose_one_word(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                      std::size_t n) {
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i zero = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i rows = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i acc = zero;
    for (std::size_t j = 0; j < n; ++j) {
      __m256i bit = _mm256_and_si256(_mm256_srl_epi64(rows, _mm_cvtsi64_si128(static_cast<long long>(j))), one);
      __m256i mask = _mm256_sub_epi64(zero, bit);
      __m256i src = _mm256_set1_epi64x(static_cast<long long>(b[j]));
      acc = _mm256_or_si256(acc, _mm256_and_si256(mask, src));
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), acc);
  }
  for (; i < n; ++i) {
    std::uint64_t bits = a[i];
    std::uint64_t acc = 0;
    while (bits) {
      acc |= b[std::countr_zero(bits)];
      bits &= bits - 1;
    }
    out[i] = acc;
  }
}

void or_row(const std::uint64_t* src, std::uint64_t* dst, std::size_t words) {
  std::size_t k = 0;
  for (; k + 4 <= words; k += 4) {
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + k));
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + k));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + k), _mm256_or_si256(d, s));
  }
  for (; k < words; ++k) dst[k] |= src[k];
}

void compose_avx2(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                  std::size_t n, std::size_t words) {
  if (words == 1) {
    compose_one_word(a, b, out, n);
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t* dst = out + i * words;
    for (std::size_t w = 0; w < words; ++w) dst[w] = 0;
    const std::uint64_t* row = a + i * words;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t bits = row[w];
      while (bits) {
        std::size_t j = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        or_row(b + j * words, dst, words);
      }
    }
  }
}

void and_avx2(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
              std::size_t count) {
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_and_si256(x, y));
  }
  for (; i < count; ++i) out[i] = a[i] & b[i];
}

void or_avx2(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
             std::size_t count) {
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_or_si256(x, y));
  }
  for (; i < count; ++i) out[i] = a[i] | b[i];
}

bool subset_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t count) {
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    // testc(y, x) is 1 iff (~y & x) == 0
    if (!_mm256_testc_si256(y, x)) return false;
  }
  for (; i < count; ++i) {
    if (a[i] & ~b[i]) return false;
  }
  return true;
}

}  // namespace

const BitRelKernels& avx2_table() {
  static const BitRelKernels k{"avx2", compose_avx2, and_avx2, or_avx2, subset_avx2};
  return k;
}

}  // namespace omrel::kernels::detail
