#include <bit>

#include "omrel/kernels.hpp"

namespace omrel::kernels {

namespace {

void compose_scalar(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                    std::size_t n, std::size_t words) {
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t* dst = out + i * words;
    for (std::size_t w = 0; w < words; ++w) dst[w] = 0;
    const std::uint64_t* row = a + i * words;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t bits = row[w];
      while (bits) {
        std::size_t j = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        const std::uint64_t* src = b + j * words;
        for (std::size_t k = 0; k < words; ++k) dst[k] |= src[k];
      }
    }
  }
}

void and_scalar(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) out[i] = a[i] & b[i];
}

void or_scalar(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
               std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) out[i] = a[i] | b[i];
}

bool subset_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    if (a[i] & ~b[i]) return false;
  }
  return true;
}

}  // namespace

const BitRelKernels& scalar() {
  static const BitRelKernels k{"scalar", compose_scalar, and_scalar, or_scalar, subset_scalar};
  return k;
}

}  // namespace omrel::kernels
