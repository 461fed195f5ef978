#pragma once

// Bit-matrix kernels behind BitRel. A relation on an n-element base is stored
// row-major, `words` 64-bit words per row; bit j of row i is the pair (i, j).
// Padding bits past column n are always zero.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace omrel::kernels {

struct BitRelKernels {
  std::string_view name;
  // out = a ; b (relational composition). out must not alias a or b.
  void (*compose)(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                  std::size_t n, std::size_t words);
  void (*bit_and)(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                  std::size_t count);
  void (*bit_or)(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                 std::size_t count);
  // a is a subset of b
  bool (*subset)(const std::uint64_t* a, const std::uint64_t* b, std::size_t count);
};

const BitRelKernels& scalar();
/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2.
const BitRelKernels* avx2();

/// Kernels used by BitRel: AVX2 when available, else scalar. The environment
/// variable OMREL_KERNELS=scalar forces the reference path.
const BitRelKernels& active();

}  // namespace omrel::kernels
