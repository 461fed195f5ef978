#include <cstdlib>
#include <cstring>

#include "omrel/kernels.hpp"

namespace omrel::kernels {

#if defined(OMREL_HAVE_AVX2)
namespace detail {
const BitRelKernels& avx2_table();
}
#endif

const BitRelKernels* avx2() {
#if defined(OMREL_HAVE_AVX2)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
  }();
  if (supported) return &detail::avx2_table();
#endif
  return nullptr;
}

const BitRelKernels& active() {
  static const BitRelKernels* chosen = [] {
    const char* forced = std::getenv("OMREL_KERNELS");
    if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return &scalar();
    if (const auto* k = avx2()) return k;
    return &scalar();
  }();
  return *chosen;
}

}  // namespace omrel::kernels
