#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <thread>
#include <vector>

namespace omrel {

/// Runs fn(i) for every i in [0, count) on up to hardware_concurrency threads.
/// fn must only write to per-index state.
template <class F>
void parallel_for(std::size_t count, F&& fn, std::size_t min_per_thread = 64) {
  std::size_t hw = std::max<unsigned>(1, std::thread::hardware_concurrency());
  std::size_t threads = std::min(hw, (count + min_per_thread - 1) / min_per_thread);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

/// splitmix64 finalizer; derives independent per-index seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace omrel
