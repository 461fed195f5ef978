#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace omrel {

/// Binary relation on {0..n-1} as a row-major bit matrix.
class BitRel {
 public:
  BitRel() = default;
  explicit BitRel(std::size_t base);

  static BitRel identity(std::size_t base);
  static BitRel full(std::size_t base);
  static BitRel from_pairs(std::size_t base,
                           std::span<const std::pair<std::size_t, std::size_t>> pairs);

  std::size_t base() const { return base_; }
  std::size_t words_per_row() const { return words_; }
  std::span<const std::uint64_t> words() const { return bits_; }

  bool test(std::size_t u, std::size_t v) const {
    return (bits_[u * words_ + v / 64] >> (v % 64)) & 1U;
  }
  void set(std::size_t u, std::size_t v, bool value = true);

  bool empty() const;
  std::size_t count() const;
  /// Pairs in row-major order.
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;

  BitRel compose(const BitRel& other) const;
  BitRel operator&(const BitRel& other) const;
  BitRel operator|(const BitRel& other) const;
  bool subset_of(const BitRel& other) const;

  std::size_t hash() const;
  friend bool operator==(const BitRel&, const BitRel&) = default;
  friend std::strong_ordering operator<=>(const BitRel& a, const BitRel& b);

 private:
  std::size_t base_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct BitRelHash {
  std::size_t operator()(const BitRel& r) const { return r.hash(); }
};

}  // namespace omrel
