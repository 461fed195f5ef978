#include "omrel/bitrel.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "omrel/kernels.hpp"

namespace omrel {

BitRel::BitRel(std::size_t base)
    : base_(base), words_((base + 63) / 64), bits_(base * ((base + 63) / 64), 0) {}

BitRel BitRel::identity(std::size_t base) {
  BitRel r(base);
  for (std::size_t i = 0; i < base; ++i) r.set(i, i);
  return r;
}

BitRel BitRel::full(std::size_t base) {
  BitRel r(base);
  for (std::size_t i = 0; i < base; ++i) {
    for (std::size_t j = 0; j < base; ++j) r.set(i, j);
  }
  return r;
}

BitRel BitRel::from_pairs(std::size_t base,
                          std::span<const std::pair<std::size_t, std::size_t>> pairs) {
  BitRel r(base);
  for (auto [u, v] : pairs) {
    if (u >= base || v >= base) throw std::out_of_range("pair outside the base");
    r.set(u, v);
  }
  return r;
}

void BitRel::set(std::size_t u, std::size_t v, bool value) {
  std::uint64_t& w = bits_[u * words_ + v / 64];
  std::uint64_t mask = std::uint64_t{1} << (v % 64);
  w = value ? (w | mask) : (w & ~mask);
}

bool BitRel::empty() const {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t BitRel::count() const {
  std::size_t c = 0;
  for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<std::pair<std::size_t, std::size_t>> BitRel::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < base_; ++u) {
    for (std::size_t v = 0; v < base_; ++v) {
      if (test(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

namespace {
void require_same_base(const BitRel& a, const BitRel& b) {
  if (a.base() != b.base()) throw std::invalid_argument("relations over different bases");
}
}  // namespace

BitRel BitRel::compose(const BitRel& other) const {
  require_same_base(*this, other);
  BitRel out(base_);
  kernels::active().compose(bits_.data(), other.bits_.data(), out.bits_.data(), base_, words_);
  return out;
}

BitRel BitRel::operator&(const BitRel& other) const {
  require_same_base(*this, other);
  BitRel out(base_);
  kernels::active().bit_and(bits_.data(), other.bits_.data(), out.bits_.data(), bits_.size());
  return out;
}

BitRel BitRel::operator|(const BitRel& other) const {
  require_same_base(*this, other);
  BitRel out(base_);
  kernels::active().bit_or(bits_.data(), other.bits_.data(), out.bits_.data(), bits_.size());
  return out;
}

bool BitRel::subset_of(const BitRel& other) const {
  require_same_base(*this, other);
  return kernels::active().subset(bits_.data(), other.bits_.data(), bits_.size());
}

std::size_t BitRel::hash() const {
  std::size_t h = base_ * 0x9e3779b97f4a7c15ULL;
  for (auto w : bits_) h = (h ^ w) * 0x100000001b3ULL + (h >> 29);
  return h;
}

std::strong_ordering operator<=>(const BitRel& a, const BitRel& b) {
  if (auto c = a.base_ <=> b.base_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.bits_.begin(), a.bits_.end(), b.bits_.begin(),
                                                b.bits_.end());
}

}  // namespace omrel
