#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "omrel/bitrel.hpp"
#include "omrel/kernels.hpp"

using namespace omrel;

namespace {

std::vector<std::uint64_t> random_matrix(std::mt19937_64& rng, std::size_t n, std::size_t words,
                                         double density) {
  std::bernoulli_distribution coin(density);
  std::vector<std::uint64_t> m(n * words, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (coin(rng)) m[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
    }
  }
  return m;
}

// Triple loop over individual bits.
std::vector<std::uint64_t> compose_oracle(const std::vector<std::uint64_t>& a,
                                          const std::vector<std::uint64_t>& b, std::size_t n,
                                          std::size_t words) {
  auto bit = [&](const std::vector<std::uint64_t>& m, std::size_t i, std::size_t j) {
    return (m[i * words + j / 64] >> (j % 64)) & 1U;
  };
  std::vector<std::uint64_t> out(n * words, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (bit(a, i, k) && bit(b, k, j)) {
          out[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
          break;
        }
      }
    }
  }
  return out;
}

std::vector<const kernels::BitRelKernels*> variants() {
  std::vector<const kernels::BitRelKernels*> v{&kernels::scalar()};
  if (const auto* k = kernels::avx2()) v.push_back(k);
  return v;
}

}  // namespace

TEST_CASE("active kernel is one of the variants") {
  const auto& a = kernels::active();
  bool found = false;
  for (const auto* k : variants()) found = found || k == &a;
  CHECK(found);
  MESSAGE("active kernels: " << a.name);
}

TEST_CASE("compose matches the triple-loop oracle for every variant") {
  std::mt19937_64 rng(3);
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 13u, 31u, 63u, 64u, 65u, 100u, 130u, 257u}) {
    std::size_t words = (n + 63) / 64;
    for (double density : {0.05, 0.3, 0.8}) {
      auto a = random_matrix(rng, n, words, density);
      auto b = random_matrix(rng, n, words, density);
      auto expected = compose_oracle(a, b, n, words);
      for (const auto* k : variants()) {
        std::vector<std::uint64_t> out(n * words, ~std::uint64_t{0});
        k->compose(a.data(), b.data(), out.data(), n, words);
        CHECK_MESSAGE(out == expected, k->name << " n=" << n);
      }
    }
  }
}

TEST_CASE("and/or/subset agree across variants") {
  std::mt19937_64 rng(5);
  for (std::size_t count : {0u, 1u, 3u, 4u, 5u, 8u, 17u, 64u}) {
    for (int rep = 0; rep < 20; ++rep) {
      auto a = random_matrix(rng, count, 1, 0.5);
      auto b = random_matrix(rng, count, 1, 0.5);
      std::vector<std::uint64_t> ref_and(count), ref_or(count);
      kernels::scalar().bit_and(a.data(), b.data(), ref_and.data(), count);
      kernels::scalar().bit_or(a.data(), b.data(), ref_or.data(), count);
      for (std::size_t i = 0; i < count; ++i) {
        CHECK(ref_and[i] == (a[i] & b[i]));
        CHECK(ref_or[i] == (a[i] | b[i]));
      }
      for (const auto* k : variants()) {
        std::vector<std::uint64_t> x(count), y(count);
        k->bit_and(a.data(), b.data(), x.data(), count);
        k->bit_or(a.data(), b.data(), y.data(), count);
        CHECK(x == ref_and);
        CHECK(y == ref_or);
        CHECK(k->subset(ref_and.data(), a.data(), count));
        CHECK(k->subset(a.data(), ref_or.data(), count));
        CHECK(k->subset(a.data(), b.data(), count) ==
              kernels::scalar().subset(a.data(), b.data(), count));
      }
    }
  }
}

TEST_CASE("BitRel basics") {
  BitRel id = BitRel::identity(3);
  CHECK(id.count() == 3);
  CHECK(id.compose(id) == id);
  BitRel r(3);
  r.set(0, 1);
  r.set(1, 2);
  BitRel rr = r.compose(r);
  CHECK(rr.pairs() == std::vector<std::pair<std::size_t, std::size_t>>{{0, 2}});
  CHECK((r & id).empty());
  CHECK(r.subset_of(r | id));
  CHECK_FALSE((r | id).subset_of(r));
  CHECK(BitRel::full(70).count() == 4900);
  CHECK(BitRel::full(70).compose(BitRel::identity(70)) == BitRel::full(70));
}
