#include <doctest.h>

#include <cyclebv/signs.hpp>

#include <algorithm>
#include <numeric>
#include <random>

using namespace cyclebv;

namespace {

// Independent oracle: perform the reordering by adjacent transpositions and
// multiply (-1) whenever two odd symbols swap.
int bubble_sign_oracle(std::vector<int> src, const std::vector<int>& parities) {
  int sign = 1;
  for (std::size_t i = 0; i < src.size(); ++i) {
    for (std::size_t j = 0; j + 1 < src.size() - i; ++j) {
      if (src[j] > src[j + 1]) {
        if (parities[src[j]] == 1 && parities[src[j + 1]] == 1) sign = -sign;
        std::swap(src[j], src[j + 1]);
      }
    }
  }
  return sign;
}

}  // namespace

TEST_SUITE("signs") {

TEST_CASE("basic swaps") {
  CHECK(koszul_reorder_sign({0, 1}, {1, 1}) == 1);
  CHECK(koszul_reorder_sign({1, 0}, {1, 1}) == -1);
  CHECK(koszul_reorder_sign({1, 0}, {1, 0}) == 1);
  CHECK(koszul_reorder_sign({1, 0}, {0, 1}) == 1);
  CHECK(block_swap_sign(1, 1) == -1);
  CHECK(block_swap_sign(1, 0) == 1);
}

TEST_CASE("partial reorderings (consumed symbols listed first)") {
  // Extract position 2 to the front of [o o o]: two odd inversions.
  CHECK(koszul_reorder_sign({2, 0, 1}, {1, 1, 1}) == 1);
  CHECK(koszul_reorder_sign({2}, {1, 1, 1}) == 1);
  CHECK(koszul_reorder_sign({1}, {1, 1, 1}) == 1);
}

TEST_CASE("rotation signs") {
  // One odd letter moved past one odd letter.
  CHECK(rotation_sign({1, 1}, 1) == -1);
  // One odd letter moved past two odd letters: (-1)^2.
  CHECK(rotation_sign({1, 1, 1}, 1) == 1);
  // No odd letters: always +1.
  CHECK(rotation_sign({0, 0, 0}, 2) == 1);
}

TEST_CASE("agrees with the adjacent-transposition oracle (randomized)") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> len_d(1, 9);
    int n = len_d(rng);
    std::vector<int> src(n);
    std::iota(src.begin(), src.end(), 0);
    std::shuffle(src.begin(), src.end(), rng);
    std::vector<int> parities(n);
    std::uniform_int_distribution<int> bit(0, 1);
    for (auto& p : parities) p = bit(rng);
    CHECK(koszul_reorder_sign(src, parities) ==
          bubble_sign_oracle(src, parities));
  }
}

TEST_CASE("composition multiplies signs") {
  std::mt19937 rng(515);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 7;
    std::vector<int> sigma(n), tau(n), parities(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::iota(tau.begin(), tau.end(), 0);
    std::shuffle(sigma.begin(), sigma.end(), rng);
    std::shuffle(tau.begin(), tau.end(), rng);
    std::uniform_int_distribution<int> bit(0, 1);
    for (auto& p : parities) p = bit(rng);
    // Apply sigma, then tau on the result.
    std::vector<int> composed(n), parities_after_sigma(n);
    for (int j = 0; j < n; ++j) {
      composed[j] = sigma[tau[j]];
      parities_after_sigma[j] = parities[sigma[j]];
    }
    int lhs = koszul_reorder_sign(composed, parities);
    int rhs = koszul_reorder_sign(sigma, parities) *
              koszul_reorder_sign(tau, parities_after_sigma);
    CHECK(lhs == rhs);
  }
}

}  // TEST_SUITE
