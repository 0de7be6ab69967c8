#include <cyclebv/signs.hpp>

#include <stdexcept>

namespace cyclebv {

int koszul_reorder_sign(const std::vector<int>& src,
                        const std::vector<int>& parities) {
  const std::size_t n = src.size();
  int inversions = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const int pj = src[j];
    if (pj < 0 || pj >= static_cast<int>(parities.size()))
      throw std::out_of_range("reorder source index out of range");
    if (parities[pj] == 0) continue;
    for (std::size_t k = j + 1; k < n; ++k) {
      const int pk = src[k];
      if (pj > pk && parities[pk] != 0) ++inversions;
    }
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

int rotation_sign(const std::vector<int>& parities, int k) {
  const int n = static_cast<int>(parities.size());
  if (n == 0) return 1;
  if (k < 0 || k >= n) throw std::out_of_range("rotation offset out of range");
  std::vector<int> src(n);
  for (int j = 0; j < n; ++j) src[j] = (k + j) % n;
  return koszul_reorder_sign(src, parities);
}

int block_swap_sign(int left_parity, int right_parity) {
  // [A, B] -> [B, A] with block parities realized as single symbols.
  std::vector<int> src = {1, 0};
  std::vector<int> parities = {left_parity % 2, right_parity % 2};
  return koszul_reorder_sign(src, parities);
}

}  // namespace cyclebv
