#include <cyclebv/cyclic.hpp>

#include <algorithm>
#include <numeric>

namespace cyclebv {

int word_parity(const CyclicWord& w, const SuperBasis& basis,
                FormParity flavor) {
  int p = cycles_carry_marker(flavor) ? 1 : 0;
  for (int letter : w.letters) p += letter_parity(basis, flavor, letter);
  return p % 2;
}

NormalizedWord normalize_cyclic(const std::vector<int>& letters,
                                const SuperBasis& basis, FormParity flavor) {
  if (letters.empty())
    throw std::invalid_argument("cyclic words must have at least one letter");
  const int n = static_cast<int>(letters.size());
  std::vector<int> parities(n);
  for (int i = 0; i < n; ++i)
    parities[i] = letter_parity(basis, flavor, letters[i]);

  auto rotated = [&](int k) {
    std::vector<int> r(n);
    for (int j = 0; j < n; ++j) r[j] = letters[(k + j) % n];
    return r;
  };

  int best_k = 0;
  std::vector<int> best = rotated(0);
  for (int k = 1; k < n; ++k) {
    std::vector<int> cand = rotated(k);
    if (cand < best) {
      best = cand;
      best_k = k;
    }
  }

  NormalizedWord out;
  out.word.letters = best;
  out.sign = rotation_sign(parities, best_k);
  // Rotations that reproduce the canonical sequence must all carry the same
  // sign; otherwise the word cancels itself.
  for (int k = 0; k < n; ++k) {
    if (k == best_k) continue;
    if (rotated(k) == best && rotation_sign(parities, k) != out.sign) {
      out.zero = true;
      break;
    }
  }
  return out;
}

int monomial_parity(const CycleMonomial& m, const SuperBasis& basis,
                    FormParity flavor) {
  int p = 0;
  for (const auto& c : m.cycles) p += word_parity(c, basis, flavor);
  return p % 2;
}

NormalizedMonomial normalize_monomial(const std::vector<CyclicWord>& cycles,
                                      const SuperBasis& basis,
                                      FormParity flavor) {
  const int m = static_cast<int>(cycles.size());
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return cycles[a] < cycles[b];
  });

  std::vector<int> parities(m);
  for (int i = 0; i < m; ++i)
    parities[i] = word_parity(cycles[i], basis, flavor);

  NormalizedMonomial out;
  out.sign = koszul_reorder_sign(order, parities);
  out.mono.cycles.reserve(m);
  for (int i = 0; i < m; ++i) out.mono.cycles.push_back(cycles[order[i]]);
  for (int i = 0; i + 1 < m; ++i) {
    if (out.mono.cycles[i] == out.mono.cycles[i + 1] &&
        word_parity(out.mono.cycles[i], basis, flavor) == 1) {
      out.zero = true;
      break;
    }
  }
  return out;
}

std::string monomial_to_string(const CycleMonomial& m,
                               const SuperBasis& basis) {
  if (m.cycles.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < m.cycles.size(); ++i) {
    if (i) out += " ";
    out += "(";
    for (std::size_t j = 0; j < m.cycles[i].letters.size(); ++j) {
      if (j) out += " ";
      out += basis.label(m.cycles[i].letters[j]);
    }
    out += ")^c";
  }
  return out;
}

}  // namespace cyclebv
