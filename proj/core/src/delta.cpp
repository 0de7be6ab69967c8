#include <cyclebv/delta.hpp>

namespace cyclebv {
namespace detail {

namespace {

struct Flattened {
  // One entry per symbol: markers (for the even-pairing flavor) and letters.
  std::vector<int> parities;
  // marker_at[c] = flattened index of cycle c's marker (-1 when absent).
  std::vector<int> marker_at;
  // letter_at[c][i] = flattened index of letter i of cycle c.
  std::vector<std::vector<int>> letter_at;
};

Flattened flatten(const CycleMonomial& mono, const SuperBasis& basis,
                  FormParity flavor) {
  Flattened f;
  const bool marker = cycles_carry_marker(flavor);
  f.marker_at.assign(mono.cycles.size(), -1);
  f.letter_at.resize(mono.cycles.size());
  for (std::size_t c = 0; c < mono.cycles.size(); ++c) {
    if (marker) {
      f.marker_at[c] = static_cast<int>(f.parities.size());
      f.parities.push_back(1);
    }
    for (int letter : mono.cycles[c].letters) {
      f.letter_at[c].push_back(static_cast<int>(f.parities.size()));
      f.parities.push_back(letter_parity(basis, flavor, letter));
    }
  }
  return f;
}

// Appends cycle t's symbols (marker + letters) to src.
void append_whole_cycle(const Flattened& f, int t, std::vector<int>& src) {
  if (f.marker_at[t] >= 0) src.push_back(f.marker_at[t]);
  for (int idx : f.letter_at[t]) src.push_back(idx);
}

// Letters of cycle c from position a to position b inclusive, cyclically.
std::vector<int> arc_positions(int len, int a, int b) {
  std::vector<int> out;
  int i = ((a % len) + len) % len;
  b = ((b % len) + len) % len;
  while (true) {
    out.push_back(i);
    if (i == b) break;
    i = (i + 1) % len;
  }
  return out;
}

void emit(std::vector<SurgeryTerm>& out, const SuperBasis& basis,
          FormParity flavor, const std::vector<CyclicWord>& raw_cycles,
          Rational coeff) {
  // Normalize each output cycle, then the cycle list.
  std::vector<CyclicWord> canon;
  canon.reserve(raw_cycles.size());
  for (const auto& w : raw_cycles) {
    NormalizedWord nw = normalize_cyclic(w.letters, basis, flavor);
    if (nw.zero) return;
    coeff *= nw.sign;
    canon.push_back(nw.word);
  }
  NormalizedMonomial nm = normalize_monomial(canon, basis, flavor);
  if (nm.zero) return;
  coeff *= nm.sign;
  if (coeff != 0) out.push_back({nm.mono, coeff});
}

}  // namespace

std::vector<SurgeryTerm> surgery_terms(
    const CycleMonomial& mono, const SuperBasis& basis,
    const std::vector<std::vector<Rational>>& b, FormParity flavor,
    SurgeryPart part) {
  std::vector<SurgeryTerm> out;
  const int m = static_cast<int>(mono.cycles.size());
  const Flattened f = flatten(mono, basis, flavor);

  if (part != SurgeryPart::Split) {
    // Joins: unordered cycle pairs k < l, one letter on each.
    for (int k = 0; k < m; ++k) {
      const auto& ck = mono.cycles[k].letters;
      const int rk = static_cast<int>(ck.size());
      for (int l = k + 1; l < m; ++l) {
        const auto& cl = mono.cycles[l].letters;
        const int rl = static_cast<int>(cl.size());
        if (rk == 1 && rl == 1) continue;  // empty output cycle: dropped
        for (int p = 0; p < rk; ++p) {
          for (int q = 0; q < rl; ++q) {
            Rational c0 = b[ck[p]][cl[q]];
            if (c0 == 0) continue;
            // Target order: consumed symbols first, then the surviving
            // symbols in the layout of the result.
            std::vector<int> src = {f.letter_at[k][p], f.letter_at[l][q]};
            if (f.marker_at[l] >= 0) src.push_back(f.marker_at[l]);
            std::vector<CyclicWord> result;
            for (int t = 0; t < m; ++t) {
              if (t == l) continue;
              if (t != k) {
                append_whole_cycle(f, t, src);
                result.push_back(mono.cycles[t]);
                continue;
              }
              if (f.marker_at[k] >= 0) src.push_back(f.marker_at[k]);
              CyclicWord merged;
              if (rk > 1)
                for (int pos : arc_positions(rk, p + 1, p - 1)) {
                  src.push_back(f.letter_at[k][pos]);
                  merged.letters.push_back(ck[pos]);
                }
              if (rl > 1)
                for (int pos : arc_positions(rl, q + 1, q - 1)) {
                  src.push_back(f.letter_at[l][pos]);
                  merged.letters.push_back(cl[pos]);
                }
              result.push_back(merged);
            }
            int sign = koszul_reorder_sign(src, f.parities);
            emit(out, basis, flavor, result, c0 * sign);
          }
        }
      }
    }
  }

  if (part != SurgeryPart::Join) {
    // Splits: ordered letter pairs (p, q) on one cycle, cyclic distance >= 2.
    for (int k = 0; k < m; ++k) {
      const auto& ck = mono.cycles[k].letters;
      const int r = static_cast<int>(ck.size());
      for (int p = 0; p < r; ++p) {
        for (int q = 0; q < r; ++q) {
          if (q == p || q == (p + 1) % r || q == (p + r - 1) % r) continue;
          Rational c0 = b[ck[p]][ck[q]];
          if (c0 == 0) continue;
          std::vector<int> src = {f.letter_at[k][p], f.letter_at[k][q]};
          std::vector<CyclicWord> result;
          int parity_before_fresh = 0;
          for (int t = 0; t < m; ++t) {
            if (t != k) {
              append_whole_cycle(f, t, src);
              result.push_back(mono.cycles[t]);
              if (t < k) {
                if (f.marker_at[t] >= 0) ++parity_before_fresh;
                for (int letter : mono.cycles[t].letters)
                  parity_before_fresh += letter_parity(basis, flavor, letter);
              }
              continue;
            }
            if (f.marker_at[k] >= 0) {
              src.push_back(f.marker_at[k]);
              ++parity_before_fresh;
            }
            CyclicWord out_arc, in_arc;
            for (int pos : arc_positions(r, q + 1, p - 1)) {
              src.push_back(f.letter_at[k][pos]);
              out_arc.letters.push_back(ck[pos]);
              parity_before_fresh += letter_parity(basis, flavor, ck[pos]);
            }
            // The fresh marker of the second output cycle sits here; it is
            // not part of the reordering (it never existed before), it only
            // contributes the Koszul factor for the symbols it follows.
            for (int pos : arc_positions(r, p + 1, q - 1)) {
              src.push_back(f.letter_at[k][pos]);
              in_arc.letters.push_back(ck[pos]);
            }
            result.push_back(out_arc);
            result.push_back(in_arc);
          }
          int sign = koszul_reorder_sign(src, f.parities);
          if (cycles_carry_marker(flavor) && parity_before_fresh % 2 == 1)
            sign = -sign;
          emit(out, basis, flavor, result, c0 * sign);
        }
      }
    }
  }

  return out;
}

}  // namespace detail

std::vector<SurgeryTerm> second_order_terms(
    const CycleMonomial& mono, const SuperBasis& basis,
    const std::vector<std::vector<Rational>>& contraction, FormParity flavor) {
  return detail::surgery_terms(mono, basis, contraction, flavor,
                               detail::SurgeryPart::Both);
}

std::vector<SurgeryTerm> join_terms(
    const CycleMonomial& mono, const SuperBasis& basis,
    const std::vector<std::vector<Rational>>& contraction, FormParity flavor) {
  return detail::surgery_terms(mono, basis, contraction, flavor,
                               detail::SurgeryPart::Join);
}

std::vector<SurgeryTerm> split_terms(
    const CycleMonomial& mono, const SuperBasis& basis,
    const std::vector<std::vector<Rational>>& contraction, FormParity flavor) {
  return detail::surgery_terms(mono, basis, contraction, flavor,
                               detail::SurgeryPart::Split);
}

}  // namespace cyclebv
