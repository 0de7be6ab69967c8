#include <cyclebv/superspace.hpp>

#include <set>
#include <stdexcept>

namespace cyclebv {

int SuperBasis::index(const std::string& label) const {
  for (int i = 0; i < dim(); ++i)
    if (labels[i] == label) return i;
  throw std::invalid_argument("unknown basis letter: " + label);
}

void SuperBasis::validate() const {
  if (labels.size() != parities.size())
    throw std::invalid_argument("basis labels/parities size mismatch");
  if (labels.empty()) throw std::invalid_argument("empty basis");
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty()) throw std::invalid_argument("empty basis label");
    if (!seen.insert(l).second)
      throw std::invalid_argument("duplicate basis label: " + l);
  }
  for (int p : parities)
    if (p != 0 && p != 1)
      throw std::invalid_argument("basis parity must be 0 or 1");
}

int matrix_rank(std::vector<std::vector<Rational>> m) {
  const int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  const int cols = static_cast<int>(m[0].size());
  int rank = 0;
  int lead_row = 0;
  for (int c = 0; c < cols && lead_row < rows; ++c) {
    int pivot = -1;
    for (int r = lead_row; r < rows; ++r)
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[pivot], m[lead_row]);
    for (int r = lead_row + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[lead_row][c];
      for (int cc = c; cc < cols; ++cc) m[r][cc] -= f * m[lead_row][cc];
    }
    ++lead_row;
    ++rank;
  }
  return rank;
}

std::vector<std::vector<Rational>> invert_matrix(
    const std::vector<std::vector<Rational>>& input) {
  const int n = static_cast<int>(input.size());
  for (const auto& row : input)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("matrix is not square");
  // Gauss-Jordan on [M | I].
  std::vector<std::vector<Rational>> m = input;
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, 0));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r)
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw std::domain_error("matrix is singular");
    std::swap(m[pivot], m[c]);
    std::swap(inv[pivot], inv[c]);
    Rational p = m[c][c];
    for (int cc = 0; cc < n; ++cc) {
      m[c][cc] /= p;
      inv[c][cc] /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Rational f = m[r][c];
      for (int cc = 0; cc < n; ++cc) {
        m[r][cc] -= f * m[c][cc];
        inv[r][cc] -= f * inv[c][cc];
      }
    }
  }
  return inv;
}

std::string pairing_violation(const SuperBasis& basis,
                              const PairingForm& form) {
  basis.validate();
  const int n = basis.dim();
  if (form.dim() != n) return "pairing size does not match basis";
  for (const auto& row : form.entries)
    if (static_cast<int>(row.size()) != n)
      return "pairing matrix is not square";
  const int want = form.parity == FormParity::Odd ? 1 : 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (form.entries[i][j] == 0) continue;
      if ((basis.parity(i) + basis.parity(j)) % 2 != want)
        return "pairing couples letters of the wrong parities at (" +
               basis.label(i) + ", " + basis.label(j) + ")";
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int s = (basis.parity(i) * basis.parity(j)) % 2 == 1 ? -1 : 1;
      if (form.entries[i][j] != s * form.entries[j][i])
        return "pairing is not graded symmetric at (" + basis.label(i) + ", " +
               basis.label(j) + ")";
    }
  if (matrix_rank(form.entries) != n) return "pairing is degenerate";
  return "";
}

void validate_pairing(const SuperBasis& basis, const PairingForm& form) {
  std::string v = pairing_violation(basis, form);
  if (!v.empty()) throw std::invalid_argument(v);
}

std::vector<std::vector<Rational>> contraction_coefficients(
    const SuperBasis& basis, const PairingForm& form) {
  auto out = form.entries;
  if (form.parity == FormParity::Even) {
    for (int i = 0; i < basis.dim(); ++i) {
      int sign = (basis.parity(i) + 1) % 2 == 1 ? -1 : 1;
      for (auto& v : out[i]) v *= sign;
    }
  }
  return out;
}

}  // namespace cyclebv
