#pragma once
// Finite-dimensional graded vector spaces with a choice of homogeneous basis,
// and graded symmetric pairings on them.
//
// A pairing has a declared parity flag: an "even" pairing couples letters of
// equal parity, an "odd" pairing couples letters of opposite parity.  In
// both cases the coefficient matrix satisfies B[i][j] = (-1)^{p_i p_j} B[j][i]
// and must be nondegenerate.

#include <cyclebv/rational.hpp>

#include <string>
#include <vector>

namespace cyclebv {

struct SuperBasis {
  std::vector<std::string> labels;
  std::vector<int> parities;  // 0 or 1 per basis letter

  int dim() const { return static_cast<int>(labels.size()); }
  int parity(int i) const { return parities.at(i); }
  const std::string& label(int i) const { return labels.at(i); }
  // Index of a label; throws std::invalid_argument if absent.
  int index(const std::string& label) const;
  // Throws std::invalid_argument on duplicate labels / bad parities.
  void validate() const;
};

enum class FormParity { Even, Odd };

struct PairingForm {
  FormParity parity = FormParity::Even;
  std::vector<std::vector<Rational>> entries;

  int dim() const { return static_cast<int>(entries.size()); }
};

// Returns a description of the first violated invariant (shape, homogeneity
// w.r.t. the declared parity, graded symmetry, nondegeneracy), or the empty
// string when the pairing is valid.
std::string pairing_violation(const SuperBasis& basis, const PairingForm& form);

// Same checks; throws std::invalid_argument with the description.
void validate_pairing(const SuperBasis& basis, const PairingForm& form);

// Inverse matrix C with sum_b C[a][b] * B[b][c] = delta_{ac}; requires a
// square nondegenerate input.
std::vector<std::vector<Rational>> invert_matrix(
    const std::vector<std::vector<Rational>>& m);

// Exact rank by fraction-free elimination.
int matrix_rank(std::vector<std::vector<Rational>> m);

// The coefficients actually used by the second-order operator for each word
// flavor.  For even pairings the letters of a word live in the
// parity-reversed copy of the space and the pairing coefficients pick up a
// letter-dependent sign: b[i][j] = (-1)^{p_i + 1} B[i][j].  For odd pairings
// the coefficients are used as stored.
std::vector<std::vector<Rational>> contraction_coefficients(
    const SuperBasis& basis, const PairingForm& form);

}  // namespace cyclebv
