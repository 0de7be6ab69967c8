#pragma once
// Graded actions: families S_{g,i,n} of even elements (i cycles, n letters
// per monomial), their assembly into a single h-weighted element, and the
// master-equation residual  h * D(S) + 1/2 {S, S}.

#include <cyclebv/delta.hpp>

#include <map>

namespace cyclebv {

struct ActionKey {
  int g = 0;  // genus weight, >= 0
  int i = 1;  // cycle count, >= 1
  int n = 1;  // total letters, >= 1
  bool operator<(const ActionKey& o) const {
    if (g != o.g) return g < o.g;
    if (i != o.i) return i < o.i;
    return n < o.n;
  }
  bool operator==(const ActionKey& o) const {
    return g == o.g && i == o.i && n == o.n;
  }
  // The h-weight exponent of this component in the assembled action.
  int h_weight() const { return 2 * g - 1 + i; }
};

struct GradedAction {
  FormParity flavor = FormParity::Even;
  std::map<ActionKey, BVElement> components;

  // Grading rules: g >= 0, i >= 1, n >= 1; the keys (0,1,1) and (0,1,2) are
  // forbidden; every monomial of the component at (g,i,n) has exactly i
  // cycles, n letters in total, and even total parity.  Throws
  // std::invalid_argument otherwise.
  void validate(const SuperBasis& basis) const;

  // Sum of h^{2g-1+i} * S_{g,i,n} with the given series window.
  BVElement assembled(const SuperBasis& basis, int h_min, int h_max,
                      int coupling_cutoff = -1) const;
};

// Applies h^k to every coefficient.
BVElement shift_h(const BVElement& e, int k);

// h * D(S) + 1/2 {S,S}, with coefficients windowed to h-exponents in
// [-order, order].  Exactly zero (through the window) iff S solves the
// master equation at these orders.
BVElement qme_residual(const GradedAction& S, const SuperBasis& basis,
                       const PairingForm& form, int order);

}  // namespace cyclebv
