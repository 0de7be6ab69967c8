#pragma once
// The matrix-integral side of the graph/integral correspondence.
//
// Coordinates: M = Hom(V, A) carries one formal coordinate per (letter,
// algebra-basis) pair; the integration domain L is the span of the
// coordinates valued in the kernel of the model's partial inverse, one per
// (letter, kernel-vector) pair.  For the queer kind the letter parities
// enter reversed (the Hom source is the parity shift of V).
//
// Gaussian data: the quadratic form -1/2 trace(B^{-1}-paired [Lam, X] * X)
// restricted to the L-coordinates, stored as a graded-symmetric matrix Q,
// and its exact inverse P.  Each Wick pair contributes one power of h, so P
// entries are stored without the h and wick_expectation supplies h^{#pairs}.
//
// Polynomials: finite combinations of ordered products of L-coordinates
// with series coefficients; the canonical form sorts factors ascending with
// Koszul signs (squares of odd coordinates vanish).
//
// log_partition expands the normalized integral by Feynman rules: exp of
// the interaction polynomial (each action component weighted by
// h^{2g-2+i}), expectations term by term as sums over perfect matchings,
// then the series logarithm.  compare() puts that against the graph-side
// sum and calibrates the overall normalization constant from the lowest
// order where both sides are nonzero.

#include <cyclebv/action.hpp>
#include <cyclebv/amplitude.hpp>
#include <cyclebv/matrix_model.hpp>

#include <map>
#include <string>
#include <vector>

namespace cyclebv {

// One formal coordinate of L: letter v paired with kernel vector l.
struct FieldCoordinate {
  int v = 0;
  int l = 0;
  int parity = 0;
  std::string name;  // "<letter>:<kernel vector name>"
};

struct FieldSpace {
  int m_dim = 0;         // dim of the full coordinate space M
  int kernel_count = 0;  // kernel vectors per letter
  std::vector<FieldCoordinate> coords;  // the L-coordinates, letter-major

  int dim() const { return static_cast<int>(coords.size()); }
  int coord_index(int v, int l) const { return v * kernel_count + l; }
};

// Enumerates the L-coordinates with parities |v|+|l| (general linear kind)
// or (1-|v|)+|l| (queer kind).
FieldSpace build_field_space(const MatrixAlgebraModel& model,
                             const SuperBasis& vbasis);

struct GaussianData {
  std::vector<std::vector<RatFunc>> quadratic;   // Q, graded symmetric
  std::vector<std::vector<RatFunc>> propagator;  // P = Q^{-1} (implicit h)
};

// Assembles Q over the L-coordinates and inverts it.  Throws
// std::invalid_argument when the pairing parity does not match the model
// kind and std::runtime_error("Lagrangian not transverse") when Q is
// singular.
GaussianData gaussian_data(const MatrixAlgebraModel& model,
                           const SuperBasis& vbasis, const PairingForm& form,
                           const FieldSpace& space);

// Linear combination of canonically ordered coordinate monomials.
struct FieldPolynomial {
  std::map<std::vector<int>, CouplingSeries> terms;
  bool is_zero() const { return terms.empty(); }
};

// Adds coeff * (the given ordered product of coordinates), canonicalizing
// the factor order with Koszul signs; squares of odd coordinates vanish.
void add_polynomial_term(FieldPolynomial& poly, const FieldSpace& space,
                         std::vector<int> factors, const CouplingSeries& coeff);

FieldPolynomial polynomial_product(const FieldSpace& space,
                                   const FieldPolynomial& a,
                                   const FieldPolynomial& b);

// Translates the action: each cycle becomes the trace of the product of
// coordinate-valued kernel elements, a monomial of cycles the product of
// its cycles' traces, and the (g,i,n) component carries h^{2g-2+i}.
// Throws std::invalid_argument when the action flavor does not match the
// model kind.
FieldPolynomial build_action_polynomial(const GradedAction& s,
                                        const SuperBasis& vbasis,
                                        const MatrixAlgebraModel& model,
                                        const FieldSpace& space);

// Gaussian expectation of an ordered product of coordinates: the sum over
// perfect matchings of propagator entries times the Koszul sign of
// consuming the matched pairs, carrying h^{#pairs}.  Odd factor counts give
// zero.
CouplingSeries wick_expectation(const FieldSpace& space,
                                const GaussianData& gauss,
                                const std::vector<int>& factors);

// log of the normalized partition function through h^h_order with total
// coupling degree at most coupling_degree.  Every interaction term must
// carry at least one coupling power (otherwise the expansion cannot
// terminate and std::invalid_argument is thrown).
CouplingSeries log_partition(const GradedAction& s, const SuperBasis& vbasis,
                             const PairingForm& form,
                             const MatrixAlgebraModel& model, int h_order,
                             int coupling_degree);

struct CompareRow {
  SeriesKey key;
  RatFunc lhs;  // log-partition coefficient
  RatFunc rhs;  // graph-sum coefficient, before the constant
  bool matches = false;  // lhs == constant * rhs
};

struct CompareReport {
  RatFunc constant;              // 1 unless calibrated
  bool trivially_equal = false;  // both sides identically zero
  std::vector<CompareRow> rows;  // sorted by key

  bool all_match() const {
    for (const auto& r : rows)
      if (!r.matches) return false;
    return true;
  }
};

// Runs both sides to the same order (h_order = max_excess; the coupling
// bound is derived from the action) and reports per-key exact equality
// against the calibrated constant.  Mismatches are reported, never thrown.
CompareReport compare(const GradedAction& s, const SuperBasis& vbasis,
                      const PairingForm& form,
                      const MatrixAlgebraModel& model, int max_excess);

}  // namespace cyclebv
