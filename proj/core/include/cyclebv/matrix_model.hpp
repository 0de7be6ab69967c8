#pragma once
// Finite-dimensional trace algebras A with an odd element Lam, the odd
// derivation [Lam, .], and a nilpotent partial inverse of it.  Two kinds:
//
//  - gl kind: A = End(k^{d|d}) with the supertrace.  Basis: matrix units
//    u(r,c), 0 <= r,c < 2d, of parity part(r)+part(c) where part(r) = [r >= d].
//    Lam has identity entries in the (top, bottom) block and diag(l1..ld) in
//    the (bottom, top) block.  The partial inverse sends the two diagonal
//    blocks into the top-right block and the bottom-left block back to the
//    difference of the diagonal blocks, scaled by 1/(l_i + l_j); the
//    top-right block is its kernel together with the trace-free diagonal.
//
//  - q kind: A = pairs (even half, odd half) of N x N matrices, the
//    subalgebra of End(k^N + shifted k^N) commuting with the odd involution
//    that swaps the two summands.  Basis: E(i,j) even and PE(i,j) odd with
//    (A,B)*(A',B') = (AA'+BB', AB'+BA').  The odd trace otr(A,B) = tr(B).
//    Lam = P diag(l1..lN); the partial inverse sends E(i,j) to
//    PE(i,j)/(l_i+l_j) and kills every PE(i,j).
//
// Construction verifies, exactly and on every basis element, that the
// anticommutator of [Lam, .] with the partial inverse is the identity and
// that the partial inverse squares to zero.  Vanishing l_i + l_j is a
// "propagator pole" error.

#include <cyclebv/ratfunc.hpp>

#include <string>
#include <utility>
#include <vector>

namespace cyclebv {

enum class ModelKind { GeneralLinear, Queer };

// A linear combination of algebra basis elements.
using AlgebraVector = std::vector<std::pair<int, RatFunc>>;

// A basis vector of the kernel of the partial inverse, as a rational
// combination of algebra basis elements (homogeneous in parity).
struct KernelVector {
  std::string name;
  int parity = 0;
  std::vector<std::pair<int, Rational>> components;
};

struct MatrixAlgebraModel {
  ModelKind kind = ModelKind::Queer;
  int size = 0;                 // d for gl, N for q
  std::vector<RatFunc> lambda;  // size entries; generators l1.. when symbolic
  bool symbolic = true;

  int dim = 0;                     // 4d^2 or 2N^2
  std::vector<int> parities;       // per basis element
  std::vector<std::string> names;  // per basis element

  // product_table[a*dim + b] is the basis index of f_a * f_b, or -1 when the
  // product vanishes (products of basis elements never need coefficients).
  std::vector<int> product_table;
  // Trace functional per basis element (supertrace for gl, odd trace for q).
  std::vector<Rational> trace_values;

  // The derivation [Lam, .] and its nilpotent partial inverse, as columns of
  // sparse (target, coefficient) entries.
  std::vector<AlgebraVector> bracket_with_lambda;
  std::vector<AlgebraVector> partial_inverse;

  // Basis of ker(partial_inverse); its span is half the algebra in the gl
  // case and the odd half in the q case.
  std::vector<KernelVector> kernel_basis;

  // Dual basis for the trace pairing: the dual of f_a is
  // dual_sign[a] * f_{dual_index[a]}, with trace(f_a * dual(f_b)) = delta_ab.
  std::vector<int> dual_index;
  std::vector<Rational> dual_sign;

  int parity(int a) const { return parities.at(a); }
  int product_index(int a, int b) const { return product_table[a * dim + b]; }
  const Rational& trace_of(int a) const { return trace_values.at(a); }

  // Applies a sparse map (bracket_with_lambda / partial_inverse) to a vector.
  AlgebraVector apply(const std::vector<AlgebraVector>& map,
                      const AlgebraVector& x) const;

  // Trace of the product of two basis elements (the trace pairing).
  RatFunc pair_basis(int a, int b) const;

  std::string describe() const;  // one-line summary for reports
};

// Builds and fully validates a model.  An empty `lambda` means symbolic
// values l1..l_size; explicit values must satisfy l_i + l_j != 0 for all
// i, j (else PoleError "propagator pole").  Throws std::invalid_argument for
// a non-positive size and std::logic_error if a construction self-check
// fails.
MatrixAlgebraModel build_model(ModelKind kind, int size,
                               const std::vector<RatFunc>& lambda = {});

// The two-slot tensor K = sum_a partial_inverse(f_a) (x) dual(f_a), stored
// as sparse rows: entries[a] lists (b, coefficient) for the f_a (x) f_b
// component.  Contracting x through the dual slot (the second factor) via
// the trace pairing reproduces partial_inverse(x) exactly; the analogous
// first-slot contraction differs by the parity-dependent adjointness defect
// of the partial inverse (see adjointness_defect_count).
struct PropagatorTensor {
  int dim = 0;
  std::vector<std::vector<std::pair<int, RatFunc>>> entries;

  RatFunc entry(int a, int b) const;
  // All nonzero components as ((a, b), coefficient), row-major.
  std::vector<std::pair<std::pair<int, int>, RatFunc>> nonzero() const;
};

PropagatorTensor propagator_tensor(const MatrixAlgebraModel& model);

// sum_{a,b} K[a][b] * trace(x * f_b) * f_a: contracting x through the dual
// slot, which must reproduce the partial inverse of x.
AlgebraVector contract_dual_slot(const MatrixAlgebraModel& model,
                                 const PropagatorTensor& k, int x);

// Diagnostic: the number of basis pairs (a, b) for which the partial
// inverse fails to be plainly self-adjoint for the trace pairing, i.e.
// trace(partial_inverse(a) * b) != trace(a * partial_inverse(b)).  Zero for
// the q kind; nonzero for gl, where the defect depends on the parities.
int adjointness_defect_count(const MatrixAlgebraModel& model);

// Exact inverse of a square RatFunc matrix; throws std::runtime_error with
// the given message when the matrix is singular.
std::vector<std::vector<RatFunc>> invert_ratfunc_matrix(
    const std::vector<std::vector<RatFunc>>& m,
    const std::string& singular_message);

}  // namespace cyclebv
