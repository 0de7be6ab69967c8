#pragma once
// Per-graph weights and the graph-side sum.
//
// Both weights are state sums over assignments of indices to half-edges:
//
//  - action_weight (c_S): each half-edge carries a letter of the word basis;
//    a vertex contributes the action coefficient of the cycle monomial its
//    assigned letters spell, summed over every way of matching the
//    monomial's cycles onto the vertex's cycles and every cyclic alignment;
//    an edge contributes the pairing-form entry of its two letters.  For the
//    even-pairing flavor each vertex cycle carries its odd marker symbol in
//    the sign bookkeeping.
//
//  - trace_weight (c_Lambda): each half-edge carries an algebra basis index;
//    a vertex contributes the product over its cycles of the trace of the
//    ordered product of assigned elements; an edge contributes the matching
//    component of the two-slot tensor built from the partial inverse.  When
//    the model's trace functional is odd (every trace-bearing basis element
//    is odd), each vertex cycle carries an odd marker symbol standing for
//    its trace functional.
//
// Every sign is one call to the sign engine: the flattened symbol list in
// vertex-cycle order is reordered so each edge consumes its two symbols
// adjacently, in edge order, with unconsumed markers trailing in order of
// their cycles' minimal half-edge ids.  The marker order is anchored to the
// half-edge labels rather than to the presentation, so both weights are
// invariant under reordering vertex lists and cycle lists.
//
// The graph-side sum attaches h^{-chi(G)} and divides by the order of the
// automorphism group, over the inventory enumerated from the action's
// support.

#include <cyclebv/action.hpp>
#include <cyclebv/matrix_model.hpp>
#include <cyclebv/ribbon_enumerate.hpp>

#include <string>
#include <vector>

namespace cyclebv {

// State sum against the action and the pairing form.  Vertices whose
// (genus, cycles, letters) type has no action component contribute zero.
CouplingSeries action_weight(const StableRibbonGraph& g, const GradedAction& s,
                             const SuperBasis& basis, const PairingForm& form);

// State sum against the matrix algebra: trace products against the two-slot
// tensor of the model's partial inverse.
RatFunc trace_weight(const StableRibbonGraph& g,
                     const MatrixAlgebraModel& model);

struct GraphTerm {
  std::string encoding;
  StableRibbonGraph graph;
  SurfaceData surface;
  long long aut = 1;
  CouplingSeries action_side;   // c_S
  RatFunc trace_side;           // c_Lambda
  CouplingSeries weight;        // h^{-chi} c_S c_Lambda / |Aut|
};

// One term per isomorphism class with -chi <= max_excess, sorted by
// canonical encoding; the vertex menu is the support of the action.
// Throws std::invalid_argument when the action flavor does not match the
// model kind (odd pairing <-> gl, even pairing <-> q) or the form's flag.
std::vector<GraphTerm> graph_terms(const GradedAction& s,
                                   const SuperBasis& basis,
                                   const PairingForm& form,
                                   const MatrixAlgebraModel& model,
                                   int max_excess,
                                   const EnumerationLimits& limits = {});

// Sum of the graph terms' weights over the bounded inventory.
CouplingSeries graph_sum(const GradedAction& s, const SuperBasis& basis,
                         const PairingForm& form,
                         const MatrixAlgebraModel& model, int max_excess,
                         const EnumerationLimits& limits = {});

}  // namespace cyclebv
