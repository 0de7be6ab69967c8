#pragma once

#include <string>
#include <vector>

namespace cyclebv {

// A vertex of a decorated ribbon graph: a genus label together with one or
// more nonempty cyclically-ordered lists of half-edge ids.  The cyclic order
// of each list is meaningful; the order of the lists themselves is not.
struct RibbonVertex {
  int genus = 0;
  std::vector<std::vector<int>> cycles;

  int cycle_count() const { return static_cast<int>(cycles.size()); }
  int half_edge_count() const;
};

// A connected graph on half-edges 0..half_edges-1: `alpha` is a fixed-point
// free involution pairing half-edges into edges, and every half-edge sits in
// exactly one vertex cycle.  Vertex types (genus, cycles, half-edges) equal
// to (0,1,1) or (0,1,2) are rejected as unstable.
struct StableRibbonGraph {
  int half_edges = 0;
  std::vector<int> alpha;
  std::vector<RibbonVertex> vertices;

  int edge_count() const { return half_edges / 2; }
  int vertex_count() const { return static_cast<int>(vertices.size()); }
};

// Empty string when every invariant holds, otherwise a description of the
// first violated one.
std::string graph_violation(const StableRibbonGraph& g);

// Throws std::invalid_argument carrying graph_violation(g) when nonempty.
void validate_graph(const StableRibbonGraph& g);

// Orbits of the boundary-walk permutation h -> successor(alpha(h)), where
// successor is taken inside the vertex cycle containing the half-edge.
std::vector<std::vector<int>> faces(const StableRibbonGraph& g);

struct SurfaceData {
  long long chi = 0;    // sum over vertices of (2 - 2g - cycles) minus edges
  long long gamma = 0;  // genus of the closed surface: (2 - chi - nu) / 2
  long long nu = 0;     // number of boundary-walk orbits
};

// Throws std::runtime_error if gamma would be negative or non-integral,
// which cannot happen for a structurally valid connected graph.
SurfaceData surface_invariants(const StableRibbonGraph& g);

struct CanonicalData {
  // Complete isomorphism invariant: equal strings exactly when the graphs
  // are related by a half-edge bijection preserving the pairing, the vertex
  // partition, genus labels, the cycle partition, and all cyclic orders.
  std::string encoding;
  // Number of such bijections from the graph to itself.
  long long aut = 0;
};

// Branch-and-bound minimisation over graph presentations (vertex order within
// the type-sorted sequence, cycle order within equal lengths, rotations).
// Throws std::runtime_error when the search exceeds its size guard.
CanonicalData canonical_data(const StableRibbonGraph& g);

std::string canonical_encode(const StableRibbonGraph& g);
long long aut_order(const StableRibbonGraph& g);

}  // namespace cyclebv
