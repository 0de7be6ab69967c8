#pragma once

#include <string>
#include <vector>

#include "cyclebv/ribbon.hpp"

namespace cyclebv {

// An allowed vertex shape: genus label, number of cyclically-ordered
// boundary cycles, and total number of half-edges.
struct VertexType {
  int genus = 0;
  int boundary_cycles = 1;
  int half_edges = 3;

  friend bool operator==(const VertexType&, const VertexType&) = default;
  friend bool operator<(const VertexType& a, const VertexType& b) {
    if (a.genus != b.genus) return a.genus < b.genus;
    if (a.boundary_cycles != b.boundary_cycles)
      return a.boundary_cycles < b.boundary_cycles;
    return a.half_edges < b.half_edges;
  }
};

// Empty when the type is admissible; otherwise why it is not.
std::string vertex_type_violation(const VertexType& t);

// Contribution of one vertex of this type to minus the Euler characteristic,
// counting its half of every incident edge, doubled to stay integral:
// 2*(2g - 2 + cycles) + half_edges.  Positive for every admissible type.
int vertex_type_weight2(const VertexType& t);

struct InventoryEntry {
  std::string encoding;
  StableRibbonGraph graph;
  long long aut = 0;
  SurfaceData surface;
};

struct GraphInventory {
  std::vector<InventoryEntry> entries;  // sorted by encoding
};

struct EnumerationLimits {
  int max_half_edges = 14;
  long long max_matchings = 2'000'000;
};

// One representative per isomorphism class of connected graph with all
// vertex types drawn from the menu and -chi <= max_excess.  Classes are
// produced by pairing labelled half-edge slots of every admissible vertex
// arrangement and deduplicating by canonical encoding.  Throws
// std::invalid_argument for an inadmissible menu or negative max_excess and
// std::runtime_error when a size guard is exceeded.
GraphInventory enumerate_graphs(const std::vector<VertexType>& menu,
                                int max_excess,
                                const EnumerationLimits& limits = {});

}  // namespace cyclebv
