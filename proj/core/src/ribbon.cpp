#include "cyclebv/ribbon.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cyclebv {

namespace {

std::string type_string(int g, int i, int n) {
  return "(" + std::to_string(g) + ", " + std::to_string(i) + ", " +
         std::to_string(n) + ")";
}

// vertex index (or -1) for every half-edge, plus the successor map within
// each vertex cycle; fails with a message when the cycle lists do not form a
// partition of the half-edge set.
struct Incidence {
  std::vector<int> vertex_of;
  std::vector<int> successor;
  std::string violation;
};

Incidence build_incidence(const StableRibbonGraph& g) {
  Incidence inc;
  inc.vertex_of.assign(g.half_edges, -1);
  inc.successor.assign(g.half_edges, -1);
  for (int v = 0; v < g.vertex_count(); ++v) {
    const RibbonVertex& vert = g.vertices[v];
    if (vert.genus < 0) {
      inc.violation = "vertex " + std::to_string(v) + " has negative genus";
      return inc;
    }
    if (vert.cycles.empty()) {
      inc.violation = "vertex " + std::to_string(v) + " has no cycles";
      return inc;
    }
    for (const auto& cycle : vert.cycles) {
      if (cycle.empty()) {
        inc.violation = "vertex " + std::to_string(v) + " has an empty cycle";
        return inc;
      }
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        int h = cycle[k];
        if (h < 0 || h >= g.half_edges) {
          inc.violation = "half-edge id " + std::to_string(h) +
                          " is out of range in vertex " + std::to_string(v);
          return inc;
        }
        if (inc.vertex_of[h] != -1) {
          inc.violation = "half-edge " + std::to_string(h) +
                          " appears in more than one cycle position";
          return inc;
        }
        inc.vertex_of[h] = v;
        inc.successor[h] = cycle[(k + 1) % cycle.size()];
      }
    }
  }
  for (int h = 0; h < g.half_edges; ++h) {
    if (inc.vertex_of[h] == -1) {
      inc.violation =
          "half-edge " + std::to_string(h) + " appears in no vertex cycle";
      return inc;
    }
  }
  return inc;
}

}  // namespace

int RibbonVertex::half_edge_count() const {
  int n = 0;
  for (const auto& c : cycles) n += static_cast<int>(c.size());
  return n;
}

std::string graph_violation(const StableRibbonGraph& g) {
  if (g.half_edges <= 0 || g.half_edges % 2 != 0)
    return "the number of half-edges must be positive and even";
  if (static_cast<int>(g.alpha.size()) != g.half_edges)
    return "the pairing must assign a partner to every half-edge";
  for (int h = 0; h < g.half_edges; ++h) {
    int p = g.alpha[h];
    if (p < 0 || p >= g.half_edges)
      return "pairing partner of half-edge " + std::to_string(h) +
             " is out of range";
    if (g.alpha[p] != h) return "the half-edge pairing is not an involution";
    if (p == h)
      return "the pairing fixes half-edge " + std::to_string(h) +
             "; every half-edge must be matched to a distinct partner";
  }
  if (g.vertices.empty()) return "the graph has no vertices";

  Incidence inc = build_incidence(g);
  if (!inc.violation.empty()) return inc.violation;

  // connectivity through edges
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& cycle : g.vertices[v].cycles)
      for (int h : cycle) {
        int w = inc.vertex_of[g.alpha[h]];
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    return "the graph is not connected";

  for (int v = 0; v < g.vertex_count(); ++v) {
    const RibbonVertex& vert = g.vertices[v];
    int i = vert.cycle_count();
    int n = vert.half_edge_count();
    if (vert.genus == 0 && i == 1 && (n == 1 || n == 2))
      return "vertex " + std::to_string(v) + " has unstable type " +
             type_string(0, 1, n);
  }
  return "";
}

void validate_graph(const StableRibbonGraph& g) {
  std::string v = graph_violation(g);
  if (!v.empty()) throw std::invalid_argument("invalid graph: " + v);
}

std::vector<std::vector<int>> faces(const StableRibbonGraph& g) {
  Incidence inc = build_incidence(g);
  if (!inc.violation.empty())
    throw std::invalid_argument("invalid graph: " + inc.violation);
  std::vector<char> visited(g.half_edges, 0);
  std::vector<std::vector<int>> orbits;
  for (int h0 = 0; h0 < g.half_edges; ++h0) {
    if (visited[h0]) continue;
    std::vector<int> orbit;
    int h = h0;
    do {
      visited[h] = 1;
      orbit.push_back(h);
      h = inc.successor[g.alpha[h]];
    } while (h != h0);
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

SurfaceData surface_invariants(const StableRibbonGraph& g) {
  SurfaceData s;
  for (const RibbonVertex& v : g.vertices)
    s.chi += 2 - 2 * static_cast<long long>(v.genus) - v.cycle_count();
  s.chi -= g.edge_count();
  s.nu = static_cast<long long>(faces(g).size());
  long long twice_gamma = 2 - s.chi - s.nu;
  if (twice_gamma < 0 || twice_gamma % 2 != 0)
    throw std::runtime_error(
        "surface invariants are inconsistent: 2 - chi - nu = " +
        std::to_string(twice_gamma) + " is not an even nonnegative integer");
  s.gamma = twice_gamma / 2;
  return s;
}

namespace {

constexpr int kMaxCanonicalVertices = 10;
constexpr int kMaxCanonicalHalfEdges = 32;
constexpr long long kMaxCanonicalSteps = 20'000'000;

// Minimises, over all presentations of the graph, the sequence of
// back-reference tokens produced while labelling half-edges in presentation
// order: the token of a slot is 1 + the new label of its pairing partner if
// the partner is already labelled, and 0 otherwise.  A presentation chooses
// the vertex order (restricted to the sorted type sequence), the order of
// equal-length cycles inside each vertex, and a rotation of every cycle.
// Distinct presentations produce equal token sequences exactly when they
// differ by an automorphism, so the number of minimisers is |Aut|.
struct CanonicalSearch {
  const StableRibbonGraph& g;
  std::vector<std::vector<int>> keys;         // per vertex: g, i, n, lengths
  std::vector<std::vector<int>> sorted_keys;  // expected key per position
  std::vector<std::vector<int>> cycles_by_length;  // cycle ids, longest first
  std::vector<int> newlab;
  std::vector<char> vertex_used;
  std::vector<char> cycle_used;  // flattened per vertex, offset indexed
  std::vector<int> cycle_offset;
  std::vector<int> best;
  long long minimisers = 0;
  int next_label = 0;
  long long steps = 0;

  explicit CanonicalSearch(const StableRibbonGraph& graph) : g(graph) {
    int vcount = g.vertex_count();
    keys.resize(vcount);
    cycles_by_length.resize(vcount);
    cycle_offset.assign(vcount + 1, 0);
    for (int v = 0; v < vcount; ++v) {
      const RibbonVertex& vert = g.vertices[v];
      std::vector<int> lens;
      for (const auto& c : vert.cycles) lens.push_back(static_cast<int>(c.size()));
      std::sort(lens.rbegin(), lens.rend());
      keys[v] = {vert.genus, vert.cycle_count(), vert.half_edge_count()};
      keys[v].insert(keys[v].end(), lens.begin(), lens.end());
      std::vector<int> ids(vert.cycles.size());
      std::iota(ids.begin(), ids.end(), 0);
      std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
        return vert.cycles[a].size() > vert.cycles[b].size();
      });
      cycles_by_length[v] = ids;
      cycle_offset[v + 1] = cycle_offset[v] + vert.cycle_count();
    }
    sorted_keys = keys;
    std::sort(sorted_keys.begin(), sorted_keys.end());
    newlab.assign(g.half_edges, -1);
    vertex_used.assign(vcount, 0);
    cycle_used.assign(cycle_offset.back(), 0);
  }

  bool emit(int token) {
    if (++steps > kMaxCanonicalSteps)
      throw std::runtime_error(
          "canonical-form search exceeded its size guard of " +
          std::to_string(kMaxCanonicalSteps) + " steps");
    std::size_t at = static_cast<std::size_t>(next_label);
    if (at == best.size()) {
      best.push_back(token);
      return true;
    }
    if (token < best[at]) {
      best[at] = token;
      best.resize(at + 1);
      minimisers = 0;
      return true;
    }
    return token == best[at];
  }

  void descend_position(int pos) {
    if (pos == g.vertex_count()) {
      ++minimisers;
      return;
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (vertex_used[v] || keys[v] != sorted_keys[pos]) continue;
      vertex_used[v] = 1;
      descend_cycle(pos, v, 0);
      vertex_used[v] = 0;
    }
  }

  void descend_cycle(int pos, int v, int cycle_pos) {
    const RibbonVertex& vert = g.vertices[v];
    if (cycle_pos == vert.cycle_count()) {
      descend_position(pos + 1);
      return;
    }
    std::size_t want =
        vert.cycles[cycles_by_length[v][cycle_pos]].size();
    for (int idx = 0; idx < vert.cycle_count(); ++idx) {
      int ci = cycles_by_length[v][idx];
      if (cycle_used[cycle_offset[v] + ci] ||
          vert.cycles[ci].size() != want)
        continue;
      const std::vector<int>& cycle = vert.cycles[ci];
      int len = static_cast<int>(cycle.size());
      for (int rot = 0; rot < len; ++rot) {
        int assigned = 0;
        bool alive = true;
        for (int k = 0; k < len; ++k) {
          int h = cycle[(rot + k) % len];
          int partner_label = newlab[g.alpha[h]];
          if (!emit(partner_label >= 0 ? partner_label + 1 : 0)) {
            alive = false;
            break;
          }
          newlab[h] = next_label++;
          ++assigned;
        }
        if (alive) {
          cycle_used[cycle_offset[v] + ci] = 1;
          descend_cycle(pos, v, cycle_pos + 1);
          cycle_used[cycle_offset[v] + ci] = 0;
        }
        for (int k = assigned - 1; k >= 0; --k) {
          newlab[cycle[(rot + k) % len]] = -1;
          --next_label;
        }
      }
    }
  }
};

}  // namespace

CanonicalData canonical_data(const StableRibbonGraph& g) {
  std::string violation = graph_violation(g);
  if (!violation.empty())
    throw std::invalid_argument("invalid graph: " + violation);
  if (g.vertex_count() > kMaxCanonicalVertices ||
      g.half_edges > kMaxCanonicalHalfEdges)
    throw std::runtime_error(
        "canonical-form size guard exceeded: at most " +
        std::to_string(kMaxCanonicalVertices) + " vertices and " +
        std::to_string(kMaxCanonicalHalfEdges) + " half-edges supported");

  CanonicalSearch search(g);
  search.descend_position(0);

  std::string enc;
  for (const auto& key : search.sorted_keys) {
    enc += 'v';
    for (std::size_t k = 0; k < key.size(); ++k) {
      if (k) enc += ',';
      enc += std::to_string(key[k]);
    }
  }
  enc += '#';
  for (std::size_t k = 0; k < search.best.size(); ++k) {
    if (k) enc += ',';
    enc += std::to_string(search.best[k]);
  }
  return CanonicalData{enc, search.minimisers};
}

std::string canonical_encode(const StableRibbonGraph& g) {
  return canonical_data(g).encoding;
}

long long aut_order(const StableRibbonGraph& g) {
  return canonical_data(g).aut;
}

}  // namespace cyclebv
