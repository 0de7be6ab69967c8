#include "cyclebv/ribbon_enumerate.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cyclebv {

namespace {

std::string type_string(const VertexType& t) {
  return "(" + std::to_string(t.genus) + ", " +
         std::to_string(t.boundary_cycles) + ", " +
         std::to_string(t.half_edges) + ")";
}

// All ways to write n as parts >= 1 in weakly decreasing order with exactly
// `parts` parts, each at most `max_part`.
void partitions_into(int n, int parts, int max_part, std::vector<int>& cur,
                     std::vector<std::vector<int>>& out) {
  if (parts == 0) {
    if (n == 0) out.push_back(cur);
    return;
  }
  for (int first = std::min(n - (parts - 1), max_part); first >= 1; --first) {
    cur.push_back(first);
    partitions_into(n - first, parts - 1, first, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> cycle_length_choices(const VertexType& t) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  partitions_into(t.half_edges, t.boundary_cycles, t.half_edges, cur, out);
  return out;
}

bool slots_connected(const std::vector<int>& alpha,
                     const std::vector<int>& vertex_of, int vertex_count) {
  if (vertex_count <= 1) return true;
  std::vector<std::vector<int>> slots_of(vertex_count);
  for (std::size_t h = 0; h < alpha.size(); ++h)
    slots_of[vertex_of[h]].push_back(static_cast<int>(h));
  std::vector<char> seen(vertex_count, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int h : slots_of[v]) {
      int w = vertex_of[alpha[h]];
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == vertex_count;
}

struct Enumerator {
  const EnumerationLimits& limits;
  std::map<std::string, InventoryEntry> classes;
  long long matchings_seen = 0;

  // Slot layout for one vertex arrangement.
  std::vector<RibbonVertex> vertices;
  std::vector<int> vertex_of_slot;
  std::vector<int> alpha;

  explicit Enumerator(const EnumerationLimits& l) : limits(l) {}

  void process_arrangement(const std::vector<VertexType>& types,
                           const std::vector<const std::vector<int>*>& lens) {
    vertices.clear();
    vertex_of_slot.clear();
    int next_slot = 0;
    for (std::size_t v = 0; v < types.size(); ++v) {
      RibbonVertex vert;
      vert.genus = types[v].genus;
      for (int len : *lens[v]) {
        std::vector<int> cycle(len);
        for (int& slot : cycle) {
          slot = next_slot++;
          vertex_of_slot.push_back(static_cast<int>(v));
        }
        vert.cycles.push_back(std::move(cycle));
      }
      vertices.push_back(std::move(vert));
    }
    if (next_slot > limits.max_half_edges)
      throw std::runtime_error(
          "enumeration size guard exceeded: a vertex arrangement needs " +
          std::to_string(next_slot) + " half-edges, the limit is " +
          std::to_string(limits.max_half_edges));
    alpha.assign(next_slot, -1);
    match_slots(0);
  }

  void match_slots(int from) {
    int a = from;
    while (a < static_cast<int>(alpha.size()) && alpha[a] != -1) ++a;
    if (a == static_cast<int>(alpha.size())) {
      record_matching();
      return;
    }
    for (int b = a + 1; b < static_cast<int>(alpha.size()); ++b) {
      if (alpha[b] != -1) continue;
      alpha[a] = b;
      alpha[b] = a;
      match_slots(a + 1);
      alpha[a] = -1;
      alpha[b] = -1;
    }
  }

  void record_matching() {
    if (++matchings_seen > limits.max_matchings)
      throw std::runtime_error(
          "enumeration size guard exceeded: more than " +
          std::to_string(limits.max_matchings) + " half-edge pairings");
    if (!slots_connected(alpha, vertex_of_slot,
                         static_cast<int>(vertices.size())))
      return;
    StableRibbonGraph g;
    g.half_edges = static_cast<int>(alpha.size());
    g.alpha = alpha;
    g.vertices = vertices;
    CanonicalData canon = canonical_data(g);
    auto it = classes.find(canon.encoding);
    if (it != classes.end()) return;
    InventoryEntry entry;
    entry.encoding = canon.encoding;
    entry.graph = std::move(g);
    entry.aut = canon.aut;
    entry.surface = surface_invariants(entry.graph);
    classes.emplace(canon.encoding, std::move(entry));
  }
};

// Chooses one cycle-length distribution per vertex; equal vertex types pick
// weakly increasing choice indices so identical arrangements are built once.
void assign_distributions(const std::vector<VertexType>& types,
                          const std::vector<std::vector<std::vector<int>>>& choices,
                          std::size_t v, int min_choice,
                          std::vector<const std::vector<int>*>& lens,
                          Enumerator& enumerator) {
  if (v == types.size()) {
    enumerator.process_arrangement(types, lens);
    return;
  }
  int start = (v > 0 && types[v] == types[v - 1]) ? min_choice : 0;
  const auto& options = choices[v];
  for (int c = start; c < static_cast<int>(options.size()); ++c) {
    lens.push_back(&options[c]);
    assign_distributions(types, choices, v + 1, c, lens, enumerator);
    lens.pop_back();
  }
}

void visit_type_multisets(const std::vector<VertexType>& menu, int budget2,
                          std::size_t start, std::vector<VertexType>& cur,
                          int slots, Enumerator& enumerator) {
  if (!cur.empty() && slots % 2 == 0) {
    std::vector<std::vector<std::vector<int>>> choices;
    for (const VertexType& t : cur) choices.push_back(cycle_length_choices(t));
    std::vector<const std::vector<int>*> lens;
    assign_distributions(cur, choices, 0, 0, lens, enumerator);
  }
  for (std::size_t i = start; i < menu.size(); ++i) {
    int w = vertex_type_weight2(menu[i]);
    if (w > budget2) continue;
    cur.push_back(menu[i]);
    visit_type_multisets(menu, budget2 - w, i, cur, slots + menu[i].half_edges,
                         enumerator);
    cur.pop_back();
  }
}

}  // namespace

std::string vertex_type_violation(const VertexType& t) {
  if (t.genus < 0) return "vertex type " + type_string(t) + " has negative genus";
  if (t.boundary_cycles < 1)
    return "vertex type " + type_string(t) + " needs at least one cycle";
  if (t.half_edges < t.boundary_cycles)
    return "vertex type " + type_string(t) +
           " has fewer half-edges than cycles";
  if (t.genus == 0 && t.boundary_cycles == 1 &&
      (t.half_edges == 1 || t.half_edges == 2))
    return "vertex type " + type_string(t) + " is unstable";
  return "";
}

int vertex_type_weight2(const VertexType& t) {
  return 4 * t.genus - 4 + 2 * t.boundary_cycles + t.half_edges;
}

GraphInventory enumerate_graphs(const std::vector<VertexType>& menu,
                                int max_excess,
                                const EnumerationLimits& limits) {
  if (max_excess < 0)
    throw std::invalid_argument("max_excess must be nonnegative");
  if (menu.empty()) throw std::invalid_argument("the vertex menu is empty");
  for (const VertexType& t : menu) {
    std::string violation = vertex_type_violation(t);
    if (!violation.empty()) throw std::invalid_argument(violation);
  }
  std::vector<VertexType> sorted_menu = menu;
  std::sort(sorted_menu.begin(), sorted_menu.end());
  sorted_menu.erase(std::unique(sorted_menu.begin(), sorted_menu.end()),
                    sorted_menu.end());

  Enumerator enumerator(limits);
  std::vector<VertexType> cur;
  visit_type_multisets(sorted_menu, 2 * max_excess, 0, cur, 0, enumerator);

  GraphInventory inventory;
  for (auto& [enc, entry] : enumerator.classes) {
    long long excess = -entry.surface.chi;
    if (excess > max_excess)
      throw std::logic_error("enumerated class exceeds the excess budget");
    inventory.entries.push_back(std::move(entry));
  }
  return inventory;
}

}  // namespace cyclebv
