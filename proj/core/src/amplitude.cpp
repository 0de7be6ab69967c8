#include <cyclebv/amplitude.hpp>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cyclebv {

namespace {

struct EdgeList {
  std::vector<std::pair<int, int>> pairs;  // (h, alpha(h)) with h < alpha(h)
};

EdgeList edge_list(const StableRibbonGraph& g) {
  EdgeList e;
  for (int h = 0; h < g.half_edges; ++h)
    if (h < g.alpha[h]) e.pairs.push_back({h, g.alpha[h]});
  return e;
}

// Flattened symbol order: vertices in order, cycles in order, an optional
// marker symbol at each cycle head, then the cycle's half-edges.
struct Layout {
  std::vector<int> slot_of_half_edge;
  int total = 0;
  // Consumption order: both slots of edge 0, both slots of edge 1, ...,
  // then the marker slots.  Markers are consumed by their cycles' minimal
  // half-edge ids — a key that does not depend on how the graph presentation
  // happens to order the vertices or their cycle lists — so the reordering
  // sign is well defined on isomorphism classes.
  std::vector<int> consumption;
};

Layout flatten(const StableRibbonGraph& g, const EdgeList& e,
               bool with_markers) {
  Layout lay;
  lay.slot_of_half_edge.assign(g.half_edges, -1);
  std::vector<std::pair<int, int>> marker_keys;  // (min half-edge, slot)
  for (const RibbonVertex& v : g.vertices) {
    for (const auto& cycle : v.cycles) {
      if (with_markers)
        marker_keys.push_back(
            {*std::min_element(cycle.begin(), cycle.end()), lay.total++});
      for (int h : cycle) lay.slot_of_half_edge[h] = lay.total++;
    }
  }
  for (const auto& [h, k] : e.pairs) {
    lay.consumption.push_back(lay.slot_of_half_edge[h]);
    lay.consumption.push_back(lay.slot_of_half_edge[k]);
  }
  std::sort(marker_keys.begin(), marker_keys.end());
  for (const auto& [key, slot] : marker_keys) lay.consumption.push_back(slot);
  return lay;
}

// True when every trace-bearing basis element of the algebra is odd, so the
// per-cycle trace functionals are odd symbols in the sign bookkeeping.
bool odd_trace_functional(const MatrixAlgebraModel& model) {
  bool any = false;
  for (int a = 0; a < model.dim; ++a) {
    if (model.trace_of(a) == 0) continue;
    if (model.parity(a) == 0) return false;
    any = true;
  }
  return any;
}

void check_model_flavor(const GradedAction& s, const PairingForm& form,
                        const MatrixAlgebraModel& model) {
  if (s.flavor != form.parity)
    throw std::invalid_argument("action flavor does not match the pairing");
  FormParity wanted = model.kind == ModelKind::GeneralLinear
                          ? FormParity::Odd
                          : FormParity::Even;
  if (s.flavor != wanted)
    throw std::invalid_argument(
        "action flavor does not match the model kind");
}

// Number of ways the canonical monomial's cycles map onto the presented
// cycles: length-preserving bijections times matching cyclic alignments.
long long matching_count(const CycleMonomial& mono,
                         const std::vector<CyclicWord>& presented) {
  const int k = static_cast<int>(mono.cycles.size());
  if (static_cast<int>(presented.size()) != k) return 0;
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end());
  long long total = 0;
  do {
    long long ways = 1;
    for (int c = 0; c < k && ways; ++c) {
      const auto& from = mono.cycles[perm[c]].letters;
      const auto& to = presented[c].letters;
      if (from.size() != to.size()) {
        ways = 0;
        break;
      }
      const int len = static_cast<int>(from.size());
      long long rotations = 0;
      for (int r = 0; r < len; ++r) {
        bool match = true;
        for (int p = 0; p < len && match; ++p)
          match = from[(p + r) % len] == to[p];
        if (match) ++rotations;
      }
      ways *= rotations;
    }
    total += ways;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

CouplingSeries action_weight(const StableRibbonGraph& g, const GradedAction& s,
                             const SuperBasis& basis,
                             const PairingForm& form) {
  if (s.flavor != form.parity)
    throw std::invalid_argument("action flavor does not match the pairing");
  validate_graph(g);
  const EdgeList edges = edge_list(g);
  const Layout lay = flatten(g, edges, cycles_carry_marker(s.flavor));
  const int dim = basis.dim();

  // Nonzero pairing entries, reused for every edge.
  std::vector<std::pair<std::pair<int, int>, Rational>> couplings;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (form.entries[i][j] != 0)
        couplings.push_back({{i, j}, form.entries[i][j]});
  if (couplings.empty()) return CouplingSeries();

  const int edge_count = static_cast<int>(edges.pairs.size());
  std::vector<int> letter(g.half_edges, -1);
  std::vector<int> choice(edge_count, 0);
  std::vector<int> slot_parity(lay.total, 1);  // markers stay odd

  CouplingSeries total;
  while (true) {
    // Materialize the current assignment.
    Rational edge_factor = 1;
    for (int e = 0; e < edge_count; ++e) {
      const auto& [pair_idx, value] = couplings[choice[e]];
      letter[edges.pairs[e].first] = pair_idx.first;
      letter[edges.pairs[e].second] = pair_idx.second;
      edge_factor *= value;
    }

    CouplingSeries vertex_product = CouplingSeries::constant(Rational(1));
    bool alive = true;
    for (const RibbonVertex& v : g.vertices) {
      ActionKey key{v.genus, v.cycle_count(), v.half_edge_count()};
      auto comp = s.components.find(key);
      if (comp == s.components.end() || comp->second.is_zero()) {
        alive = false;
        break;
      }
      std::vector<CyclicWord> presented;
      std::vector<CyclicWord> canonical;
      int present_sign = 1;
      for (const auto& cycle : v.cycles) {
        CyclicWord w;
        for (int h : cycle) w.letters.push_back(letter[h]);
        NormalizedWord nw = normalize_cyclic(w.letters, basis, s.flavor);
        if (nw.zero) {
          alive = false;
          break;
        }
        present_sign *= nw.sign;
        presented.push_back(std::move(w));
        canonical.push_back(std::move(nw.word));
      }
      if (!alive) break;
      NormalizedMonomial nm = normalize_monomial(canonical, basis, s.flavor);
      if (nm.zero) {
        alive = false;
        break;
      }
      present_sign *= nm.sign;
      auto term = comp->second.terms().find(nm.mono);
      if (term == comp->second.terms().end()) {
        alive = false;
        break;
      }
      long long ways = matching_count(nm.mono, presented);
      if (ways == 0) {
        alive = false;
        break;
      }
      vertex_product *= term->second * Rational(present_sign * ways);
      if (vertex_product.is_zero()) {
        alive = false;
        break;
      }
    }

    if (alive) {
      for (int h = 0; h < g.half_edges; ++h)
        slot_parity[lay.slot_of_half_edge[h]] =
            letter_parity(basis, s.flavor, letter[h]);
      int sign = koszul_reorder_sign(lay.consumption, slot_parity);
      total += vertex_product * Rational(sign) * edge_factor;
    }

    // Advance the odometer over per-edge coupling choices.
    int e = 0;
    while (e < edge_count) {
      if (++choice[e] < static_cast<int>(couplings.size())) break;
      choice[e] = 0;
      ++e;
    }
    if (e == edge_count) break;
  }
  return total;
}

RatFunc trace_weight(const StableRibbonGraph& g,
                     const MatrixAlgebraModel& model) {
  validate_graph(g);
  const EdgeList edges = edge_list(g);
  const Layout lay = flatten(g, edges, odd_trace_functional(model));
  const PropagatorTensor tensor = propagator_tensor(model);
  const auto components = tensor.nonzero();
  if (components.empty()) return RatFunc();

  const int edge_count = static_cast<int>(edges.pairs.size());
  std::vector<int> elem(g.half_edges, -1);
  std::vector<int> choice(edge_count, 0);
  std::vector<int> slot_parity(lay.total, 1);  // functional markers stay odd

  RatFunc total;
  while (true) {
    for (int e = 0; e < edge_count; ++e) {
      const auto& pair_idx = components[choice[e]].first;
      elem[edges.pairs[e].first] = pair_idx.first;
      elem[edges.pairs[e].second] = pair_idx.second;
    }

    Rational traces = 1;
    bool alive = true;
    for (const RibbonVertex& v : g.vertices) {
      for (const auto& cycle : v.cycles) {
        int cur = elem[cycle[0]];
        for (std::size_t p = 1; p < cycle.size() && cur >= 0; ++p)
          cur = model.product_index(cur, elem[cycle[p]]);
        Rational value = cur < 0 ? Rational(0) : model.trace_of(cur);
        if (value == 0) {
          alive = false;
          break;
        }
        traces *= value;
      }
      if (!alive) break;
    }

    if (alive) {
      for (int h = 0; h < g.half_edges; ++h)
        slot_parity[lay.slot_of_half_edge[h]] = model.parity(elem[h]);
      int sign = koszul_reorder_sign(lay.consumption, slot_parity);
      RatFunc edge_factor(traces * sign);
      for (int e = 0; e < edge_count; ++e)
        edge_factor *= components[choice[e]].second;
      total += edge_factor;
    }

    int e = 0;
    while (e < edge_count) {
      if (++choice[e] < static_cast<int>(components.size())) break;
      choice[e] = 0;
      ++e;
    }
    if (e == edge_count) break;
  }
  return total;
}

std::vector<GraphTerm> graph_terms(const GradedAction& s,
                                   const SuperBasis& basis,
                                   const PairingForm& form,
                                   const MatrixAlgebraModel& model,
                                   int max_excess,
                                   const EnumerationLimits& limits) {
  check_model_flavor(s, form, model);
  s.validate(basis);
  validate_pairing(basis, form);

  std::vector<VertexType> menu;
  for (const auto& [key, element] : s.components) {
    if (element.is_zero()) continue;
    menu.push_back(VertexType{key.g, key.i, key.n});
  }
  std::vector<GraphTerm> out;
  if (menu.empty()) return out;

  GraphInventory inventory = enumerate_graphs(menu, max_excess, limits);
  for (const InventoryEntry& entry : inventory.entries) {
    GraphTerm term;
    term.encoding = entry.encoding;
    term.graph = entry.graph;
    term.surface = entry.surface;
    term.aut = entry.aut;
    term.action_side = action_weight(entry.graph, s, basis, form);
    term.trace_side = trace_weight(entry.graph, model);
    term.weight = (term.action_side * term.trace_side)
                      .shifted_by_h(static_cast<int>(-entry.surface.chi)) *
                  Rational(BigInt(1), BigInt(entry.aut));
    out.push_back(std::move(term));
  }
  return out;
}

CouplingSeries graph_sum(const GradedAction& s, const SuperBasis& basis,
                         const PairingForm& form,
                         const MatrixAlgebraModel& model, int max_excess,
                         const EnumerationLimits& limits) {
  CouplingSeries total;
  for (const GraphTerm& term :
       graph_terms(s, basis, form, model, max_excess, limits))
    total += term.weight;
  return total;
}

}  // namespace cyclebv
