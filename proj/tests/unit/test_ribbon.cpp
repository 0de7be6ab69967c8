#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include <cyclebv/rational.hpp>
#include <cyclebv/ribbon.hpp>
#include <cyclebv/ribbon_enumerate.hpp>
#include <cyclebv/ribbon_json.hpp>

using namespace cyclebv;

namespace {

StableRibbonGraph make_graph(int half_edges,
                             std::vector<std::pair<int, int>> pairs,
                             std::vector<RibbonVertex> vertices) {
  StableRibbonGraph g;
  g.half_edges = half_edges;
  g.alpha.assign(half_edges, -1);
  for (auto [a, b] : pairs) {
    g.alpha[a] = b;
    g.alpha[b] = a;
  }
  g.vertices = std::move(vertices);
  return g;
}

StableRibbonGraph theta_planar() {
  return make_graph(6, {{0, 3}, {1, 4}, {2, 5}},
                    {{0, {{0, 1, 2}}}, {0, {{5, 4, 3}}}});
}

StableRibbonGraph theta_twisted() {
  return make_graph(6, {{0, 3}, {1, 4}, {2, 5}},
                    {{0, {{0, 1, 2}}}, {0, {{3, 4, 5}}}});
}

StableRibbonGraph dumbbell() {
  return make_graph(6, {{0, 1}, {3, 4}, {2, 5}},
                    {{0, {{0, 1, 2}}}, {0, {{3, 4, 5}}}});
}

// Independent automorphism oracle: tries every permutation of the half-edge
// set and keeps those commuting with the pairing and the cycle-successor
// map while inducing a genus-preserving map on vertices.
long long brute_force_aut(const StableRibbonGraph& g) {
  int n = g.half_edges;
  std::vector<int> succ(n, -1), vert(n, -1);
  for (int v = 0; v < g.vertex_count(); ++v)
    for (const auto& cycle : g.vertices[v].cycles)
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        succ[cycle[k]] = cycle[(k + 1) % cycle.size()];
        vert[cycle[k]] = v;
      }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  long long count = 0;
  do {
    bool ok = true;
    for (int h = 0; h < n && ok; ++h) {
      if (perm[g.alpha[h]] != g.alpha[perm[h]]) ok = false;
      if (ok && perm[succ[h]] != succ[perm[h]]) ok = false;
      if (ok && g.vertices[vert[h]].genus != g.vertices[vert[perm[h]]].genus)
        ok = false;
    }
    // all half-edges of one vertex must land in one vertex
    for (int h = 0; h < n && ok; ++h)
      for (int k = h + 1; k < n && ok; ++k)
        if (vert[h] == vert[k] && vert[perm[h]] != vert[perm[k]]) ok = false;
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

// Counts perfect matchings of labelled slots that yield a connected graph,
// for one vertex arrangement given by cycle sizes per vertex.
long long connected_matchings(const std::vector<std::vector<int>>& cycle_sizes) {
  std::vector<int> vertex_of;
  for (std::size_t v = 0; v < cycle_sizes.size(); ++v)
    for (int len : cycle_sizes[v])
      for (int k = 0; k < len; ++k) vertex_of.push_back(static_cast<int>(v));
  int n = static_cast<int>(vertex_of.size());
  std::vector<int> alpha(n, -1);
  long long count = 0;
  auto connected = [&]() {
    std::vector<char> seen(cycle_sizes.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int h = 0; h < n; ++h) {
        if (vertex_of[h] != v) continue;
        int w = vertex_of[alpha[h]];
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    return reached == cycle_sizes.size();
  };
  auto rec = [&](auto&& self, int from) -> void {
    int a = from;
    while (a < n && alpha[a] != -1) ++a;
    if (a == n) {
      if (connected()) ++count;
      return;
    }
    for (int b = a + 1; b < n; ++b) {
      if (alpha[b] != -1) continue;
      alpha[a] = b;
      alpha[b] = a;
      self(self, a + 1);
      alpha[a] = -1;
      alpha[b] = -1;
    }
  };
  rec(rec, 0);
  return count;
}

Rational aut_weight_sum(const GraphInventory& inv,
                        std::size_t vertex_count) {
  Rational sum(0);
  for (const auto& e : inv.entries)
    if (e.graph.vertices.size() == vertex_count)
      sum += Rational(1) / Rational(e.aut);
  return sum;
}

}  // namespace

TEST_CASE("graph validation reports the first violation") {
  StableRibbonGraph loop = make_graph(2, {{0, 1}}, {{0, {{0, 1}}}});
  CHECK(graph_violation(loop).find("(0, 1, 2)") != std::string::npos);

  CHECK(graph_violation(theta_planar()) == "");
  CHECK(graph_violation(theta_twisted()) == "");
  CHECK(graph_violation(dumbbell()) == "");

  StableRibbonGraph empty_cycle =
      make_graph(2, {{0, 1}}, {{1, {{0, 1}, {}}}});
  CHECK(graph_violation(empty_cycle).find("empty cycle") != std::string::npos);

  StableRibbonGraph fixed = make_graph(2, {}, {{1, {{0, 1}}}});
  fixed.alpha = {0, 1};
  CHECK(graph_violation(fixed).find("fixe") != std::string::npos);

  StableRibbonGraph disconnected =
      make_graph(4, {{0, 1}, {2, 3}}, {{1, {{0, 1}}}, {1, {{2, 3}}}});
  CHECK(graph_violation(disconnected).find("not connected") !=
        std::string::npos);

  CHECK_THROWS_AS(validate_graph(loop), std::invalid_argument);
}

TEST_CASE("face tracing") {
  CHECK(faces(theta_planar()).size() == 3);
  CHECK(faces(theta_twisted()).size() == 1);

  // one vertex of type (0,1,4) with two nested loop edges
  StableRibbonGraph nested =
      make_graph(4, {{0, 3}, {1, 2}}, {{0, {{0, 1, 2, 3}}}});
  CHECK(faces(nested).size() == 3);
  // crossing the loops merges the boundary into one walk
  StableRibbonGraph crossed =
      make_graph(4, {{0, 2}, {1, 3}}, {{0, {{0, 1, 2, 3}}}});
  CHECK(faces(crossed).size() == 1);

  // every half-edge appears in exactly one orbit
  auto orbits = faces(dumbbell());
  std::set<int> seen;
  std::size_t total = 0;
  for (const auto& orbit : orbits) {
    total += orbit.size();
    seen.insert(orbit.begin(), orbit.end());
  }
  CHECK(total == 6);
  CHECK(seen.size() == 6);
}

TEST_CASE("surface invariants") {
  SurfaceData planar = surface_invariants(theta_planar());
  CHECK(planar.chi == -1);
  CHECK(planar.nu == 3);
  CHECK(planar.gamma == 0);

  SurfaceData twisted = surface_invariants(theta_twisted());
  CHECK(twisted.chi == -1);
  CHECK(twisted.nu == 1);
  CHECK(twisted.gamma == 1);

  // single vertex with genus label 1, one cycle of two half-edges, one loop
  StableRibbonGraph decorated = make_graph(2, {{0, 1}}, {{1, {{0, 1}}}});
  SurfaceData d = surface_invariants(decorated);
  CHECK(d.chi == -2);
  CHECK(d.nu == 2);
  CHECK(d.gamma == 1);
}

TEST_CASE("canonical encoding is labelling-invariant and separating") {
  // relabel the planar theta arbitrarily
  StableRibbonGraph relabelled = make_graph(
      6, {{4, 2}, {0, 5}, {3, 1}}, {{0, {{4, 0, 3}}}, {0, {{1, 5, 2}}}});
  CHECK(graph_violation(relabelled) == "");
  CHECK(canonical_encode(relabelled) == canonical_encode(theta_planar()));

  CHECK(canonical_encode(theta_planar()) != canonical_encode(theta_twisted()));

  StableRibbonGraph decorated = theta_planar();
  decorated.vertices[0].genus = 2;
  CHECK(canonical_encode(decorated) != canonical_encode(theta_planar()));
}

TEST_CASE("automorphism counts match the brute-force oracle") {
  CHECK(aut_order(theta_planar()) == 6);
  CHECK(aut_order(theta_planar()) == brute_force_aut(theta_planar()));
  CHECK(aut_order(theta_twisted()) == brute_force_aut(theta_twisted()));
  CHECK(aut_order(dumbbell()) == 2);
  CHECK(aut_order(dumbbell()) == brute_force_aut(dumbbell()));

  StableRibbonGraph nested =
      make_graph(4, {{0, 3}, {1, 2}}, {{0, {{0, 1, 2, 3}}}});
  CHECK(aut_order(nested) == brute_force_aut(nested));

  // distinct genus labels break the dumbbell's swap symmetry completely
  StableRibbonGraph lopsided = dumbbell();
  lopsided.vertices[1].genus = 1;
  CHECK(aut_order(lopsided) == 1);
  CHECK(brute_force_aut(lopsided) == 1);

  // a vertex with two cycles: bouquet with both loops joining the cycles
  StableRibbonGraph two_cycles =
      make_graph(4, {{0, 2}, {1, 3}}, {{0, {{0, 1}, {2, 3}}}});
  CHECK(graph_violation(two_cycles) == "");
  CHECK(aut_order(two_cycles) == brute_force_aut(two_cycles));
}

TEST_CASE("enumeration at one trivalent unit of excess") {
  GraphInventory inv = enumerate_graphs({{0, 1, 3}}, 1);
  REQUIRE(inv.entries.size() == 3);
  std::set<std::string> encodings;
  for (const auto& e : inv.entries) {
    encodings.insert(e.encoding);
    CHECK(e.surface.chi == -1);
    CHECK(-e.surface.chi ==
          std::accumulate(e.graph.vertices.begin(), e.graph.vertices.end(),
                          static_cast<long long>(e.graph.edge_count()),
                          [](long long acc, const RibbonVertex& v) {
                            return acc + 2 * v.genus - 2 + v.cycle_count();
                          }));
    CHECK(e.graph.vertex_count() - e.graph.edge_count() == e.surface.chi);
  }
  CHECK(encodings.count(canonical_encode(theta_planar())) == 1);
  CHECK(encodings.count(canonical_encode(theta_twisted())) == 1);
  CHECK(encodings.count(canonical_encode(dumbbell())) == 1);

  // labelled-pairing oracle: 15 pairings of 6 slots, all connected, divided
  // by the slot symmetries 2 * 3 * 3 = 18
  CHECK(connected_matchings({{3}, {3}}) == 15);
  CHECK(aut_weight_sum(inv, 2) == Rational(15) / Rational(18));

  CHECK(enumerate_graphs({{0, 1, 3}}, 0).entries.empty());
}

TEST_CASE("enumeration completeness against the pairing oracle") {
  GraphInventory inv = enumerate_graphs({{0, 1, 3}}, 2);
  // two-vertex classes are exactly the excess-1 inventory
  CHECK(aut_weight_sum(inv, 2) == Rational(15) / Rational(18));
  // four-vertex classes: connected pairings of 12 slots over the slot
  // symmetries 4! * 3^4
  long long connected = connected_matchings({{3}, {3}, {3}, {3}});
  CHECK(aut_weight_sum(inv, 4) ==
        Rational(connected) / Rational(24 * 81));
  for (const auto& e : inv.entries) {
    int total = 0;
    for (const auto& v : e.graph.vertices) total += v.half_edge_count();
    CHECK(total == 2 * e.graph.edge_count());
    CHECK(e.graph.vertex_count() - e.graph.edge_count() == e.surface.chi);
    CHECK(e.surface.gamma >= 0);
  }
  // inventory is sorted and duplicate-free
  for (std::size_t k = 1; k < inv.entries.size(); ++k)
    CHECK(inv.entries[k - 1].encoding < inv.entries[k].encoding);
}

TEST_CASE("enumeration with four-valent vertices") {
  GraphInventory inv = enumerate_graphs({{0, 1, 4}}, 1);
  REQUIRE(inv.entries.size() == 2);
  std::multiset<long long> auts;
  for (const auto& e : inv.entries) auts.insert(e.aut);
  CHECK(auts == std::multiset<long long>{2, 4});
  CHECK(aut_weight_sum(inv, 1) == Rational(3) / Rational(4));
}

TEST_CASE("enumeration with decorated single-cycle vertices") {
  // a (1,1,1) vertex cannot pair with itself; two of them join by one edge
  CHECK(enumerate_graphs({{1, 1, 1}}, 2).entries.empty());
  GraphInventory inv = enumerate_graphs({{1, 1, 1}}, 3);
  REQUIRE(inv.entries.size() == 1);
  CHECK(inv.entries[0].aut == 2);
  CHECK(inv.entries[0].surface.chi == -3);

  CHECK_THROWS_AS(enumerate_graphs({{0, 1, 2}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_graphs({}, 1), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_graphs({{0, 1, 3}}, -1), std::invalid_argument);
}

TEST_CASE("enumeration size guard") {
  EnumerationLimits tight;
  tight.max_half_edges = 8;
  CHECK_THROWS_AS(enumerate_graphs({{0, 1, 3}}, 2, tight),
                  std::runtime_error);
}

TEST_CASE("graph JSON round trip") {
  nlohmann::json j = graph_to_json(theta_planar());
  StableRibbonGraph back = graph_from_json(j);
  CHECK(graph_violation(back) == "");
  CHECK(canonical_encode(back) == canonical_encode(theta_planar()));

  nlohmann::json inv_json =
      inventory_to_json(enumerate_graphs({{0, 1, 3}}, 1));
  REQUIRE(inv_json.size() == 3);
  for (const auto& entry : inv_json) {
    CHECK(entry.contains("aut"));
    CHECK(entry.contains("chi"));
    CHECK(entry.contains("gamma"));
    CHECK(entry.contains("nu"));
    StableRibbonGraph parsed = graph_from_json(entry);
    CHECK(graph_violation(parsed) == "");
  }

  CHECK_THROWS_AS(graph_from_json(nlohmann::json::array()),
                  std::invalid_argument);
  nlohmann::json bad = graph_to_json(theta_planar());
  bad["alpha"][0][1] = 99;
  CHECK_THROWS_AS(graph_from_json(bad), std::invalid_argument);
  nlohmann::json dup = graph_to_json(theta_planar());
  dup["alpha"][1] = dup["alpha"][0];
  CHECK_THROWS_AS(graph_from_json(dup), std::invalid_argument);
}
