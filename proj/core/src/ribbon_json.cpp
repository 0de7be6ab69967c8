#include "cyclebv/ribbon_json.hpp"

#include <stdexcept>

namespace cyclebv {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument("graph JSON: " + what);
}

int read_label(const nlohmann::json& j, int half_edges) {
  if (!j.is_number_integer()) fail("half-edge labels must be integers");
  long long h = j.get<long long>();
  if (h < 1 || h > half_edges)
    fail("half-edge label " + std::to_string(h) + " is outside 1.." +
         std::to_string(half_edges));
  return static_cast<int>(h - 1);
}

}  // namespace

nlohmann::json graph_to_json(const StableRibbonGraph& g) {
  nlohmann::json j;
  j["halfedges"] = g.half_edges;
  nlohmann::json pairs = nlohmann::json::array();
  for (int h = 0; h < g.half_edges; ++h)
    if (h < g.alpha[h]) pairs.push_back({h + 1, g.alpha[h] + 1});
  j["alpha"] = std::move(pairs);
  nlohmann::json verts = nlohmann::json::array();
  for (const RibbonVertex& v : g.vertices) {
    nlohmann::json cycles = nlohmann::json::array();
    for (const auto& cycle : v.cycles) {
      nlohmann::json c = nlohmann::json::array();
      for (int h : cycle) c.push_back(h + 1);
      cycles.push_back(std::move(c));
    }
    verts.push_back({{"g", v.genus}, {"cycles", std::move(cycles)}});
  }
  j["vertices"] = std::move(verts);
  return j;
}

StableRibbonGraph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail("the document must be an object");
  for (const char* key : {"halfedges", "alpha", "vertices"})
    if (!j.contains(key)) fail(std::string("missing key \"") + key + "\"");
  if (!j["halfedges"].is_number_integer())
    fail("\"halfedges\" must be an integer");

  StableRibbonGraph g;
  long long count = j["halfedges"].get<long long>();
  if (count < 2 || count % 2 != 0 || count > 1'000'000)
    fail("\"halfedges\" must be a small positive even count");
  g.half_edges = static_cast<int>(count);
  g.alpha.assign(g.half_edges, -1);

  if (!j["alpha"].is_array()) fail("\"alpha\" must be an array of pairs");
  for (const auto& pair : j["alpha"]) {
    if (!pair.is_array() || pair.size() != 2)
      fail("every \"alpha\" entry must be a pair of labels");
    int a = read_label(pair[0], g.half_edges);
    int b = read_label(pair[1], g.half_edges);
    if (a == b) fail("a half-edge cannot be paired with itself");
    if (g.alpha[a] != -1 || g.alpha[b] != -1)
      fail("half-edge " + std::to_string(std::min(a, b) + 1) +
           " is paired more than once");
    g.alpha[a] = b;
    g.alpha[b] = a;
  }
  for (int h = 0; h < g.half_edges; ++h)
    if (g.alpha[h] == -1)
      fail("half-edge " + std::to_string(h + 1) + " is missing from \"alpha\"");

  if (!j["vertices"].is_array()) fail("\"vertices\" must be an array");
  for (const auto& vj : j["vertices"]) {
    if (!vj.is_object() || !vj.contains("g") || !vj.contains("cycles"))
      fail("every vertex needs keys \"g\" and \"cycles\"");
    if (!vj["g"].is_number_integer()) fail("vertex genus must be an integer");
    RibbonVertex v;
    v.genus = vj["g"].get<int>();
    if (!vj["cycles"].is_array() || vj["cycles"].empty())
      fail("vertex \"cycles\" must be a nonempty array");
    for (const auto& cj : vj["cycles"]) {
      if (!cj.is_array()) fail("every cycle must be an array of labels");
      std::vector<int> cycle;
      for (const auto& hj : cj) cycle.push_back(read_label(hj, g.half_edges));
      v.cycles.push_back(std::move(cycle));
    }
    g.vertices.push_back(std::move(v));
  }
  return g;
}

nlohmann::json inventory_to_json(const GraphInventory& inventory) {
  nlohmann::json out = nlohmann::json::array();
  for (const InventoryEntry& e : inventory.entries) {
    nlohmann::json j = graph_to_json(e.graph);
    j["aut"] = e.aut;
    j["chi"] = e.surface.chi;
    j["gamma"] = e.surface.gamma;
    j["nu"] = e.surface.nu;
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace cyclebv
