#include <doctest.h>

#include <cyclebv/amplitude.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

using namespace cyclebv;

namespace {

SuperBasis one_even_letter() { return SuperBasis{{"x"}, {0}}; }

SuperBasis two_even_letters() { return SuperBasis{{"x", "y"}, {0, 0}}; }

SuperBasis mixed_letters() { return SuperBasis{{"u", "th"}, {0, 1}}; }

PairingForm unit_even_form() {
  PairingForm f;
  f.parity = FormParity::Even;
  f.entries = {{Rational(1)}};
  return f;
}

PairingForm dense_even_form() {
  PairingForm f;
  f.parity = FormParity::Even;
  f.entries = {{Rational(1), Rational(2)}, {Rational(2), Rational(1)}};
  return f;
}

PairingForm odd_swap_form() {
  PairingForm f;
  f.parity = FormParity::Odd;
  f.entries = {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
  return f;
}

CouplingSeries coupling(const std::string& sym, int deg, const Rational& c) {
  return CouplingSeries::monomial(RatFunc(c), 0, {{sym, deg}});
}

GradedAction cubic_even_action(const SuperBasis& basis) {
  GradedAction s;
  s.flavor = FormParity::Even;
  BVElement e(FormParity::Even);
  e.add_cycles({CyclicWord{{0, 0, 0}}}, coupling("t", 1, Rational(1)), basis);
  s.components[ActionKey{0, 1, 3}] = e;
  return s;
}

StableRibbonGraph two_trivalent(std::vector<int> alpha) {
  StableRibbonGraph g;
  g.half_edges = 6;
  g.alpha = std::move(alpha);
  g.vertices = {RibbonVertex{0, {{0, 1, 2}}}, RibbonVertex{0, {{3, 4, 5}}}};
  return g;
}

StableRibbonGraph theta_planar() { return two_trivalent({5, 4, 3, 2, 1, 0}); }
StableRibbonGraph theta_twisted() { return two_trivalent({3, 4, 5, 0, 1, 2}); }
StableRibbonGraph dumbbell() { return two_trivalent({1, 0, 5, 4, 3, 2}); }

// Independent inversion counter (deliberately not the library's sign engine).
int slow_sign(const std::vector<int>& src, const std::vector<int>& parities) {
  int inversions = 0;
  for (std::size_t j = 0; j < src.size(); ++j)
    for (std::size_t k = j + 1; k < src.size(); ++k)
      if (src[j] > src[k] && parities[src[j]] == 1 && parities[src[k]] == 1)
        ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

std::vector<std::pair<int, int>> ordered_edges(const StableRibbonGraph& g) {
  std::vector<std::pair<int, int>> e;
  for (int h = 0; h < g.half_edges; ++h)
    if (h < g.alpha[h]) e.push_back({h, g.alpha[h]});
  return e;
}

// Brute-force trace-side state sum: every pair of algebra indices on every
// edge, vertex cycles folded through the product table, sign recounted here.
// When every trace-bearing basis element of the model is odd, the per-cycle
// trace functionals are odd too: each cycle head carries an odd marker slot,
// and the markers are consumed by their cycles' minimal half-edge ids.
RatFunc slow_trace_state_sum(const StableRibbonGraph& g,
                             const MatrixAlgebraModel& model) {
  const PropagatorTensor tensor = propagator_tensor(model);
  const auto edges = ordered_edges(g);
  bool any_trace = false;
  bool all_odd = true;
  for (int a = 0; a < model.dim; ++a)
    if (model.trace_of(a) != 0) {
      any_trace = true;
      all_odd = all_odd && model.parity(a) == 1;
    }
  const bool odd_functional = any_trace && all_odd;
  std::vector<int> slot(g.half_edges, -1);
  std::vector<std::pair<int, int>> marker_by_min_id;  // (min half-edge, slot)
  int pos = 0;
  for (const auto& v : g.vertices)
    for (const auto& c : v.cycles) {
      if (odd_functional)
        marker_by_min_id.push_back(
            {*std::min_element(c.begin(), c.end()), pos++});
      for (int h : c) slot[h] = pos++;
    }
  std::sort(marker_by_min_id.begin(), marker_by_min_id.end());
  std::vector<int> consumption;
  for (const auto& [h, k] : edges) {
    consumption.push_back(slot[h]);
    consumption.push_back(slot[k]);
  }
  for (const auto& [id, m] : marker_by_min_id) consumption.push_back(m);

  std::vector<int> elem(g.half_edges, -1);
  RatFunc total;
  std::function<void(std::size_t, const RatFunc&)> rec =
      [&](std::size_t e, const RatFunc& acc) {
        if (e == edges.size()) {
          Rational traces(1);
          for (const auto& v : g.vertices) {
            for (const auto& c : v.cycles) {
              int cur = elem[c[0]];
              for (std::size_t p = 1; p < c.size() && cur >= 0; ++p)
                cur = model.product_index(cur, elem[c[p]]);
              if (cur < 0) return;
              Rational t = model.trace_of(cur);
              if (t == 0) return;
              traces *= t;
            }
          }
          std::vector<int> par(pos, 1);
          for (int h = 0; h < g.half_edges; ++h)
            par[slot[h]] = model.parity(elem[h]);
          total += acc * Rational(traces * slow_sign(consumption, par));
          return;
        }
        for (int a = 0; a < model.dim; ++a) {
          for (int b = 0; b < model.dim; ++b) {
            RatFunc w = tensor.entry(a, b);
            if (w.is_zero()) continue;
            elem[edges[e].first] = a;
            elem[edges[e].second] = b;
            rec(e + 1, acc * w);
          }
        }
      };
  rec(0, RatFunc(Rational(1)));
  return total;
}

// Brute-force action-side state sum.  The vertex factor is evaluated as a
// literal tensor contraction: for every stored monomial, every bijection of
// its cycles onto the vertex cycles and every cyclic alignment that matches
// the assigned letters contributes its own transport sign, recounted here.
CouplingSeries slow_action_state_sum(const StableRibbonGraph& g,
                                     const GradedAction& s,
                                     const SuperBasis& basis,
                                     const PairingForm& form) {
  const bool markers = cycles_carry_marker(s.flavor);
  const auto edges = ordered_edges(g);

  struct CycleRef {
    int marker_slot = -1;
    int first_letter_slot = 0;
    std::vector<int> half_edges;
  };
  std::vector<std::vector<CycleRef>> vertex_cycles;
  std::vector<int> slot(g.half_edges, -1);
  int pos = 0;
  for (const auto& v : g.vertices) {
    std::vector<CycleRef> refs;
    for (const auto& c : v.cycles) {
      CycleRef r;
      if (markers) r.marker_slot = pos++;
      r.first_letter_slot = pos;
      r.half_edges = c;
      for (int h : c) slot[h] = pos++;
      refs.push_back(std::move(r));
    }
    vertex_cycles.push_back(std::move(refs));
  }
  const int total_slots = pos;
  std::vector<int> consumption;
  for (const auto& [h, k] : edges) {
    consumption.push_back(slot[h]);
    consumption.push_back(slot[k]);
  }
  std::vector<std::pair<int, int>> marker_by_min_id;  // (min half-edge, slot)
  for (const auto& refs : vertex_cycles)
    for (const auto& r : refs)
      if (r.marker_slot >= 0)
        marker_by_min_id.push_back(
            {*std::min_element(r.half_edges.begin(), r.half_edges.end()),
             r.marker_slot});
  std::sort(marker_by_min_id.begin(), marker_by_min_id.end());
  for (const auto& [id, m] : marker_by_min_id) consumption.push_back(m);

  std::vector<std::pair<std::pair<int, int>, Rational>> couplings;
  for (int i = 0; i < basis.dim(); ++i)
    for (int j = 0; j < basis.dim(); ++j)
      if (form.entries[i][j] != 0)
        couplings.push_back({{i, j}, form.entries[i][j]});

  std::vector<int> letter(g.half_edges, -1);
  CouplingSeries total;

  // Sum of transport signs over literal matchings of `mono` onto the
  // letters currently assigned to this vertex's cycles.
  auto signed_matchings = [&](const CycleMonomial& mono,
                              const std::vector<CycleRef>& refs) -> long long {
    const int k = static_cast<int>(mono.cycles.size());
    if (static_cast<int>(refs.size()) != k) return 0;
    // Local flat copy of the vertex's presented symbols.
    std::vector<int> local_parity;
    std::vector<int> local_marker(k, -1);
    std::vector<int> local_first(k, 0);
    for (int c = 0; c < k; ++c) {
      if (markers) {
        local_marker[c] = static_cast<int>(local_parity.size());
        local_parity.push_back(1);
      }
      local_first[c] = static_cast<int>(local_parity.size());
      for (int h : refs[c].half_edges)
        local_parity.push_back(letter_parity(basis, s.flavor, letter[h]));
    }
    long long sum = 0;
    std::vector<int> to_mono(k);
    std::iota(to_mono.begin(), to_mono.end(), 0);
    do {
      bool lengths_ok = true;
      for (int c = 0; c < k && lengths_ok; ++c)
        lengths_ok = static_cast<int>(refs[c].half_edges.size()) ==
                     mono.cycles[to_mono[c]].length();
      if (!lengths_ok) continue;
      // Rotation odometer.
      std::vector<int> rot(k, 0);
      while (true) {
        bool literal = true;
        for (int c = 0; c < k && literal; ++c) {
          const auto& target = mono.cycles[to_mono[c]].letters;
          const auto& hs = refs[c].half_edges;
          const int len = static_cast<int>(hs.size());
          for (int p = 0; p < len && literal; ++p)
            literal = target[p] == letter[hs[(p + rot[c]) % len]];
        }
        if (literal) {
          // Build the source-position list of the monomial's flat symbols.
          std::vector<int> src;
          std::vector<int> from_mono(k);
          for (int c = 0; c < k; ++c) from_mono[to_mono[c]] = c;
          for (int t = 0; t < k; ++t) {
            const int c = from_mono[t];
            if (markers) src.push_back(local_marker[c]);
            const int len =
                static_cast<int>(refs[c].half_edges.size());
            for (int p = 0; p < len; ++p)
              src.push_back(local_first[c] + (p + rot[c]) % len);
          }
          sum += slow_sign(src, local_parity);
        }
        int c = 0;
        while (c < k) {
          const int len = static_cast<int>(refs[c].half_edges.size());
          if (++rot[c] < len) break;
          rot[c] = 0;
          ++c;
        }
        if (c == k) break;
      }
    } while (std::next_permutation(to_mono.begin(), to_mono.end()));
    return sum;
  };

  std::function<void(std::size_t, const Rational&)> rec =
      [&](std::size_t e, const Rational& acc) {
        if (e == edges.size()) {
          CouplingSeries product = CouplingSeries::constant(Rational(1));
          for (std::size_t vi = 0; vi < g.vertices.size(); ++vi) {
            const RibbonVertex& v = g.vertices[vi];
            ActionKey key{v.genus, v.cycle_count(), v.half_edge_count()};
            auto comp = s.components.find(key);
            if (comp == s.components.end()) return;
            CouplingSeries vertex_value;
            for (const auto& [mono, coeff] : comp->second.terms()) {
              long long signed_count = signed_matchings(mono, vertex_cycles[vi]);
              if (signed_count != 0)
                vertex_value += coeff * Rational(signed_count);
            }
            if (vertex_value.is_zero()) return;
            product *= vertex_value;
          }
          std::vector<int> par(total_slots, 1);
          for (int h = 0; h < g.half_edges; ++h)
            par[slot[h]] = letter_parity(basis, s.flavor, letter[h]);
          total += product * Rational(slow_sign(consumption, par)) * acc;
          return;
        }
        for (const auto& [pair_idx, value] : couplings) {
          letter[edges[e].first] = pair_idx.first;
          letter[edges[e].second] = pair_idx.second;
          rec(e + 1, acc * value);
        }
      };
  rec(0, Rational(1));
  return total;
}

RatFunc l1() { return RatFunc::variable(0); }

}  // namespace

TEST_SUITE("amplitude") {
  TEST_CASE("trivalent action weights at one even letter are the pinned values") {
    const SuperBasis basis = one_even_letter();
    const PairingForm form = unit_even_form();
    const GradedAction s = cubic_even_action(basis);

    const CouplingSeries planar = action_weight(theta_planar(), s, basis, form);
    const CouplingSeries twisted =
        action_weight(theta_twisted(), s, basis, form);
    const CouplingSeries bell = action_weight(dumbbell(), s, basis, form);

    CHECK(planar == coupling("t", 2, Rational(-9)));
    CHECK(twisted == coupling("t", 2, Rational(9)));
    CHECK(bell == coupling("t", 2, Rational(-9)));
  }

  TEST_CASE("trivalent trace weights on the queer model are the pinned values") {
    const MatrixAlgebraModel model = build_model(ModelKind::Queer, 1);
    const RatFunc eighth_cubed =
        RatFunc(Rational(1, 8)) / (l1() * l1() * l1());

    CHECK(trace_weight(theta_planar(), model) == -eighth_cubed);
    CHECK(trace_weight(theta_twisted(), model) == eighth_cubed);
    CHECK(trace_weight(dumbbell(), model) == -eighth_cubed);
  }

  TEST_CASE("action weight matches the slow tensor-contraction oracle") {
    SUBCASE("even flavor with two letters on the trivalent graphs") {
      const SuperBasis basis = two_even_letters();
      const PairingForm form = dense_even_form();
      GradedAction s;
      s.flavor = FormParity::Even;
      BVElement cubic(FormParity::Even);
      cubic.add_cycles({CyclicWord{{0, 0, 1}}}, coupling("t", 1, Rational(1)),
                       basis);
      cubic.add_cycles({CyclicWord{{1, 1, 1}}}, coupling("t", 1, Rational(2)),
                       basis);
      s.components[ActionKey{0, 1, 3}] = cubic;

      for (const StableRibbonGraph& g :
           {theta_planar(), theta_twisted(), dumbbell()}) {
        CouplingSeries fast = action_weight(g, s, basis, form);
        CouplingSeries slow = slow_action_state_sum(g, s, basis, form);
        CHECK(fast == slow);
        CHECK_FALSE(fast.is_zero());
      }
    }

    SUBCASE("even flavor with equal-length odd cycles vanishes structurally") {
      // Swapping the two odd cycles reverses the sign of every assignment
      // while the symmetric pairing keeps its weight, so the sum cancels in
      // pairs; the fixed points have two equal odd cycles and vanish too.
      const SuperBasis basis = two_even_letters();
      const PairingForm form = dense_even_form();
      GradedAction s;
      s.flavor = FormParity::Even;
      BVElement two_cycle(FormParity::Even);
      two_cycle.add_cycles({CyclicWord{{0, 0}}, CyclicWord{{1, 1}}},
                           coupling("u", 1, Rational(1)), basis);
      two_cycle.add_cycles({CyclicWord{{0, 0}}, CyclicWord{{0, 1}}},
                           coupling("u", 1, Rational(3)), basis);
      s.components[ActionKey{0, 2, 4}] = two_cycle;

      StableRibbonGraph g;
      g.half_edges = 4;
      g.alpha = {2, 3, 0, 1};
      g.vertices = {RibbonVertex{0, {{0, 1}, {2, 3}}}};

      CouplingSeries fast = action_weight(g, s, basis, form);
      CHECK(fast == slow_action_state_sum(g, s, basis, form));
      CHECK(fast.is_zero());
    }

    SUBCASE("even flavor with cycles of different lengths") {
      const SuperBasis basis = two_even_letters();
      const PairingForm form = dense_even_form();
      GradedAction s;
      s.flavor = FormParity::Even;
      BVElement two_cycle(FormParity::Even);
      two_cycle.add_cycles({CyclicWord{{0}}, CyclicWord{{0, 0, 1}}},
                           coupling("u", 1, Rational(1)), basis);
      s.components[ActionKey{0, 2, 4}] = two_cycle;

      StableRibbonGraph g;
      g.half_edges = 4;
      g.alpha = {1, 0, 3, 2};
      g.vertices = {RibbonVertex{0, {{0}, {1, 2, 3}}}};

      CouplingSeries fast = action_weight(g, s, basis, form);
      CHECK(fast == slow_action_state_sum(g, s, basis, form));
      CHECK_FALSE(fast.is_zero());
    }

    SUBCASE("odd flavor cubic term vanishes structurally on trivalent graphs") {
      const SuperBasis basis = mixed_letters();
      const PairingForm form = odd_swap_form();
      GradedAction s;
      s.flavor = FormParity::Odd;
      BVElement cubic(FormParity::Odd);
      cubic.add_cycles({CyclicWord{{0, 1, 1}}}, coupling("t", 1, Rational(1)),
                       basis);
      s.components[ActionKey{0, 1, 3}] = cubic;

      for (const StableRibbonGraph& g :
           {theta_planar(), theta_twisted(), dumbbell()}) {
        CHECK(action_weight(g, s, basis, form).is_zero());
        CHECK(slow_action_state_sum(g, s, basis, form).is_zero());
      }
    }

    SUBCASE("odd flavor quartic term on one-vertex graphs") {
      const SuperBasis basis = mixed_letters();
      const PairingForm form = odd_swap_form();
      GradedAction s;
      s.flavor = FormParity::Odd;
      BVElement quartic(FormParity::Odd);
      quartic.add_cycles({CyclicWord{{0, 0, 1, 1}}},
                         coupling("t", 1, Rational(1)), basis);
      s.components[ActionKey{0, 1, 4}] = quartic;

      for (std::vector<int> alpha :
           {std::vector<int>{1, 0, 3, 2}, std::vector<int>{2, 3, 0, 1}}) {
        StableRibbonGraph g;
        g.half_edges = 4;
        g.alpha = alpha;
        g.vertices = {RibbonVertex{0, {{0, 1, 2, 3}}}};
        CouplingSeries fast = action_weight(g, s, basis, form);
        CouplingSeries slow = slow_action_state_sum(g, s, basis, form);
        CHECK(fast == slow);
      }
    }
  }

  TEST_CASE("trace weight matches the slow state-sum oracle") {
    const std::vector<StableRibbonGraph> graphs = {theta_planar(),
                                                   theta_twisted(), dumbbell()};
    SUBCASE("queer size 1") {
      const MatrixAlgebraModel model = build_model(ModelKind::Queer, 1);
      for (const auto& g : graphs)
        CHECK(trace_weight(g, model) == slow_trace_state_sum(g, model));
    }
    SUBCASE("queer size 2") {
      const MatrixAlgebraModel model = build_model(ModelKind::Queer, 2);
      for (const auto& g : graphs)
        CHECK(trace_weight(g, model) == slow_trace_state_sum(g, model));
    }
    SUBCASE("general linear size 1") {
      const MatrixAlgebraModel model = build_model(ModelKind::GeneralLinear, 1);
      for (const auto& g : graphs)
        CHECK(trace_weight(g, model) == slow_trace_state_sum(g, model));
    }
    SUBCASE("loop on a genus-one two-legged vertex") {
      StableRibbonGraph g;
      g.half_edges = 2;
      g.alpha = {1, 0};
      g.vertices = {RibbonVertex{1, {{0, 1}}}};
      const MatrixAlgebraModel gl = build_model(ModelKind::GeneralLinear, 1);
      const MatrixAlgebraModel q = build_model(ModelKind::Queer, 1);
      CHECK(trace_weight(g, gl) == slow_trace_state_sum(g, gl));
      CHECK(trace_weight(g, q) == slow_trace_state_sum(g, q));
    }
  }

  TEST_CASE("weights are invariant under representation changes of a vertex") {
    const SuperBasis basis = two_even_letters();
    const PairingForm form = dense_even_form();
    GradedAction s;
    s.flavor = FormParity::Even;
    BVElement cubic(FormParity::Even);
    cubic.add_cycles({CyclicWord{{0, 0, 1}}}, coupling("t", 1, Rational(1)),
                     basis);
    s.components[ActionKey{0, 1, 3}] = cubic;
    const MatrixAlgebraModel model = build_model(ModelKind::Queer, 1);

    SUBCASE("rotating a cycle") {
      StableRibbonGraph g = theta_planar();
      StableRibbonGraph rotated = g;
      rotated.vertices[0].cycles[0] = {1, 2, 0};
      CHECK(action_weight(g, s, basis, form) ==
            action_weight(rotated, s, basis, form));
      CHECK(trace_weight(g, model) == trace_weight(rotated, model));

      StableRibbonGraph bell = dumbbell();
      StableRibbonGraph bell_rotated = bell;
      bell_rotated.vertices[1].cycles[0] = {5, 3, 4};
      CHECK(action_weight(bell, s, basis, form) ==
            action_weight(bell_rotated, s, basis, form));
      CHECK(trace_weight(bell, model) == trace_weight(bell_rotated, model));
    }

    SUBCASE("permuting the cycle list of a two-cycle vertex") {
      GradedAction s2;
      s2.flavor = FormParity::Even;
      BVElement two_cycle(FormParity::Even);
      two_cycle.add_cycles({CyclicWord{{0}}, CyclicWord{{0, 0, 1}}},
                           coupling("u", 1, Rational(3)), basis);
      s2.components[ActionKey{0, 2, 4}] = two_cycle;

      StableRibbonGraph g;
      g.half_edges = 4;
      g.alpha = {1, 0, 3, 2};
      g.vertices = {RibbonVertex{0, {{0}, {1, 2, 3}}}};
      StableRibbonGraph swapped = g;
      std::swap(swapped.vertices[0].cycles[0], swapped.vertices[0].cycles[1]);

      CHECK(action_weight(g, s2, basis, form) ==
            action_weight(swapped, s2, basis, form));
      CHECK(trace_weight(g, model) == trace_weight(swapped, model));
      CHECK_FALSE(action_weight(g, s2, basis, form).is_zero());
      CHECK_FALSE(trace_weight(g, model).is_zero());
    }

    SUBCASE("permuting the vertex list") {
      // After the swap the flat cycle order no longer matches the order of
      // the cycles' minimal half-edge ids, so the odd trace functionals'
      // consumption order is exercised nontrivially.
      StableRibbonGraph g = dumbbell();
      StableRibbonGraph swapped = g;
      std::swap(swapped.vertices[0], swapped.vertices[1]);

      CHECK(action_weight(g, s, basis, form) ==
            action_weight(swapped, s, basis, form));
      CHECK(trace_weight(g, model) == trace_weight(swapped, model));
      CHECK_FALSE(trace_weight(g, model).is_zero());

      const MatrixAlgebraModel gl = build_model(ModelKind::GeneralLinear, 1);
      CHECK(trace_weight(g, gl) == trace_weight(swapped, gl));
    }
  }

  TEST_CASE("graph terms assemble the trivalent inventory with exact weights") {
    const SuperBasis basis = one_even_letter();
    const PairingForm form = unit_even_form();
    const GradedAction s = cubic_even_action(basis);
    const MatrixAlgebraModel model = build_model(ModelKind::Queer, 1);

    const std::vector<GraphTerm> terms =
        graph_terms(s, basis, form, model, 1);
    REQUIRE(terms.size() == 3);
    CHECK(std::is_sorted(terms.begin(), terms.end(),
                         [](const GraphTerm& a, const GraphTerm& b) {
                           return a.encoding < b.encoding;
                         }));

    const RatFunc eighth_cubed =
        RatFunc(Rational(1, 8)) / (l1() * l1() * l1());
    int planar_seen = 0, twisted_seen = 0, bell_seen = 0;
    for (const GraphTerm& term : terms) {
      CHECK(term.surface.chi == -1);
      if (term.aut == 2) {
        ++bell_seen;
        CHECK(term.surface.gamma == 0);
        CHECK(term.surface.nu == 3);
        CHECK(term.action_side == coupling("t", 2, Rational(-9)));
        CHECK(term.trace_side == -eighth_cubed);
      } else if (term.surface.gamma == 0) {
        ++planar_seen;
        CHECK(term.aut == 6);
        CHECK(term.surface.nu == 3);
        CHECK(term.action_side == coupling("t", 2, Rational(-9)));
        CHECK(term.trace_side == -eighth_cubed);
      } else {
        ++twisted_seen;
        CHECK(term.aut == 6);
        CHECK(term.surface.gamma == 1);
        CHECK(term.surface.nu == 1);
        CHECK(term.action_side == coupling("t", 2, Rational(9)));
        CHECK(term.trace_side == eighth_cubed);
      }
      // weight = h^{-chi} * action * trace / aut, so here every term sits
      // at h^1 t^2.
      CHECK(term.weight ==
            (term.action_side * term.trace_side)
                    .shifted_by_h(1) *
                Rational(BigInt(1), BigInt(term.aut)));
    }
    CHECK(planar_seen == 1);
    CHECK(twisted_seen == 1);
    CHECK(bell_seen == 1);

    const CouplingSeries sum = graph_sum(s, basis, form, model, 1);
    CouplingSeries expected;
    expected.add_term(SeriesKey{1, {{"t", 2}}},
                      RatFunc(Rational(15, 16)) / (l1() * l1() * l1()));
    CHECK(sum == expected);
  }

  TEST_CASE("flavor and kind mismatches are rejected") {
    const SuperBasis even_basis = one_even_letter();
    const GradedAction even_s = cubic_even_action(even_basis);
    const PairingForm even_form = unit_even_form();

    PairingForm odd_form = odd_swap_form();
    CHECK_THROWS_AS(action_weight(theta_planar(), even_s, even_basis, odd_form),
                    std::invalid_argument);

    const MatrixAlgebraModel gl = build_model(ModelKind::GeneralLinear, 1);
    CHECK_THROWS_AS(graph_terms(even_s, even_basis, even_form, gl, 1),
                    std::invalid_argument);
  }

  TEST_CASE("absent data gives zero rather than an error") {
    const SuperBasis basis = one_even_letter();
    const PairingForm form = unit_even_form();
    const MatrixAlgebraModel model = build_model(ModelKind::Queer, 1);

    SUBCASE("empty action") {
      GradedAction s;
      s.flavor = FormParity::Even;
      CHECK(graph_sum(s, basis, form, model, 2).is_zero());
      CHECK(action_weight(theta_planar(), s, basis, form).is_zero());
    }

    SUBCASE("vertex type absent from the action") {
      const GradedAction s = cubic_even_action(basis);
      StableRibbonGraph g;
      g.half_edges = 4;
      g.alpha = {2, 3, 0, 1};
      g.vertices = {RibbonVertex{0, {{0, 1}, {2, 3}}}};
      CHECK(action_weight(g, s, basis, form).is_zero());
    }

    SUBCASE("cycle-length multiset of the component never matches") {
      GradedAction s;
      s.flavor = FormParity::Even;
      BVElement lopsided(FormParity::Even);
      lopsided.add_cycles({CyclicWord{{0}}, CyclicWord{{0, 0, 0}}},
                          coupling("u", 1, Rational(1)), basis);
      s.components[ActionKey{0, 2, 4}] = lopsided;
      StableRibbonGraph g;
      g.half_edges = 4;
      g.alpha = {2, 3, 0, 1};
      g.vertices = {RibbonVertex{0, {{0, 1}, {2, 3}}}};
      CHECK(action_weight(g, s, basis, form).is_zero());
    }

    SUBCASE("excess bound below every admissible graph") {
      const GradedAction s = cubic_even_action(basis);
      CHECK(graph_sum(s, basis, form, model, 0).is_zero());
      CHECK(graph_terms(s, basis, form, model, 0).empty());
    }

    SUBCASE("zeroed partial inverse kills the trace side") {
      MatrixAlgebraModel dead = build_model(ModelKind::Queer, 1);
      for (auto& column : dead.partial_inverse) column.clear();
      CHECK(propagator_tensor(dead).nonzero().empty());
      CHECK(trace_weight(theta_planar(), dead).is_zero());
    }
  }
}
