#include <cyclebv/wick.hpp>

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

namespace cyclebv {

namespace {

bool model_matches_flavor(const MatrixAlgebraModel& model, FormParity flavor) {
  return (model.kind == ModelKind::GeneralLinear) ==
         (flavor == FormParity::Odd);
}

// True when the trace functional is odd: there is at least one trace-bearing
// basis element and every trace-bearing element is odd.
bool odd_trace_functional(const MatrixAlgebraModel& model) {
  bool any = false;
  for (int a = 0; a < model.dim; ++a) {
    if (model.trace_of(a) == 0) continue;
    if (model.parity(a) == 0) return false;
    any = true;
  }
  return any;
}

// trace([Lam, K_l] * K_m) for every ordered pair of kernel vectors.
std::vector<std::vector<RatFunc>> bracket_trace_table(
    const MatrixAlgebraModel& model) {
  const int kn = static_cast<int>(model.kernel_basis.size());
  std::vector<AlgebraVector> bracket(kn);
  for (int l = 0; l < kn; ++l) {
    AlgebraVector x;
    for (const auto& [i, c] : model.kernel_basis[l].components)
      x.emplace_back(i, RatFunc(c));
    bracket[l] = model.apply(model.bracket_with_lambda, x);
  }
  std::vector<std::vector<RatFunc>> table(kn, std::vector<RatFunc>(kn));
  for (int l = 0; l < kn; ++l) {
    for (int m = 0; m < kn; ++m) {
      RatFunc acc;
      for (const auto& [t, ct] : bracket[l]) {
        for (const auto& [u, cu] : model.kernel_basis[m].components) {
          const int p = model.product_index(t, u);
          if (p < 0) continue;
          const Rational& tr = model.trace_of(p);
          if (tr == 0) continue;
          acc += ct * RatFunc(cu * tr);
        }
      }
      table[l][m] = acc;
    }
  }
  return table;
}

// One cycle (v_1 ... v_k): sum over kernel assignments (l_1 ... l_k) of
//   sign * trace(K_{l_1} ... K_{l_k}) * xi_{(v_1,l_1)} ... xi_{(v_k,l_k)}.
// The sign reorders the interleaved product [xi_1, K_1, ..., xi_k, K_k]
// into [xi_1 .. xi_k, K_1 .. K_k]; when the trace functional is odd it also
// moves the functional past the extracted coordinates.
FieldPolynomial cycle_polynomial(const FieldSpace& space,
                                 const MatrixAlgebraModel& model,
                                 const std::vector<int>& letters,
                                 bool odd_trace) {
  FieldPolynomial out;
  const int k = static_cast<int>(letters.size());
  const int kn = space.kernel_count;
  if (k == 0 || kn == 0) return out;
  std::vector<int> assign(k, 0);
  while (true) {
    std::map<int, Rational> prod;
    for (const auto& [i, c] : model.kernel_basis[assign[0]].components)
      prod.emplace(i, c);
    for (int j = 1; j < k && !prod.empty(); ++j) {
      std::map<int, Rational> next;
      for (const auto& [i, ci] : prod) {
        for (const auto& [u, cu] : model.kernel_basis[assign[j]].components) {
          const int p = model.product_index(i, u);
          if (p < 0) continue;
          const Rational add = ci * cu;
          auto [it, inserted] = next.emplace(p, add);
          if (!inserted) {
            it->second += add;
            if (it->second == 0) next.erase(it);
          }
        }
      }
      prod = std::move(next);
    }
    Rational tr(0);
    for (const auto& [i, c] : prod) tr += c * model.trace_of(i);
    if (tr != 0) {
      std::vector<int> src(2 * k);
      std::vector<int> par(2 * k);
      for (int j = 0; j < k; ++j) {
        src[j] = 2 * j;
        src[k + j] = 2 * j + 1;
        par[2 * j] =
            space.coords[space.coord_index(letters[j], assign[j])].parity;
        par[2 * j + 1] = model.kernel_basis[assign[j]].parity;
      }
      int sign = koszul_reorder_sign(src, par);
      if (odd_trace) {
        int coord_total = 0;
        for (int j = 0; j < k; ++j) coord_total ^= par[2 * j];
        if (coord_total) sign = -sign;
      }
      std::vector<int> factors(k);
      for (int j = 0; j < k; ++j)
        factors[j] = space.coord_index(letters[j], assign[j]);
      add_polynomial_term(out, space, std::move(factors),
                          CouplingSeries::constant(tr * Rational(sign)));
    }
    int j = k - 1;
    while (j >= 0 && assign[j] == kn - 1) {
      assign[j] = 0;
      --j;
    }
    if (j < 0) break;
    ++assign[j];
  }
  return out;
}

void wick_recurse(const GaussianData& gauss, const std::vector<int>& factors,
                  const std::vector<int>& parities, std::vector<char>& used,
                  std::vector<int>& consumption, const RatFunc& partial,
                  RatFunc& total) {
  const int n = static_cast<int>(factors.size());
  int i = 0;
  while (i < n && used[i]) ++i;
  if (i == n) {
    total += partial * Rational(koszul_reorder_sign(consumption, parities));
    return;
  }
  used[i] = 1;
  consumption.push_back(i);
  for (int j = i + 1; j < n; ++j) {
    if (used[j]) continue;
    const RatFunc& p = gauss.propagator[factors[i]][factors[j]];
    if (p.is_zero()) continue;
    used[j] = 1;
    consumption.push_back(j);
    wick_recurse(gauss, factors, parities, used, consumption, partial * p,
                 total);
    consumption.pop_back();
    used[j] = 0;
  }
  consumption.pop_back();
  used[i] = 0;
}

}  // namespace

FieldSpace build_field_space(const MatrixAlgebraModel& model,
                             const SuperBasis& vbasis) {
  vbasis.validate();
  FieldSpace space;
  space.m_dim = vbasis.dim() * model.dim;
  space.kernel_count = static_cast<int>(model.kernel_basis.size());
  space.coords.reserve(static_cast<std::size_t>(vbasis.dim()) *
                       static_cast<std::size_t>(space.kernel_count));
  const bool shifted_source = model.kind == ModelKind::Queer;
  for (int v = 0; v < vbasis.dim(); ++v) {
    const int source_parity =
        shifted_source ? 1 - vbasis.parity(v) : vbasis.parity(v);
    for (int l = 0; l < space.kernel_count; ++l) {
      const KernelVector& kv = model.kernel_basis[l];
      FieldCoordinate c;
      c.v = v;
      c.l = l;
      c.parity = (source_parity + kv.parity) % 2;
      c.name = vbasis.label(v) + ":" + kv.name;
      space.coords.push_back(std::move(c));
    }
  }
  return space;
}

GaussianData gaussian_data(const MatrixAlgebraModel& model,
                           const SuperBasis& vbasis, const PairingForm& form,
                           const FieldSpace& space) {
  if (!model_matches_flavor(model, form.parity))
    throw std::invalid_argument("pairing parity does not match the model kind");
  validate_pairing(vbasis, form);
  const std::vector<std::vector<Rational>> binv = invert_matrix(form.entries);
  const std::vector<std::vector<RatFunc>> f = bracket_trace_table(model);
  const int odd_trace = odd_trace_functional(model) ? 1 : 0;

  // Coefficients of the quadratic function
  //   -1/2 * sum_{v,w} C[v][w] * trace([Lam, X(w_v)] * X(w_w)),
  // expanded in left-extracted coordinates; C is the inverse pairing carried
  // to the dual side, which costs a (-1)^{p_v} on the first slot.
  const int n = space.dim();
  std::vector<std::vector<RatFunc>> coef(n, std::vector<RatFunc>(n));
  for (int a = 0; a < n; ++a) {
    const FieldCoordinate& ca = space.coords[a];
    for (int b = 0; b < n; ++b) {
      const FieldCoordinate& cb = space.coords[b];
      const Rational& bvw = binv[ca.v][cb.v];
      if (bvw == 0) continue;
      const RatFunc& fab = f[ca.l][cb.l];
      if (fab.is_zero()) continue;
      if (ca.parity != cb.parity)
        throw std::logic_error("gaussian form mixes coordinate parities");
      const int kpar = model.kernel_basis[ca.l].parity;
      const int exponent = ca.parity + (kpar + 1) * cb.parity +
                           odd_trace * (ca.parity + cb.parity + ca.parity * cb.parity) +
                           vbasis.parity(ca.v);
      const Rational scale =
          bvw * Rational(exponent % 2 ? 1 : -1, 2);  // includes the -1/2
      const RatFunc val = fab * scale;
      if (val.is_zero()) continue;
      if (a == b) {
        if (ca.parity == 1) continue;  // xi^2 = 0
        coef[a][a] += val;
      } else if (a < b) {
        coef[a][b] += val;
      } else {
        coef[b][a] += (ca.parity && cb.parity) ? -val : val;
      }
    }
  }

  // quad(X) = -1/2 sum_{c,d} Q[c][d] xi_c xi_d with Q graded symmetric.
  GaussianData g;
  g.quadratic.assign(n, std::vector<RatFunc>(n));
  for (int a = 0; a < n; ++a) {
    g.quadratic[a][a] = -(coef[a][a] + coef[a][a]);
    for (int b = a + 1; b < n; ++b) {
      g.quadratic[a][b] = -coef[a][b];
      g.quadratic[b][a] = (space.coords[a].parity && space.coords[b].parity)
                              ? coef[a][b]
                              : -coef[a][b];
    }
  }
  g.propagator =
      invert_ratfunc_matrix(g.quadratic, "Lagrangian not transverse");
  return g;
}

void add_polynomial_term(FieldPolynomial& poly, const FieldSpace& space,
                         std::vector<int> factors,
                         const CouplingSeries& coeff) {
  if (coeff.is_zero()) return;
  const int k = static_cast<int>(factors.size());
  std::vector<int> src(k);
  for (int i = 0; i < k; ++i) src[i] = i;
  std::stable_sort(src.begin(), src.end(),
                   [&](int a, int b) { return factors[a] < factors[b]; });
  std::vector<int> parities(k);
  for (int i = 0; i < k; ++i)
    parities[i] = space.coords.at(factors[i]).parity;
  const int sign = koszul_reorder_sign(src, parities);
  std::vector<int> sorted(k);
  for (int i = 0; i < k; ++i) sorted[i] = factors[src[i]];
  for (int i = 0; i + 1 < k; ++i)
    if (sorted[i] == sorted[i + 1] && space.coords[sorted[i]].parity == 1)
      return;  // square of an odd coordinate
  const CouplingSeries add = sign < 0 ? -coeff : coeff;
  auto it = poly.terms.find(sorted);
  if (it == poly.terms.end()) {
    poly.terms.emplace(std::move(sorted), add);
  } else {
    it->second += add;
    if (it->second.is_zero()) poly.terms.erase(it);
  }
}

FieldPolynomial polynomial_product(const FieldSpace& space,
                                   const FieldPolynomial& a,
                                   const FieldPolynomial& b) {
  FieldPolynomial out;
  for (const auto& [fa, ca] : a.terms) {
    for (const auto& [fb, cb] : b.terms) {
      std::vector<int> factors = fa;
      factors.insert(factors.end(), fb.begin(), fb.end());
      add_polynomial_term(out, space, std::move(factors), ca * cb);
    }
  }
  return out;
}

FieldPolynomial build_action_polynomial(const GradedAction& s,
                                        const SuperBasis& vbasis,
                                        const MatrixAlgebraModel& model,
                                        const FieldSpace& space) {
  if (!model_matches_flavor(model, s.flavor))
    throw std::invalid_argument("action flavor does not match the model kind");
  s.validate(vbasis);
  const bool odd_trace = odd_trace_functional(model);
  FieldPolynomial total;
  for (const auto& [key, elem] : s.components) {
    const int h_shift = key.h_weight() - 1;  // h^{2g-2+i}
    for (const auto& [mono, coeff] : elem.terms()) {
      FieldPolynomial mpoly;
      add_polynomial_term(mpoly, space, {},
                          CouplingSeries::constant(Rational(1)));
      for (const CyclicWord& cycle : mono.cycles) {
        mpoly = polynomial_product(
            space, mpoly,
            cycle_polynomial(space, model, cycle.letters, odd_trace));
        if (mpoly.is_zero()) break;
      }
      if (mpoly.is_zero()) continue;
      const CouplingSeries scale = coeff.shifted_by_h(h_shift);
      for (const auto& [factors, c] : mpoly.terms)
        add_polynomial_term(total, space, factors, c * scale);
    }
  }
  return total;
}

CouplingSeries wick_expectation(const FieldSpace& space,
                                const GaussianData& gauss,
                                const std::vector<int>& factors) {
  const int n = static_cast<int>(factors.size());
  if (n == 0) return CouplingSeries::constant(Rational(1));
  if (n % 2 != 0) return CouplingSeries();
  std::vector<int> parities(n);
  for (int i = 0; i < n; ++i)
    parities[i] = space.coords.at(factors[i]).parity;
  RatFunc total;
  std::vector<char> used(n, 0);
  std::vector<int> consumption;
  consumption.reserve(n);
  wick_recurse(gauss, factors, parities, used, consumption,
               RatFunc(Rational(1)), total);
  if (total.is_zero()) return CouplingSeries();
  return CouplingSeries::monomial(total, n / 2, {});
}

CouplingSeries log_partition(const GradedAction& s, const SuperBasis& vbasis,
                             const PairingForm& form,
                             const MatrixAlgebraModel& model, int h_order,
                             int coupling_degree) {
  if (h_order < 0 || coupling_degree < 0)
    throw std::invalid_argument("expansion orders must be nonnegative");
  const FieldSpace space = build_field_space(model, vbasis);
  const GaussianData gauss = gaussian_data(model, vbasis, form, space);
  const FieldPolynomial action =
      build_action_polynomial(s, vbasis, model, space);
  for (const auto& [factors, coeff] : action.terms) {
    for (const auto& [key, value] : coeff.terms()) {
      (void)value;
      if (key.coupling_degree() < 1)
        throw std::invalid_argument(
            "interaction terms must carry at least one coupling power");
    }
  }

  // Z - 1: every term carries h-degree >= 1 (each vertex contributes
  // (2g-2+i) + n/2 >= 1/2 and the total is an integer).
  CouplingSeries z_minus_1(1, h_order, coupling_degree);
  FieldPolynomial power;
  add_polynomial_term(power, space, {}, CouplingSeries::constant(Rational(1)));
  Rational inv_factorial(1);
  const int k_max = std::min(coupling_degree, 2 * h_order);
  for (int k = 1; k <= k_max; ++k) {
    power = polynomial_product(space, power, action);
    // Drop terms that can no longer reach the window: both the h-degree
    // (coefficient h plus half the factor count) and the coupling degree
    // only grow with further factors.
    FieldPolynomial reachable;
    for (const auto& [factors, coeff] : power.terms) {
      int min_h = std::numeric_limits<int>::max();
      int min_deg = std::numeric_limits<int>::max();
      for (const auto& [key, value] : coeff.terms()) {
        (void)value;
        min_h = std::min(min_h, key.hbar);
        min_deg = std::min(min_deg, key.coupling_degree());
      }
      if (coeff.is_zero()) continue;
      if (2 * min_h + static_cast<int>(factors.size()) > 2 * h_order) continue;
      if (min_deg > coupling_degree) continue;
      reachable.terms.emplace(factors, coeff);
    }
    power = std::move(reachable);
    if (power.is_zero()) break;
    inv_factorial /= Rational(k);
    CouplingSeries expectation;
    for (const auto& [factors, coeff] : power.terms) {
      const CouplingSeries w = wick_expectation(space, gauss, factors);
      if (w.is_zero()) continue;
      expectation += coeff * w;
    }
    z_minus_1 += expectation * inv_factorial;
  }
  return series_log_one_plus(z_minus_1);
}

CompareReport compare(const GradedAction& s, const SuperBasis& vbasis,
                      const PairingForm& form,
                      const MatrixAlgebraModel& model, int max_excess) {
  CompareReport report;
  report.constant = RatFunc(Rational(1));
  const CouplingSeries rhs = graph_sum(s, vbasis, form, model, max_excess);
  int degree_bound = 0;
  for (const auto& [key, elem] : s.components) {
    (void)key;
    for (const auto& [mono, coeff] : elem.terms()) {
      (void)mono;
      for (const auto& [k, v] : coeff.terms()) {
        (void)v;
        degree_bound = std::max(degree_bound, k.coupling_degree());
      }
    }
  }
  degree_bound *= 2 * max_excess;
  const CouplingSeries lhs =
      log_partition(s, vbasis, form, model, max_excess, degree_bound);

  std::set<SeriesKey> keys;
  for (const auto& [k, v] : lhs.terms()) {
    (void)v;
    keys.insert(k);
  }
  for (const auto& [k, v] : rhs.terms()) {
    (void)v;
    keys.insert(k);
  }
  if (keys.empty()) {
    report.trivially_equal = true;
    return report;
  }
  bool calibrated = false;
  for (const SeriesKey& k : keys) {
    const RatFunc l = lhs.coefficient(k);
    const RatFunc r = rhs.coefficient(k);
    if (!calibrated && !l.is_zero() && !r.is_zero()) {
      report.constant = l / r;
      calibrated = true;
    }
  }
  for (const SeriesKey& k : keys) {
    CompareRow row;
    row.key = k;
    row.lhs = lhs.coefficient(k);
    row.rhs = rhs.coefficient(k);
    row.matches = (row.lhs == report.constant * row.rhs);
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace cyclebv
