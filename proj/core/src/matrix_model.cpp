#include <cyclebv/matrix_model.hpp>

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cyclebv {

namespace {

void sort_and_merge(AlgebraVector& v) {
  std::map<int, RatFunc> acc;
  for (auto& [i, c] : v) {
    auto it = acc.find(i);
    if (it == acc.end())
      acc.emplace(i, c);
    else
      it->second += c;
  }
  v.clear();
  for (auto& [i, c] : acc)
    if (!c.is_zero()) v.emplace_back(i, c);
}

// x * y for sparse vectors through the product table.
AlgebraVector multiply_vectors(const MatrixAlgebraModel& m,
                               const AlgebraVector& x, const AlgebraVector& y) {
  AlgebraVector out;
  for (const auto& [a, ca] : x) {
    for (const auto& [b, cb] : y) {
      int p = m.product_index(a, b);
      if (p >= 0) out.emplace_back(p, ca * cb);
    }
  }
  sort_and_merge(out);
  return out;
}

std::string index_pair_name(const char* stem, int i, int j) {
  std::ostringstream os;
  os << stem << "(" << i + 1 << "," << j + 1 << ")";
  return os.str();
}

void build_gl(MatrixAlgebraModel& m) {
  const int d = m.size;
  const int rows = 2 * d;
  m.dim = rows * rows;
  auto part = [d](int r) { return r < d ? 0 : 1; };
  auto unit = [rows](int r, int c) { return r * rows + c; };

  m.parities.resize(m.dim);
  m.names.resize(m.dim);
  m.trace_values.assign(m.dim, Rational(0));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < rows; ++c) {
      int a = unit(r, c);
      m.parities[a] = (part(r) + part(c)) % 2;
      m.names[a] = index_pair_name("E", r, c);
      if (r == c) m.trace_values[a] = part(r) == 0 ? Rational(1) : Rational(-1);
    }
  }

  m.product_table.assign(m.dim * m.dim, -1);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < rows; ++c)
      for (int c2 = 0; c2 < rows; ++c2)
        m.product_table[unit(r, c) * m.dim + unit(c, c2)] = unit(r, c2);

  // dual of u(r,c) is (-1)^{part(r)} u(c,r) for the supertrace pairing.
  m.dual_index.resize(m.dim);
  m.dual_sign.resize(m.dim);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < rows; ++c) {
      m.dual_index[unit(r, c)] = unit(c, r);
      m.dual_sign[unit(r, c)] = part(r) == 0 ? Rational(1) : Rational(-1);
    }
  }

  // Partial inverse: both diagonal blocks land in the top-right block; the
  // bottom-left block returns to the difference of the diagonal blocks.
  m.partial_inverse.assign(m.dim, {});
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      RatFunc w = (m.lambda[i] + m.lambda[j]).inverse();
      m.partial_inverse[unit(i, j)] = {{unit(i, d + j), w}};
      m.partial_inverse[unit(d + i, d + j)] = {{unit(i, d + j), w}};
      m.partial_inverse[unit(d + i, j)] = {{unit(i, j), w},
                                           {unit(d + i, d + j), -w}};
    }
  }

  m.kernel_basis.clear();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      KernelVector diag;
      diag.name = index_pair_name("D", i, j);
      diag.parity = 0;
      diag.components = {{unit(i, j), Rational(1)},
                         {unit(d + i, d + j), Rational(-1)}};
      m.kernel_basis.push_back(std::move(diag));
    }
  }
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      KernelVector top;
      top.name = index_pair_name("T", i, j);
      top.parity = 1;
      top.components = {{unit(i, d + j), Rational(1)}};
      m.kernel_basis.push_back(std::move(top));
    }
  }
}

void build_q(MatrixAlgebraModel& m) {
  const int n = m.size;
  m.dim = 2 * n * n;
  auto elem = [n](int half, int i, int j) { return half * n * n + i * n + j; };

  m.parities.resize(m.dim);
  m.names.resize(m.dim);
  m.trace_values.assign(m.dim, Rational(0));
  for (int half = 0; half < 2; ++half) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        int a = elem(half, i, j);
        m.parities[a] = half;
        m.names[a] = index_pair_name(half == 0 ? "E" : "PE", i, j);
        if (half == 1 && i == j) m.trace_values[a] = Rational(1);
      }
    }
  }

  // (A,B)(A',B') = (AA'+BB', AB'+BA'): the halves add mod 2 and the matrix
  // indices compose like matrix units.
  m.product_table.assign(m.dim * m.dim, -1);
  for (int ha = 0; ha < 2; ++ha)
    for (int hb = 0; hb < 2; ++hb)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int l = 0; l < n; ++l)
            m.product_table[elem(ha, i, j) * m.dim + elem(hb, j, l)] =
                elem((ha + hb) % 2, i, l);

  // dual of E(i,j) is PE(j,i); dual of PE(i,j) is E(j,i).
  m.dual_index.resize(m.dim);
  m.dual_sign.assign(m.dim, Rational(1));
  for (int half = 0; half < 2; ++half)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        m.dual_index[elem(half, i, j)] = elem(1 - half, j, i);

  m.partial_inverse.assign(m.dim, {});
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      RatFunc w = (m.lambda[i] + m.lambda[j]).inverse();
      m.partial_inverse[elem(0, i, j)] = {{elem(1, i, j), w}};
    }
  }

  m.kernel_basis.clear();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      KernelVector v;
      v.name = index_pair_name("PE", i, j);
      v.parity = 1;
      v.components = {{elem(1, i, j), Rational(1)}};
      m.kernel_basis.push_back(std::move(v));
    }
  }
}

AlgebraVector lambda_element(const MatrixAlgebraModel& m) {
  AlgebraVector lam;
  if (m.kind == ModelKind::GeneralLinear) {
    const int d = m.size, rows = 2 * d;
    for (int i = 0; i < d; ++i) {
      lam.emplace_back(i * rows + (d + i), RatFunc(Rational(1)));
      lam.emplace_back((d + i) * rows + i, m.lambda[i]);
    }
  } else {
    const int n = m.size;
    for (int i = 0; i < n; ++i)
      lam.emplace_back(n * n + i * n + i, m.lambda[i]);
  }
  sort_and_merge(lam);
  return lam;
}

void self_check(const MatrixAlgebraModel& m) {
  auto fail = [](const std::string& what) {
    throw std::logic_error("model self-check failed: " + what);
  };

  // Dual basis: trace(f_a * dual(f_b)) = delta_ab.
  for (int a = 0; a < m.dim; ++a) {
    for (int b = 0; b < m.dim; ++b) {
      int p = m.product_index(a, m.dual_index[b]);
      Rational value = p < 0 ? Rational(0) : m.trace_of(p) * m.dual_sign[b];
      if (value != Rational(a == b ? 1 : 0)) fail("dual basis pairing");
    }
  }

  // Anticommutator identity and nilpotence, elementwise on the basis.
  for (int a = 0; a < m.dim; ++a) {
    AlgebraVector single{{a, RatFunc(Rational(1))}};
    AlgebraVector anti =
        m.apply(m.bracket_with_lambda, m.apply(m.partial_inverse, single));
    for (auto& [i, c] :
         m.apply(m.partial_inverse, m.apply(m.bracket_with_lambda, single)))
      anti.emplace_back(i, c);
    sort_and_merge(anti);
    if (anti.size() != 1 || anti[0].first != a ||
        anti[0].second != RatFunc(Rational(1)))
      fail("anticommutator identity on basis element " + m.names[a]);
    if (!m.apply(m.partial_inverse, m.apply(m.partial_inverse, single)).empty())
      fail("partial inverse is not nilpotent on " + m.names[a]);
  }

  // The declared kernel basis is killed by the partial inverse and spans
  // half the algebra.
  if (2 * static_cast<int>(m.kernel_basis.size()) != m.dim)
    fail("kernel dimension");
  for (const KernelVector& k : m.kernel_basis) {
    AlgebraVector v;
    for (auto& [i, c] : k.components) {
      v.emplace_back(i, RatFunc(c));
      if (m.parity(i) != k.parity) fail("kernel vector homogeneity");
    }
    if (!m.apply(m.partial_inverse, v).empty())
      fail("kernel vector " + k.name + " not annihilated");
  }
}

}  // namespace

AlgebraVector MatrixAlgebraModel::apply(
    const std::vector<AlgebraVector>& map, const AlgebraVector& x) const {
  AlgebraVector out;
  for (const auto& [a, c] : x)
    for (const auto& [t, w] : map.at(a)) out.emplace_back(t, c * w);
  sort_and_merge(out);
  return out;
}

RatFunc MatrixAlgebraModel::pair_basis(int a, int b) const {
  int p = product_index(a, b);
  return p < 0 ? RatFunc() : RatFunc(trace_of(p));
}

std::string MatrixAlgebraModel::describe() const {
  std::ostringstream os;
  os << (kind == ModelKind::GeneralLinear ? "gl" : "q") << " model, size "
     << size << ", lambda = [";
  for (int i = 0; i < size; ++i)
    os << (i ? ", " : "") << lambda[i].to_string();
  os << "]";
  return os.str();
}

MatrixAlgebraModel build_model(ModelKind kind, int size,
                               const std::vector<RatFunc>& lambda) {
  if (size <= 0) throw std::invalid_argument("model size must be positive");
  MatrixAlgebraModel m;
  m.kind = kind;
  m.size = size;
  if (lambda.empty()) {
    m.symbolic = true;
    for (int i = 0; i < size; ++i) m.lambda.push_back(RatFunc::variable(i));
  } else {
    if (static_cast<int>(lambda.size()) != size)
      throw std::invalid_argument("expected exactly one lambda per index");
    m.symbolic = false;
    m.lambda = lambda;
  }
  for (int i = 0; i < size; ++i)
    for (int j = i; j < size; ++j)
      if ((m.lambda[i] + m.lambda[j]).is_zero())
        throw PoleError("propagator pole");

  if (kind == ModelKind::GeneralLinear)
    build_gl(m);
  else
    build_q(m);

  // [Lam, f] = Lam*f - (-1)^{|f|} f*Lam, from the product table.
  AlgebraVector lam = lambda_element(m);
  m.bracket_with_lambda.assign(m.dim, {});
  for (int a = 0; a < m.dim; ++a) {
    AlgebraVector single{{a, RatFunc(Rational(1))}};
    AlgebraVector out = multiply_vectors(m, lam, single);
    for (auto& [i, c] : multiply_vectors(m, single, lam))
      out.emplace_back(i, m.parity(a) == 0 ? -c : c);
    sort_and_merge(out);
    m.bracket_with_lambda[a] = std::move(out);
  }

  self_check(m);
  return m;
}

RatFunc PropagatorTensor::entry(int a, int b) const {
  for (const auto& [j, c] : entries.at(a))
    if (j == b) return c;
  return RatFunc();
}

std::vector<std::pair<std::pair<int, int>, RatFunc>> PropagatorTensor::nonzero()
    const {
  std::vector<std::pair<std::pair<int, int>, RatFunc>> out;
  for (int a = 0; a < dim; ++a)
    for (const auto& [b, c] : entries[a]) out.push_back({{a, b}, c});
  return out;
}

PropagatorTensor propagator_tensor(const MatrixAlgebraModel& model) {
  PropagatorTensor k;
  k.dim = model.dim;
  k.entries.assign(model.dim, {});
  for (int a = 0; a < model.dim; ++a) {
    for (const auto& [t, c] : model.partial_inverse[a]) {
      k.entries[t].emplace_back(model.dual_index[a],
                                c * RatFunc(model.dual_sign[a]));
    }
  }
  for (auto& row : k.entries) sort_and_merge(row);
  return k;
}

AlgebraVector contract_dual_slot(const MatrixAlgebraModel& model,
                                 const PropagatorTensor& k, int x) {
  AlgebraVector out;
  for (int a = 0; a < model.dim; ++a) {
    for (const auto& [b, c] : k.entries[a]) {
      RatFunc paired = model.pair_basis(x, b);
      if (!paired.is_zero()) out.emplace_back(a, paired * c);
    }
  }
  sort_and_merge(out);
  return out;
}

int adjointness_defect_count(const MatrixAlgebraModel& model) {
  int defects = 0;
  for (int a = 0; a < model.dim; ++a) {
    AlgebraVector va{{a, RatFunc(Rational(1))}};
    AlgebraVector ia = model.apply(model.partial_inverse, va);
    for (int b = 0; b < model.dim; ++b) {
      RatFunc lhs;
      for (const auto& [t, c] : ia) lhs += c * model.pair_basis(t, b);
      RatFunc rhs;
      for (const auto& [t, c] : model.partial_inverse[b])
        rhs += c * model.pair_basis(a, t);
      if (lhs != rhs) ++defects;
    }
  }
  return defects;
}

std::vector<std::vector<RatFunc>> invert_ratfunc_matrix(
    const std::vector<std::vector<RatFunc>>& m,
    const std::string& singular_message) {
  const int n = static_cast<int>(m.size());
  std::vector<std::vector<RatFunc>> a = m;
  std::vector<std::vector<RatFunc>> inv(n, std::vector<RatFunc>(n));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(m[i].size()) != n)
      throw std::invalid_argument("matrix must be square");
    inv[i][i] = RatFunc(Rational(1));
  }
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (!a[r][col].is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw std::runtime_error(singular_message);
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    RatFunc scale = a[col][col].inverse();
    for (int c = 0; c < n; ++c) {
      a[col][c] *= scale;
      inv[col][c] *= scale;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      RatFunc factor = a[r][col];
      for (int c = 0; c < n; ++c) {
        a[r][c] -= factor * a[col][c];
        inv[r][c] -= factor * inv[col][c];
      }
    }
  }
  return inv;
}

}  // namespace cyclebv
