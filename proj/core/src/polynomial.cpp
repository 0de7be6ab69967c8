#include <cyclebv/polynomial.hpp>

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cyclebv {

namespace {

void trim_trailing_zeros(Exponents& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

int total_of(const Exponents& e) {
  int t = 0;
  for (int x : e) t += x;
  return t;
}

Exponents mono_mul(const Exponents& a, const Exponents& b) {
  Exponents r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim_trailing_zeros(r);
  return r;
}

bool mono_divides(const Exponents& d, const Exponents& m) {
  if (d.size() > m.size()) return false;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > m[i]) return false;
  return true;
}

Exponents mono_div(const Exponents& m, const Exponents& d) {
  Exponents r = m;
  for (std::size_t i = 0; i < d.size(); ++i) r[i] -= d[i];
  trim_trailing_zeros(r);
  return r;
}

BigInt int_gcd(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    BigInt t = a % b;
    a = b;
    b = t;
  }
  return a;
}

BigInt int_lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  BigInt g = int_gcd(a, b);
  BigInt r = (a / g) * b;
  return r < 0 ? -r : r;
}

// Positive rational c such that p / c has coprime integer coefficients.
Rational rational_content(const MultiPoly& p) {
  BigInt num_gcd = 0;
  BigInt den_lcm = 1;
  for (const auto& [mono, coeff] : p.terms()) {
    num_gcd = int_gcd(num_gcd, numerator(coeff));
    den_lcm = int_lcm(den_lcm, denominator(coeff));
  }
  if (num_gcd == 0) return Rational(0);
  return Rational(num_gcd, den_lcm);
}

// p scaled to have coprime integer coefficients and positive leading
// coefficient.
MultiPoly primitive_positive(const MultiPoly& p) {
  if (p.is_zero()) return p;
  Rational c = rational_content(p);
  if (p.leading_term().second < 0) c = -c;
  MultiPoly out;
  for (const auto& [mono, coeff] : p.terms()) out.add_term(mono, coeff / c);
  return out;
}

}  // namespace

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
  int ta = total_of(a), tb = total_of(b);
  if (ta != tb) return ta < tb;
  std::size_t n = std::max(a.size(), b.size());
  for (std::size_t k = n; k-- > 0;) {
    int ea = k < a.size() ? a[k] : 0;
    int eb = k < b.size() ? b[k] : 0;
    if (ea != eb) return ea < eb;
  }
  return false;
}

MultiPoly::MultiPoly(const Rational& c) {
  if (c != 0) terms_[Exponents{}] = c;
}

MultiPoly::MultiPoly(long c) : MultiPoly(Rational(c)) {}

MultiPoly MultiPoly::constant(const Rational& c) { return MultiPoly(c); }

MultiPoly MultiPoly::variable(int index) {
  if (index < 0) throw std::invalid_argument("negative generator index");
  MultiPoly p;
  Exponents e(index + 1, 0);
  e[index] = 1;
  p.terms_[e] = 1;
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational MultiPoly::constant_value() const {
  auto it = terms_.find(Exponents{});
  return it == terms_.end() ? Rational(0) : it->second;
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  return total_of(terms_.rbegin()->first);
}

int MultiPoly::top_variable() const {
  int top = -1;
  for (const auto& [mono, coeff] : terms_)
    top = std::max<int>(top, static_cast<int>(mono.size()) - 1);
  return top;
}

int MultiPoly::degree_in(int var) const {
  int d = 0;
  for (const auto& [mono, coeff] : terms_)
    if (var < static_cast<int>(mono.size())) d = std::max(d, mono[var]);
  return d;
}

Rational MultiPoly::coefficient(const Exponents& mono) const {
  Exponents key = mono;
  trim_trailing_zeros(key);
  auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::set_coefficient(const Exponents& mono, const Rational& value) {
  Exponents key = mono;
  trim_trailing_zeros(key);
  if (value == 0)
    terms_.erase(key);
  else
    terms_[key] = value;
}

void MultiPoly::add_term(const Exponents& mono, const Rational& value) {
  if (value == 0) return;
  Exponents key = mono;
  trim_trailing_zeros(key);
  auto [it, inserted] = terms_.emplace(key, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r;
  for (const auto& [mono, coeff] : terms_) r.terms_[mono] = -coeff;
  return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r = *this;
  r += o;
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  MultiPoly r = *this;
  r -= o;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  for (const auto& [mono, coeff] : o.terms_) add_term(mono, coeff);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  for (const auto& [mono, coeff] : o.terms_) add_term(mono, -coeff);
  return *this;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  MultiPoly r;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
  return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
  *this = *this * o;
  return *this;
}

MultiPoly MultiPoly::operator*(const Rational& c) const {
  MultiPoly r;
  if (c == 0) return r;
  for (const auto& [mono, coeff] : terms_) r.terms_[mono] = coeff * c;
  return r;
}

MultiPoly operator*(const Rational& c, const MultiPoly& p) { return p * c; }

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly r(Rational(1));
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1u;
  }
  return r;
}

std::pair<Exponents, Rational> MultiPoly::leading_term() const {
  if (terms_.empty()) throw std::domain_error("leading term of zero");
  auto it = terms_.rbegin();
  return {it->first, it->second};
}

Rational MultiPoly::substitute(const std::vector<Rational>& values) const {
  Rational total = 0;
  for (const auto& [mono, coeff] : terms_) {
    Rational t = coeff;
    for (std::size_t i = 0; i < mono.size(); ++i) {
      if (mono[i] == 0) continue;
      if (i >= values.size())
        throw std::invalid_argument("substitution is missing a value");
      Rational p = 1;
      for (int k = 0; k < mono[i]; ++k) p *= values[i];
      t *= p;
    }
    total += t;
  }
  return total;
}

MultiPoly MultiPoly::rename_variable(int old_index, int new_index) const {
  MultiPoly out;
  for (const auto& [mono, coeff] : terms_) {
    Exponents e = mono;
    int pow_old = old_index < static_cast<int>(e.size()) ? e[old_index] : 0;
    if (pow_old != 0) {
      e[old_index] = 0;
      if (new_index >= static_cast<int>(e.size())) e.resize(new_index + 1, 0);
      if (e[new_index] != 0)
        throw std::invalid_argument("rename target variable already used");
      e[new_index] = pow_old;
    }
    out.add_term(e, coeff);
  }
  return out;
}

bool try_exact_divide(const MultiPoly& dividend, const MultiPoly& divisor,
                      MultiPoly& quotient) {
  if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
  MultiPoly q;
  MultiPoly r = dividend;
  const auto [lb_mono, lb_coeff] = divisor.leading_term();
  while (!r.is_zero()) {
    const auto [lr_mono, lr_coeff] = r.leading_term();
    if (!mono_divides(lb_mono, lr_mono)) return false;
    Exponents qm = mono_div(lr_mono, lb_mono);
    Rational qc = lr_coeff / lb_coeff;
    MultiPoly qt;
    qt.add_term(qm, qc);
    q += qt;
    r -= qt * divisor;
  }
  quotient = q;
  return true;
}

MultiPoly exact_divide(const MultiPoly& dividend, const MultiPoly& divisor) {
  MultiPoly q;
  if (!try_exact_divide(dividend, divisor, q))
    throw std::domain_error("inexact polynomial division");
  return q;
}

namespace {

// View of p as a univariate polynomial in generator v: degree -> coefficient
// polynomial in the remaining generators.
std::map<int, MultiPoly> coefficients_in(const MultiPoly& p, int v) {
  std::map<int, MultiPoly> out;
  for (const auto& [mono, coeff] : p.terms()) {
    int d = v < static_cast<int>(mono.size()) ? mono[v] : 0;
    Exponents rest = mono;
    if (v < static_cast<int>(rest.size())) rest[v] = 0;
    trim_trailing_zeros(rest);
    out[d].add_term(rest, coeff);
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

MultiPoly from_coefficients_in(const std::map<int, MultiPoly>& cs, int v) {
  MultiPoly out;
  for (const auto& [d, c] : cs) {
    MultiPoly vp = d == 0 ? MultiPoly(Rational(1)) : MultiPoly::variable(v).pow(d);
    out += c * vp;
  }
  return out;
}

// Content with respect to generator v: gcd of the univariate coefficients.
MultiPoly content_in(const MultiPoly& p, int v) {
  MultiPoly g;
  for (const auto& [d, c] : coefficients_in(p, v)) g = poly_gcd(g, c);
  return g;
}

// Pseudo-remainder of a by b with respect to generator v (deg_v(b) >= 1).
MultiPoly pseudo_remainder(MultiPoly a, const MultiPoly& b, int v) {
  auto bc = coefficients_in(b, v);
  const int db = bc.rbegin()->first;
  const MultiPoly lb = bc.rbegin()->second;
  while (true) {
    auto ac = coefficients_in(a, v);
    if (ac.empty()) return a;
    int da = ac.rbegin()->first;
    if (da < db) return a;
    const MultiPoly la = ac.rbegin()->second;
    // a <- lb * a - la * v^(da-db) * b
    MultiPoly shift = MultiPoly::variable(v).pow(da - db);
    a = lb * a - la * shift * b;
  }
}

}  // namespace

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero()) return primitive_positive(b);
  if (b.is_zero()) return primitive_positive(a);
  if (a.is_constant() || b.is_constant()) return MultiPoly(Rational(1));

  int v = std::max(a.top_variable(), b.top_variable());
  int da = a.degree_in(v), db = b.degree_in(v);
  if (da == 0) return poly_gcd(a, content_in(b, v));
  if (db == 0) return poly_gcd(content_in(a, v), b);

  MultiPoly ca = content_in(a, v);
  MultiPoly cb = content_in(b, v);
  MultiPoly g = poly_gcd(ca, cb);
  MultiPoly pa = exact_divide(a, ca);
  MultiPoly pb = exact_divide(b, cb);
  if (da < db) std::swap(pa, pb);

  // Primitive polynomial remainder sequence.
  while (true) {
    MultiPoly r = pseudo_remainder(pa, pb, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) {
      pb = MultiPoly(Rational(1));
      break;
    }
    pa = pb;
    pb = exact_divide(r, content_in(r, v));
  }
  return g * primitive_positive(pb);
}

namespace {

struct Token {
  enum Kind { Plus, Minus, Star, Caret, Number, Var, End } kind;
  Rational number;
  int var = -1;
};

std::vector<Token> tokenize_poly(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto read_digits = [&]() {
    std::string s;
    while (i < text.size() && isdigit(static_cast<unsigned char>(text[i])))
      s.push_back(text[i++]);
    return s;
  };
  while (i < text.size()) {
    char c = text[i];
    if (isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '+') {
      out.push_back({Token::Plus});
      ++i;
    } else if (c == '-') {
      out.push_back({Token::Minus});
      ++i;
    } else if (c == '*') {
      out.push_back({Token::Star});
      ++i;
    } else if (c == '^') {
      out.push_back({Token::Caret});
      ++i;
    } else if (isdigit(static_cast<unsigned char>(c))) {
      std::string num = read_digits();
      std::string den;
      // A '/' directly followed by a digit continues a rational literal.
      if (i + 1 < text.size() && text[i] == '/' &&
          isdigit(static_cast<unsigned char>(text[i + 1]))) {
        ++i;
        den = read_digits();
      }
      Token t{Token::Number};
      t.number = den.empty() ? Rational(BigInt(num))
                             : Rational(BigInt(num), BigInt(den));
      out.push_back(t);
    } else if (c == 'l') {
      ++i;
      std::string idx = read_digits();
      if (idx.empty())
        throw std::invalid_argument("generator name needs an index: " + text);
      Token t{Token::Var};
      t.var = std::stoi(idx) - 1;
      if (t.var < 0) throw std::invalid_argument("generator index starts at 1");
      out.push_back(t);
    } else {
      throw std::invalid_argument(std::string("unexpected character '") + c +
                                  "' in polynomial: " + text);
    }
  }
  out.push_back({Token::End});
  return out;
}

}  // namespace

MultiPoly poly_from_string(const std::string& text) {
  std::vector<Token> toks = tokenize_poly(text);
  std::size_t pos = 0;
  MultiPoly result;
  bool first = true;
  while (toks[pos].kind != Token::End) {
    int sign = 1;
    if (toks[pos].kind == Token::Plus || toks[pos].kind == Token::Minus) {
      if (first && toks[pos].kind == Token::Plus)
        throw std::invalid_argument("polynomial must not start with '+'");
      sign = toks[pos].kind == Token::Minus ? -1 : 1;
      ++pos;
    } else if (!first) {
      throw std::invalid_argument("expected '+' or '-' between terms: " + text);
    }
    first = false;

    Rational coeff = sign;
    Exponents mono;
    bool saw_factor = false;
    bool expect_factor = true;
    while (expect_factor) {
      if (toks[pos].kind == Token::Number) {
        if (saw_factor)
          throw std::invalid_argument("misplaced numeric literal: " + text);
        coeff *= toks[pos].number;
        ++pos;
        saw_factor = true;
      } else if (toks[pos].kind == Token::Var) {
        int v = toks[pos].var;
        ++pos;
        int e = 1;
        if (toks[pos].kind == Token::Caret) {
          ++pos;
          if (toks[pos].kind != Token::Number ||
              denominator(toks[pos].number) != 1 || toks[pos].number < 0)
            throw std::invalid_argument("exponent must be a nonnegative int");
          e = static_cast<int>(numerator(toks[pos].number));
          ++pos;
        }
        if (v >= static_cast<int>(mono.size())) mono.resize(v + 1, 0);
        mono[v] += e;
        saw_factor = true;
      } else {
        throw std::invalid_argument("expected a factor: " + text);
      }
      if (toks[pos].kind == Token::Star) {
        ++pos;
      } else {
        expect_factor = false;
      }
    }
    result.add_term(mono, coeff);
  }
  if (first) throw std::invalid_argument("empty polynomial");
  return result;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Ascending grlex: constants first, highest monomials last.
  for (const auto& [mono, coeff] : terms_) {
    Rational c = coeff;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    bool printed_coeff = false;
    if (mono.empty() || c != 1) {
      os << rational_to_string(c);
      printed_coeff = true;
    }
    bool first_factor = !printed_coeff;
    for (std::size_t v = 0; v < mono.size(); ++v) {
      if (mono[v] == 0) continue;
      if (!first_factor) os << "*";
      first_factor = false;
      os << "l" << (v + 1);
      if (mono[v] > 1) os << "^" << mono[v];
    }
  }
  return os.str();
}

}  // namespace cyclebv
