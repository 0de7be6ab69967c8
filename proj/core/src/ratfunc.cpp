#include <cyclebv/ratfunc.hpp>

#include <sstream>

namespace cyclebv {

RatFunc::RatFunc(const MultiPoly& num, const MultiPoly& den)
    : num_(num), den_(den) {
  if (den_.is_zero()) throw std::domain_error("zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = MultiPoly(Rational(1));
    return;
  }
  MultiPoly g = poly_gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = exact_divide(num_, g);
    den_ = exact_divide(den_, g);
  }
  Rational lc = den_.leading_term().second;
  if (lc != 1) {
    Rational inv = Rational(1) / lc;
    num_ = num_ * inv;
    den_ = den_ * inv;
  }
}

Rational RatFunc::constant_value() const {
  if (!is_constant()) throw std::domain_error("not a constant");
  // den is canonical: constant denominator means den == 1.
  return num_.constant_value();
}

RatFunc RatFunc::operator-() const {
  RatFunc r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
  return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
  return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) throw std::domain_error("division by zero");
  return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::operator*(const Rational& c) const {
  if (c == 0) return RatFunc();
  RatFunc r;
  r.num_ = num_ * c;
  r.den_ = den_;
  return r;
}

RatFunc operator*(const Rational& c, const RatFunc& f) { return f * c; }

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc r(Rational(1));
  RatFunc base = *this;
  unsigned u = static_cast<unsigned>(e);
  while (u > 0) {
    if (u & 1u) r *= base;
    base *= base;
    u >>= 1u;
  }
  return r;
}

Rational RatFunc::substitute(const std::vector<Rational>& values) const {
  Rational d = den_.substitute(values);
  if (d == 0) throw PoleError("denominator vanishes at the given values");
  return num_.substitute(values) / d;
}

std::string RatFunc::to_string() const {
  std::string ns = num_.to_string();
  if (den_ == MultiPoly(Rational(1))) return ns;
  std::string ds = den_.to_string();
  bool multi = den_.terms().size() > 1;
  std::ostringstream os;
  os << ns << " / ";
  if (multi)
    os << "(" << ds << ")";
  else
    os << ds;
  return os.str();
}

RatFunc RatFunc::from_string(const std::string& text) {
  // Find the fraction bar: a '/' at parenthesis depth 0 surrounded by
  // spaces.  Unspaced '/' belongs to rational coefficients.
  int depth = 0;
  std::size_t bar = std::string::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '/' && depth == 0 && i > 0 && i + 1 < text.size() &&
        text[i - 1] == ' ' && text[i + 1] == ' ') {
      if (bar != std::string::npos)
        throw std::invalid_argument("more than one fraction bar: " + text);
      bar = i;
    }
  }
  if (depth != 0) throw std::invalid_argument("unbalanced parentheses: " + text);

  auto strip = [](std::string s) {
    std::size_t a = s.find_first_not_of(" \t");
    std::size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos) return std::string();
    s = s.substr(a, b - a + 1);
    // Strip one pair of enclosing parentheses if they match.
    while (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
      int d = 0;
      bool wraps = true;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++d;
        if (s[i] == ')') --d;
        if (d == 0 && i + 1 < s.size()) {
          wraps = false;
          break;
        }
      }
      if (!wraps) break;
      s = s.substr(1, s.size() - 2);
    }
    return s;
  };

  if (bar == std::string::npos) return RatFunc(poly_from_string(strip(text)));
  MultiPoly num = poly_from_string(strip(text.substr(0, bar)));
  MultiPoly den = poly_from_string(strip(text.substr(bar + 1)));
  return RatFunc(num, den);
}

}  // namespace cyclebv
