#pragma once
// Sparse multivariate polynomials over exact rationals.
//
// Generators are written l1, l2, l3, ... (index 0 in code is l1).  Terms are
// ordered graded-lexicographically: higher total degree first compares
// larger; at equal total degree the exponent of the highest-index generator
// decides (so l1 < l2 < l3 < ... as monomials).
//
// Exponent vectors are stored with trailing zeros trimmed, which makes the
// representation independent of the ambient number of variables.

#include <cyclebv/rational.hpp>

#include <map>
#include <string>
#include <vector>

namespace cyclebv {

using Exponents = std::vector<int>;

struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(const Rational& c);
  explicit MultiPoly(long c);

  static MultiPoly constant(const Rational& c);
  static MultiPoly variable(int index);  // the generator l_{index+1}

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Constant term (the coefficient of the empty monomial).
  Rational constant_value() const;
  // Total degree; -1 for the zero polynomial.
  int total_degree() const;
  // Largest generator index used, or -1 if none (constant/zero).
  int top_variable() const;
  int degree_in(int var) const;

  const std::map<Exponents, Rational, GrlexLess>& terms() const {
    return terms_;
  }

  // Coefficient access (zero if absent).
  Rational coefficient(const Exponents& mono) const;
  void set_coefficient(const Exponents& mono, const Rational& value);
  void add_term(const Exponents& mono, const Rational& value);

  MultiPoly operator-() const;
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly operator*(const Rational& c) const;
  MultiPoly pow(unsigned e) const;

  bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }
  bool operator<(const MultiPoly& o) const { return terms_ < o.terms_; }

  // Leading (grlex-largest) term.
  std::pair<Exponents, Rational> leading_term() const;

  // Evaluation; values[i] substitutes generator i.  Missing trailing values
  // are rejected.
  Rational substitute(const std::vector<Rational>& values) const;

  // Renames generator old_index to new_index (which must be unused).
  MultiPoly rename_variable(int old_index, int new_index) const;

  std::string to_string() const;

 private:
  // Invariant: no zero coefficients; exponent keys have no trailing zeros.
  std::map<Exponents, Rational, GrlexLess> terms_;
};

MultiPoly operator*(const Rational& c, const MultiPoly& p);

// Exact division: sets quotient and returns true iff divisor divides dividend
// exactly (zero remainder).  divisor must be nonzero.
bool try_exact_divide(const MultiPoly& dividend, const MultiPoly& divisor,
                      MultiPoly& quotient);
// Exact division that throws std::domain_error when not divisible.
MultiPoly exact_divide(const MultiPoly& dividend, const MultiPoly& divisor);

// Greatest common divisor, primitive over the integers with positive leading
// coefficient; gcd(0,0) = 0, and any nonzero constant input gives 1 (units).
MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);

// Parses the textual polynomial grammar used across the library:
//   poly   := [-] term ( (+|-) term )*
//   term   := rational | [rational *] factor (* factor)*
//   factor := l<digits> [^ <digits>]
//   rational := int | int/int          (no spaces inside the literal)
// Whitespace between tokens is ignored.  Throws std::invalid_argument.
MultiPoly poly_from_string(const std::string& text);

}  // namespace cyclebv
