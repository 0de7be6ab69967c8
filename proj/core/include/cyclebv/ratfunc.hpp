#pragma once
// Rational functions in the generators l1, l2, ... over exact rationals,
// kept in canonical form: numerator and denominator coprime, denominator
// with leading (grlex) coefficient 1.  Equality is structural equality of
// the canonical form.
//
// Textual grammar: "num" or "num / den" where num and den follow the
// polynomial grammar (see polynomial.hpp).  The fraction bar between
// numerator and denominator is a '/' surrounded by spaces; the unspaced '/'
// inside "3/2" is part of a rational coefficient.  A multi-term denominator
// is parenthesized, e.g. "1 / (l1 + l2)".

#include <cyclebv/polynomial.hpp>
#include <cyclebv/rational.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace cyclebv {

struct PoleError : std::runtime_error {
  explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

class RatFunc {
 public:
  RatFunc() : num_(), den_(Rational(1)) {}
  explicit RatFunc(const Rational& c) : num_(c), den_(Rational(1)) {}
  explicit RatFunc(long c) : num_(Rational(c)), den_(Rational(1)) {}
  explicit RatFunc(const MultiPoly& p) : num_(p), den_(Rational(1)) {}
  RatFunc(const MultiPoly& num, const MultiPoly& den);

  static RatFunc variable(int index) {
    return RatFunc(MultiPoly::variable(index));
  }

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  // Value when constant; throws otherwise.
  Rational constant_value() const;

  RatFunc operator-() const;
  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
  RatFunc operator*(const Rational& c) const;
  RatFunc pow(int e) const;
  RatFunc inverse() const;

  bool operator==(const RatFunc& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }
  bool operator<(const RatFunc& o) const {
    if (num_ != o.num_) return num_ < o.num_;
    return den_ < o.den_;
  }

  // Evaluates at the given generator values; throws PoleError if the
  // denominator vanishes there.
  Rational substitute(const std::vector<Rational>& values) const;

  std::string to_string() const;
  static RatFunc from_string(const std::string& text);

 private:
  void normalize();
  MultiPoly num_;
  MultiPoly den_;
};

RatFunc operator*(const Rational& c, const RatFunc& f);

}  // namespace cyclebv
