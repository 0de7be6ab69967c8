#pragma once
// Exact arbitrary-precision rational scalars.
//
// All arithmetic in this library is exact; no floating point is used
// anywhere.  Rationals are kept canonical (reduced, positive denominator)
// by the underlying representation.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace cyclebv {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "p", "-p", "p/q" (whitespace trimmed).  Throws std::invalid_argument
// on malformed input or zero denominator.
Rational rational_from_string(const std::string& text);

// Canonical form: "p" when the denominator is 1, otherwise "p/q" with q > 0.
std::string rational_to_string(const Rational& value);

BigInt factorial(unsigned n);
// Product of the odd numbers up to n; 1 for n <= 0.  (Counts the perfect
// matchings of n+1 points when n is odd.)
BigInt double_factorial_odd(long n);

inline Rational rational_from_string(const std::string& text, bool) = delete;

inline std::string rational_to_string(const Rational& value) {
  return value.str();
}

inline Rational rational_from_string(const std::string& text) {
  std::string trimmed;
  trimmed.reserve(text.size());
  for (char c : text) {
    if (!isspace(static_cast<unsigned char>(c))) trimmed.push_back(c);
  }
  if (trimmed.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t slash = trimmed.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(BigInt(trimmed));
    }
    BigInt num(trimmed.substr(0, slash));
    BigInt den(trimmed.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error& e) {
    throw std::invalid_argument("malformed rational literal: " + text);
  }
}

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return r;
}

inline BigInt double_factorial_odd(long n) {
  BigInt r = 1;
  for (long k = n; k >= 2; k -= 2) r *= k;
  return r;
}

}  // namespace cyclebv
