#include <doctest.h>

#include <cyclebv/series.hpp>

using namespace cyclebv;

namespace {
CouplingSeries term(int h, const std::map<std::string, int>& c,
                    const Rational& v) {
  return CouplingSeries::monomial(RatFunc(v), h, c);
}
}  // namespace

TEST_SUITE("series") {

TEST_CASE("product truncates at the window") {
  // (1 + h t)(1 - h t) with |h-exponent| <= 2 gives 1 - h^2 t^2.
  CouplingSeries window(-2, 2, -1);
  CouplingSeries a = window + CouplingSeries::constant(Rational(1)) +
                     term(1, {{"t", 1}}, Rational(1));
  CouplingSeries b = window + CouplingSeries::constant(Rational(1)) +
                     term(1, {{"t", 1}}, Rational(-1));
  CouplingSeries expect = CouplingSeries::constant(Rational(1)) +
                          term(2, {{"t", 2}}, Rational(-1));
  CHECK(a * b == expect);
  CHECK_FALSE((a * b).truncated());
}

TEST_CASE("addition") {
  CouplingSeries s = term(-1, {{"s", 1}}, Rational(1));
  CHECK(s + s == term(-1, {{"s", 1}}, Rational(2)));
}

TEST_CASE("window drop is recorded") {
  CouplingSeries window(-1, 1, -1);
  CouplingSeries s = window + term(-1, {{"s", 1}}, Rational(1));
  CouplingSeries p = s * s;  // h^-2 falls outside the window
  CHECK(p.is_zero());
  CHECK(p.truncated());
}

TEST_CASE("log of 1 + t") {
  CouplingSeries a(-4, 4, 3);
  a += term(0, {{"t", 1}}, Rational(1));
  CouplingSeries lg = series_log_one_plus(a);
  CouplingSeries expect = term(0, {{"t", 1}}, Rational(1)) +
                          term(0, {{"t", 2}}, Rational(-1, 2)) +
                          term(0, {{"t", 3}}, Rational(1, 3));
  CHECK(lg == expect);
}

TEST_CASE("log inverts exp-like powers") {
  // a = t + t^2; log(1+a) truncated at degree 3.
  CouplingSeries a(-4, 4, 3);
  a += term(0, {{"t", 1}}, Rational(1));
  a += term(0, {{"t", 2}}, Rational(1));
  CouplingSeries lg = series_log_one_plus(a);
  // log(1 + t + t^2) = t + t^2/2 - t^3*... compute: a - a^2/2 + a^3/3
  //  t^1: 1;  t^2: 1 - 1/2 = 1/2;  t^3: -(2*1*1)/2 + 1/3 = -1 + 1/3 = -2/3.
  CouplingSeries expect = term(0, {{"t", 1}}, Rational(1)) +
                          term(0, {{"t", 2}}, Rational(1, 2)) +
                          term(0, {{"t", 3}}, Rational(-2, 3));
  CHECK(lg == expect);
}

TEST_CASE("distributivity (randomized light)") {
  CouplingSeries a = term(1, {{"t", 1}}, Rational(3, 2)) +
                     term(0, {{"u", 1}}, Rational(-2));
  CouplingSeries b = term(-1, {{"t", 1}}, Rational(5)) +
                     CouplingSeries::constant(Rational(7));
  CouplingSeries c = term(2, {{"u", 2}}, Rational(1, 3));
  CHECK((a + b) * c == a * c + b * c);
  CHECK(a * b == b * a);
  CHECK((a * b) * c == a * (b * c));
}

}  // TEST_SUITE
