#pragma once
// Truncated formal series in a symbol h (allowing negative powers) and a set
// of even, commuting coupling symbols, with rational-function coefficients
// in the generators l1, l2, ...
//
// Every series carries a window: h-exponents outside [h_min, h_max] and
// terms whose total coupling degree exceeds the coupling cutoff (when set)
// are dropped, and the series remembers that a truncation happened.
// Arithmetic intersects windows, so exactness claims are always made only
// inside the window every operand supports.

#include <cyclebv/ratfunc.hpp>

#include <map>
#include <string>

namespace cyclebv {

struct SeriesKey {
  int hbar = 0;
  std::map<std::string, int> couplings;  // symbol -> exponent > 0

  int coupling_degree() const {
    int d = 0;
    for (const auto& [s, e] : couplings) d += e;
    return d;
  }
  bool operator==(const SeriesKey& o) const {
    return hbar == o.hbar && couplings == o.couplings;
  }
  bool operator<(const SeriesKey& o) const {
    if (hbar != o.hbar) return hbar < o.hbar;
    return couplings < o.couplings;
  }
  std::string to_string() const;
};

class CouplingSeries {
 public:
  static constexpr int kWideWindow = 1 << 20;

  CouplingSeries()
      : h_min_(-kWideWindow), h_max_(kWideWindow), coupling_cutoff_(-1) {}
  CouplingSeries(int h_min, int h_max, int coupling_cutoff = -1)
      : h_min_(h_min), h_max_(h_max), coupling_cutoff_(coupling_cutoff) {}

  static CouplingSeries constant(const RatFunc& c);
  static CouplingSeries constant(const Rational& c);
  // c * h^e * prod of couplings.
  static CouplingSeries monomial(const RatFunc& c, int hbar_exp,
                                 const std::map<std::string, int>& couplings);

  int h_min() const { return h_min_; }
  int h_max() const { return h_max_; }
  int coupling_cutoff() const { return coupling_cutoff_; }
  bool truncated() const { return truncated_; }
  bool is_zero() const { return terms_.empty(); }

  const std::map<SeriesKey, RatFunc>& terms() const { return terms_; }
  RatFunc coefficient(const SeriesKey& key) const;

  // Restricts to a narrower window (terms outside are dropped silently:
  // narrowing is a view, not a truncation event).
  CouplingSeries restricted(int h_min, int h_max, int coupling_cutoff) const;

  void add_term(const SeriesKey& key, const RatFunc& value);

  CouplingSeries operator-() const;
  CouplingSeries operator+(const CouplingSeries& o) const;
  CouplingSeries operator-(const CouplingSeries& o) const;
  CouplingSeries operator*(const CouplingSeries& o) const;
  CouplingSeries& operator+=(const CouplingSeries& o) {
    return *this = *this + o;
  }
  CouplingSeries& operator-=(const CouplingSeries& o) {
    return *this = *this - o;
  }
  CouplingSeries& operator*=(const CouplingSeries& o) {
    return *this = *this * o;
  }
  CouplingSeries operator*(const RatFunc& c) const;
  CouplingSeries operator*(const Rational& c) const;
  // Multiplies by h^k (shifts every h-exponent).
  CouplingSeries shifted_by_h(int k) const;
  CouplingSeries pow(unsigned e) const;

  // Structural equality of the stored terms (windows are not compared).
  bool operator==(const CouplingSeries& o) const { return terms_ == o.terms_; }
  bool operator!=(const CouplingSeries& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void admit(const SeriesKey& key, const RatFunc& value);
  int h_min_, h_max_, coupling_cutoff_;
  bool truncated_ = false;
  std::map<SeriesKey, RatFunc> terms_;
};

CouplingSeries operator*(const RatFunc& c, const CouplingSeries& s);
CouplingSeries operator*(const Rational& c, const CouplingSeries& s);

// log(1 + a) expanded to the coupling cutoff of `a`, which must be set; every
// term of `a` must have coupling degree >= 1.
CouplingSeries series_log_one_plus(const CouplingSeries& a);

}  // namespace cyclebv
