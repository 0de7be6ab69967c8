#pragma once
// Cyclic words in the letters of a graded basis, products of such words
// ("cycle monomials"), and linear combinations with coefficients in an
// arbitrary commutative coefficient ring K (exact rationals, rational
// functions, truncated coupling series).
//
// Two flavors of cyclic symmetry are in play, tied to the parity of the
// pairing on the letter space:
//  - Odd pairing: a letter contributes its plain parity, and a cycle's
//    parity is the sum of its letter parities.
//  - Even pairing: letters contribute the reversed parity (p+1 mod 2), and
//    each cycle additionally carries one odd "marker" symbol, so a cycle's
//    parity is 1 + sum of reversed letter parities.
// All reordering signs are produced by the sign engine (signs.hpp).
//
// Canonical form: each cycle is rotated to its lexicographically least
// letter sequence; the cycles of a monomial are sorted.  A word whose
// nontrivial self-rotation carries sign -1 is zero; a monomial containing
// two equal cycles of odd parity is zero.

#include <cyclebv/ratfunc.hpp>
#include <cyclebv/series.hpp>
#include <cyclebv/signs.hpp>
#include <cyclebv/superspace.hpp>

#include <map>
#include <string>
#include <vector>

namespace cyclebv {

inline int letter_parity(const SuperBasis& basis, FormParity flavor,
                         int letter) {
  int p = basis.parity(letter);
  return flavor == FormParity::Even ? (p + 1) % 2 : p;
}

inline bool cycles_carry_marker(FormParity flavor) {
  return flavor == FormParity::Even;
}

struct CyclicWord {
  std::vector<int> letters;  // canonical iff produced by normalize_cyclic

  int length() const { return static_cast<int>(letters.size()); }
  bool operator==(const CyclicWord& o) const { return letters == o.letters; }
  bool operator<(const CyclicWord& o) const {
    if (letters.size() != o.letters.size())
      return letters.size() < o.letters.size();
    return letters < o.letters;
  }
};

int word_parity(const CyclicWord& w, const SuperBasis& basis,
                FormParity flavor);

struct NormalizedWord {
  CyclicWord word;
  int sign = 1;
  bool zero = false;
};

// Canonical rotation with its Koszul sign; zero when some rotation fixes the
// letter sequence with sign -1.
NormalizedWord normalize_cyclic(const std::vector<int>& letters,
                                const SuperBasis& basis, FormParity flavor);

struct CycleMonomial {
  std::vector<CyclicWord> cycles;  // canonical iff sorted, each canonical

  bool is_unit() const { return cycles.empty(); }
  bool operator==(const CycleMonomial& o) const { return cycles == o.cycles; }
  bool operator<(const CycleMonomial& o) const { return cycles < o.cycles; }
};

int monomial_parity(const CycleMonomial& m, const SuperBasis& basis,
                    FormParity flavor);

struct NormalizedMonomial {
  CycleMonomial mono;
  int sign = 1;
  bool zero = false;
};

// Sorts the (already canonical) cycles, with Koszul block signs; detects the
// square of an odd cycle.
NormalizedMonomial normalize_monomial(const std::vector<CyclicWord>& cycles,
                                      const SuperBasis& basis,
                                      FormParity flavor);

std::string monomial_to_string(const CycleMonomial& m, const SuperBasis& basis);

inline bool coeff_zero(const Rational& c) { return c == 0; }
inline bool coeff_zero(const RatFunc& c) { return c.is_zero(); }
inline bool coeff_zero(const CouplingSeries& c) { return c.is_zero(); }

inline std::string coeff_to_string(const Rational& c) {
  return rational_to_string(c);
}
inline std::string coeff_to_string(const RatFunc& c) { return c.to_string(); }
inline std::string coeff_to_string(const CouplingSeries& c) {
  return c.to_string();
}

// A K-linear combination of cycle monomials of one flavor.
template <class K>
class BVElementT {
 public:
  explicit BVElementT(FormParity flavor = FormParity::Even)
      : flavor_(flavor) {}

  FormParity flavor() const { return flavor_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<CycleMonomial, K>& terms() const { return terms_; }

  // mono must be canonical.
  void add_term(const CycleMonomial& mono, const K& coeff) {
    if (coeff_zero(coeff)) return;
    auto [it, inserted] = terms_.emplace(mono, coeff);
    if (!inserted) {
      it->second = it->second + coeff;
      if (coeff_zero(it->second)) terms_.erase(it);
    }
  }

  // Adds coeff * (the normalization of the given cycles).
  void add_cycles(const std::vector<CyclicWord>& cycles, const K& coeff,
                  const SuperBasis& basis) {
    NormalizedMonomial nm = normalize_monomial(cycles, basis, flavor_);
    if (nm.zero) return;
    add_term(nm.mono, nm.sign < 0 ? K(-coeff) : coeff);
  }

  BVElementT operator+(const BVElementT& o) const {
    require_same_flavor(o);
    BVElementT r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
  }
  BVElementT operator-(const BVElementT& o) const {
    require_same_flavor(o);
    BVElementT r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, K(-c));
    return r;
  }
  BVElementT operator-() const {
    BVElementT r(flavor_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, K(-c));
    return r;
  }
  template <class S>
  BVElementT scaled(const S& s) const {
    BVElementT r(flavor_);
    for (const auto& [m, c] : terms_) r.add_term(m, K(c * s));
    return r;
  }

  // Graded commutative product; cycles are concatenated and renormalized.
  BVElementT multiply(const BVElementT& o, const SuperBasis& basis) const {
    require_same_flavor(o);
    BVElementT r(flavor_);
    for (const auto& [ma, ca] : terms_) {
      for (const auto& [mb, cb] : o.terms_) {
        std::vector<CyclicWord> cycles = ma.cycles;
        cycles.insert(cycles.end(), mb.cycles.begin(), mb.cycles.end());
        r.add_cycles(cycles, K(ca * cb), basis);
      }
    }
    return r;
  }

  bool operator==(const BVElementT& o) const {
    return flavor_ == o.flavor_ && terms_ == o.terms_;
  }
  bool operator!=(const BVElementT& o) const { return !(*this == o); }

  std::string to_string(const SuperBasis& basis) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) out += "  +  ";
      first = false;
      out += "[" + coeff_to_string(c) + "] " + monomial_to_string(m, basis);
    }
    return out;
  }

 private:
  void require_same_flavor(const BVElementT& o) const {
    if (flavor_ != o.flavor_)
      throw std::invalid_argument("mixing elements of different flavors");
  }
  FormParity flavor_;
  std::map<CycleMonomial, K> terms_;
};

// The working element type carries truncated coupling-series coefficients;
// plain rational coefficients are used by the randomized identity tests.
using BVElement = BVElementT<CouplingSeries>;
using BVElementQ = BVElementT<Rational>;

}  // namespace cyclebv
